import numpy as np
import pytest

from leaguestats.corpus import (
    DESCRIPTORS,
    Descriptor,
    canonical_team,
    descriptor_column,
    load_corpus,
    load_default_corpus,
    load_embedded_corpus,
    parse_season_csv,
    serialize_season_csv,
)
from leaguestats.errors import InvariantViolation, MalformedRow, MissingDescriptor, WrongRowCount

HEADER = "team,position,points,ratio,player_spend,foreign_spend,profit,expenditure\n"


def _rows(n=20):
    return "".join(f"Team{i},{i},{100 - i},1.0,10,5,1.5,20\n" for i in range(1, n + 1))


def test_parse_chelsea_row(season_text):
    table = parse_season_csv(season_text("2009/10"), "2009/10")
    chelsea = table["Chelsea"]
    assert chelsea.profit == -70.437
    assert (chelsea.position, chelsea.points, chelsea.ratio) == (1, 86, 2.4444)
    assert (chelsea.player_spend, chelsea.foreign_spend, chelsea.expenditure) == (21.8, 21.8, 257.727)


def test_wrong_row_count():
    with pytest.raises(WrongRowCount):
        parse_season_csv(HEADER + _rows(19), "2020/21")


def test_foreign_spend_above_player_spend():
    text = HEADER + _rows().replace("Team3,3,97,1.0,10,5", "Team3,3,97,1.0,22.0,23.0")
    with pytest.raises(InvariantViolation):
        parse_season_csv(text, "2020/21")


@pytest.mark.parametrize(
    "mutate, exc",
    [
        (lambda t: t.replace("Team4,4", "Team5,4"), InvariantViolation),
        (lambda t: t.replace("Team4,4,", "Team4,21,"), InvariantViolation),
        (lambda t: t.replace("Team4,4,96", "Team4,4,99"), InvariantViolation),
        (lambda t: t.replace("Team4,4,96,1.0", "Team4,4,96,abc"), MalformedRow),
        (lambda t: t.replace("Team4,4,96,1.0,10", "Team4,4,96,1.0"), MalformedRow),
        (lambda t: t.replace("Team4,4,96,1.0,10,5,1.5,20", "Team4,4,96,1.0,10,5,,20"), MalformedRow),
    ],
)
def test_invalid_rows(mutate, exc):
    with pytest.raises(exc):
        parse_season_csv(mutate(HEADER + _rows()), "2020/21")


def test_rows_are_sorted_by_position():
    lines = _rows().splitlines(keepends=True)
    table = parse_season_csv(HEADER + "".join(reversed(lines)), "2020/21")
    assert [r.position for r in table] == list(range(1, 21))


def test_partial_season_needs_flag():
    text = HEADER + _rows().replace(",1.5,20\n", ",,\n")
    with pytest.raises(MalformedRow):
        parse_season_csv(text, "2017/18")
    table = parse_season_csv(text, "2017/18", allow_partial=True)
    assert table.partial
    assert descriptor_column(table, Descriptor.RATIO).shape == (20,)
    with pytest.raises(MissingDescriptor):
        descriptor_column(table, Descriptor.PROFIT)


def test_embedded_examples(corpus):
    assert corpus.labels == [f"{y}/{(y + 1) % 100:02d}" for y in range(2009, 2017)]
    assert corpus["2009/10"]["Portsmouth"].points == 19
    assert corpus["2016/17"]["Chelsea"].points == 93
    assert corpus["2015/16"]["Leicester"].expenditure == 19.848


def test_embedded_is_idempotent():
    assert load_embedded_corpus() is load_embedded_corpus()
    assert load_embedded_corpus() == load_corpus(_data_dir())


def _data_dir():
    from leaguestats.corpus import data_path

    return data_path()


def test_aliases_resolve(corpus):
    t = corpus["2009/10"]
    assert t["Man U"] is t["Manchester United"]
    assert t["Wolvs"].team == "Wolverhampton"
    assert canonical_team("Fullham") == "Fulham"


def test_descriptor_column_examples(season0910):
    pts = descriptor_column(season0910, Descriptor.POINTS)
    assert pts[:3].tolist() == [86, 85, 75] and pts[-1] == 19
    assert descriptor_column(season0910, Descriptor.PROFIT)[0] == -70.437


def test_descriptor_parse():
    assert Descriptor.parse("PlayerSpend") is Descriptor.PLAYER_SPEND
    assert Descriptor.parse("foreign-spend") is Descriptor.FOREIGN_SPEND
    assert Descriptor.parse("Exp") is Descriptor.EXPENDITURE
    with pytest.raises(ValueError):
        Descriptor.parse("goals")


def test_round_trip_all_seasons(corpus, season_text):
    for t in corpus:
        assert serialize_season_csv(parse_season_csv(season_text(t.season), t.season)) == season_text(t.season)


def test_corpus_invariants(corpus):
    for t in corpus:
        assert len(t) == 20
        for d in DESCRIPTORS + (Descriptor.POINTS,):
            assert len(descriptor_column(t, d)) == 20
        assert all(r.foreign_spend <= r.player_spend for r in t)
        assert np.all(np.diff(descriptor_column(t, Descriptor.POINTS)) <= 0)


def test_env_override(tmp_path, monkeypatch, season_text):
    (tmp_path / "epl_2009_10.csv").write_text(season_text("2009/10"))
    monkeypatch.setenv("LEAGUESTATS_DATA", str(tmp_path))
    assert load_default_corpus().labels == ["2009/10"]
