"""Season tables: data model, CSV ingestion and the embedded 2009/10-2016/17 corpus.

Monetary columns are millions of pounds exactly as transcribed; nothing is
rescaled on load.
"""

from __future__ import annotations

import csv
import enum
import functools
import io
import math
import os
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import InvariantViolation, MalformedRow, MissingDescriptor, WrongRowCount

TEAMS_PER_SEASON = 20
FOREIGN_SPEND_TOL = 1e-9

BASE_COLUMNS = (
    "team",
    "position",
    "points",
    "ratio",
    "player_spend",
    "foreign_spend",
    "profit",
    "expenditure",
)

# Short names used in some printed tables, mapped to the long form.
TEAM_ALIASES = {
    "Man U": "Manchester United",
    "Man Utd": "Manchester United",
    "Man C": "Manchester City",
    "Man City": "Manchester City",
    "Aston V": "Aston Villa",
    "Wolvs": "Wolverhampton",
    "Wolves": "Wolverhampton",
    "Fullham": "Fulham",
    "West Brom": "West Bromwich",
    "Leicester City": "Leicester",
}

_SEASON_RE = re.compile(r"^(\d{4})/(\d{2})$")


class Descriptor(enum.Enum):
    """A column of the season table usable for ranking or analysis."""

    POINTS = "points"
    RATIO = "ratio"
    PLAYER_SPEND = "player_spend"
    FOREIGN_SPEND = "foreign_spend"
    PROFIT = "profit"
    EXPENDITURE = "expenditure"

    @property
    def label(self) -> str:
        return _LABELS[self]

    @classmethod
    def parse(cls, text: str) -> "Descriptor":
        """Accept ``player_spend``, ``PlayerSpend``, ``player-spend`` or a short label."""
        key = re.sub(r"[\s_\-]", "", text).lower()
        for d in cls:
            if key in (d.value.replace("_", ""), _LABELS[d].replace(" ", "").lower()):
                return d
        if key in _SHORT:
            return _SHORT[key]
        raise ValueError(f"unknown descriptor {text!r}")


_LABELS = {
    Descriptor.POINTS: "Pts",
    Descriptor.RATIO: "Ratio",
    Descriptor.PLAYER_SPEND: "Player Spend",
    Descriptor.FOREIGN_SPEND: "Foreign Spend",
    Descriptor.PROFIT: "Profits",
    Descriptor.EXPENDITURE: "Exp",
}
_SHORT = {
    "pts": Descriptor.POINTS,
    "exp": Descriptor.EXPENDITURE,
    "expense": Descriptor.EXPENDITURE,
    "profits": Descriptor.PROFIT,
    "totalspend": Descriptor.PLAYER_SPEND,
}

# The five re-ranking criteria, in the column order used by the overlap and
# correlation tables.
DESCRIPTORS = (
    Descriptor.RATIO,
    Descriptor.PLAYER_SPEND,
    Descriptor.FOREIGN_SPEND,
    Descriptor.PROFIT,
    Descriptor.EXPENDITURE,
)

# Variables entering the per-season PCA, in printed row order.
PCA_VARIABLES = (Descriptor.POINTS,) + DESCRIPTORS


def canonical_team(name: str) -> str:
    name = " ".join(name.split())
    return TEAM_ALIASES.get(name, name)


def season_filename(season: str) -> str:
    return f"epl_{season.replace('/', '_')}.csv"


def validate_season_label(season: str) -> str:
    m = _SEASON_RE.match(season)
    if not m or (int(m.group(1)) + 1) % 100 != int(m.group(2)):
        raise ValueError(f"season label must look like 2009/10, got {season!r}")
    return season


def format_number(x: float) -> str:
    """Shortest round-trip decimal; integral values print without a fraction."""
    if x is None:
        return ""
    if float(x).is_integer():
        return str(int(x))
    return repr(float(x))


@dataclass(frozen=True)
class TeamSeasonRecord:
    team: str
    position: int
    points: int
    ratio: float
    player_spend: float
    foreign_spend: float
    profit: Optional[float]
    expenditure: Optional[float]

    def value(self, d: Descriptor) -> float:
        v = getattr(self, d.value)
        if v is None:
            raise MissingDescriptor(f"{self.team}: {d.value} not available")
        return float(v)


@dataclass(frozen=True)
class SeasonTable:
    season: str
    records: tuple[TeamSeasonRecord, ...]
    partial: bool = False

    def __post_init__(self) -> None:
        _check_table(self.season, self.records, self.partial)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[TeamSeasonRecord]:
        return iter(self.records)

    def __getitem__(self, team: str) -> TeamSeasonRecord:
        key = canonical_team(team)
        for r in self.records:
            if r.team == key:
                return r
        raise KeyError(team)

    @property
    def teams(self) -> list[str]:
        return [r.team for r in self.records]

    def column(self, d: Descriptor) -> np.ndarray:
        return descriptor_column(self, d)

    def replace_value(self, team: str, d: Descriptor, value: float) -> "SeasonTable":
        """Copy of the table with one cell changed (used for sensitivity checks)."""
        from dataclasses import replace

        key = canonical_team(team)
        recs = tuple(
            replace(r, **{d.value: value}) if r.team == key else r for r in self.records
        )
        return SeasonTable(self.season, recs, self.partial)


@dataclass(frozen=True)
class Corpus:
    seasons: tuple[SeasonTable, ...]

    def __getitem__(self, season: str) -> SeasonTable:
        for t in self.seasons:
            if t.season == season:
                return t
        raise KeyError(season)

    def __contains__(self, season: object) -> bool:
        return any(t.season == season for t in self.seasons)

    def __iter__(self) -> Iterator[SeasonTable]:
        return iter(self.seasons)

    def __len__(self) -> int:
        return len(self.seasons)

    @property
    def labels(self) -> list[str]:
        return [t.season for t in self.seasons]

    def complete(self) -> "Corpus":
        return Corpus(tuple(t for t in self.seasons if not t.partial))


def _check_table(season: str, records: Sequence[TeamSeasonRecord], partial: bool) -> None:
    if len(records) != TEAMS_PER_SEASON:
        raise WrongRowCount(f"{season}: expected {TEAMS_PER_SEASON} rows, got {len(records)}")
    teams = [r.team for r in records]
    if len(set(teams)) != len(teams):
        dup = sorted({t for t in teams if teams.count(t) > 1})
        raise InvariantViolation(f"{season}: duplicate team(s) {dup}")
    positions = [r.position for r in records]
    if positions != list(range(1, TEAMS_PER_SEASON + 1)):
        raise InvariantViolation(f"{season}: positions are not a permutation of 1..20")
    for r in records:
        if r.foreign_spend > r.player_spend + FOREIGN_SPEND_TOL:
            raise InvariantViolation(
                f"{season}: {r.team} foreign_spend {r.foreign_spend} exceeds player_spend {r.player_spend}"
            )
        for name in ("points", "ratio", "player_spend", "foreign_spend", "expenditure"):
            v = getattr(r, name)
            if v is not None and v < 0:
                raise InvariantViolation(f"{season}: {r.team} has negative {name}")
        if not partial and (r.profit is None or r.expenditure is None):
            raise InvariantViolation(f"{season}: {r.team} is missing profit/expenditure")
    for a, b in zip(records, records[1:]):
        if b.points > a.points:
            raise InvariantViolation(
                f"{season}: points increase from position {a.position} to {b.position}"
            )


def _parse_float(text: str, field: str, lineno: int, optional: bool = False) -> Optional[float]:
    text = text.strip()
    if text == "" and optional:
        return None
    try:
        v = float(text)
    except ValueError:
        raise MalformedRow(f"line {lineno}: {field} is not numeric: {text!r}") from None
    if not math.isfinite(v):
        raise MalformedRow(f"line {lineno}: {field} is not finite: {text!r}")
    return v


def _parse_int(text: str, field: str, lineno: int) -> int:
    v = _parse_float(text, field, lineno)
    if not v.is_integer():
        raise MalformedRow(f"line {lineno}: {field} must be an integer: {text!r}")
    return int(v)


def parse_season_csv(text: str, season_label: str, allow_partial: bool = False) -> SeasonTable:
    """Parse one season file into a validated :class:`SeasonTable`.

    The header must contain the eight base columns. Extra ``rank_*`` columns
    (as written by ``leaguestats rerank --format csv``) are accepted and
    checked to be integers, then dropped. With ``allow_partial`` the profit and
    expenditure cells may be empty, and the table is flagged partial.
    """
    validate_season_label(season_label)
    reader = csv.reader(io.StringIO(text))
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise WrongRowCount(f"{season_label}: empty file") from None
    missing = [c for c in BASE_COLUMNS if c not in header]
    extra = [c for c in header if c not in BASE_COLUMNS and not c.startswith("rank_")]
    if missing or extra:
        raise MalformedRow(f"bad header: missing {missing}, unexpected {extra}")
    idx = {c: header.index(c) for c in header}

    records = []
    partial = False
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(header):
            raise MalformedRow(f"line {lineno}: expected {len(header)} fields, got {len(row)}")
        get = lambda c: row[idx[c]]  # noqa: E731
        for c in header:
            if c.startswith("rank_"):
                _parse_int(get(c), c, lineno)
        profit = _parse_float(get("profit"), "profit", lineno, optional=allow_partial)
        expenditure = _parse_float(get("expenditure"), "expenditure", lineno, optional=allow_partial)
        partial = partial or profit is None or expenditure is None
        records.append(
            TeamSeasonRecord(
                team=canonical_team(get("team")),
                position=_parse_int(get("position"), "position", lineno),
                points=_parse_int(get("points"), "points", lineno),
                ratio=_parse_float(get("ratio"), "ratio", lineno),
                player_spend=_parse_float(get("player_spend"), "player_spend", lineno),
                foreign_spend=_parse_float(get("foreign_spend"), "foreign_spend", lineno),
                profit=profit,
                expenditure=expenditure,
            )
        )
    if len(records) != TEAMS_PER_SEASON:
        raise WrongRowCount(f"{season_label}: expected {TEAMS_PER_SEASON} rows, got {len(records)}")
    records.sort(key=lambda r: r.position)
    return SeasonTable(season_label, tuple(records), partial=partial)


def serialize_season_csv(table: SeasonTable) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(BASE_COLUMNS)
    for r in table.records:
        w.writerow(
            [r.team, r.position, r.points]
            + [format_number(getattr(r, c)) for c in BASE_COLUMNS[3:]]
        )
    return out.getvalue()


def descriptor_column(table: SeasonTable, d: Descriptor) -> np.ndarray:
    """Values of ``d`` for the 20 teams in ascending official position."""
    return np.array([r.value(d) for r in table.records], dtype=float)


def season_from_filename(name: str) -> str:
    m = re.match(r"^epl_(\d{4})_(\d{2})\.csv$", name)
    if not m:
        raise ValueError(f"not a season file name: {name}")
    return validate_season_label(f"{m.group(1)}/{m.group(2)}")


def load_corpus(directory: str | os.PathLike, allow_partial: bool = False) -> Corpus:
    """Load every ``epl_YYYY_YY.csv`` in ``directory``, chronologically."""
    files = sorted(p for p in Path(directory).iterdir() if re.match(r"^epl_\d{4}_\d{2}\.csv$", p.name))
    seasons = [
        parse_season_csv(p.read_text(encoding="utf-8"), season_from_filename(p.name), allow_partial)
        for p in files
    ]
    return Corpus(tuple(seasons))


def data_path(*parts: str) -> Path:
    return Path(str(resources.files("leaguestats").joinpath("data", *parts)))


@functools.lru_cache(maxsize=None)
def load_embedded_corpus() -> Corpus:
    """The eight complete seasons shipped with the package (2009/10 to 2016/17)."""
    return load_corpus(data_path())


def load_default_corpus(allow_partial: bool = False) -> Corpus:
    """Embedded corpus unless ``LEAGUESTATS_DATA`` points at another directory."""
    override = os.environ.get("LEAGUESTATS_DATA")
    if override:
        return load_corpus(override, allow_partial=allow_partial)
    return load_embedded_corpus()
