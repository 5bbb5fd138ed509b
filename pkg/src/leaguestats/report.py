"""Published reference tables, oracle comparisons and the one-shot ``reproduce`` run."""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .corpus import DESCRIPTORS, Corpus, Descriptor, SeasonTable, data_path, format_number
from .density import DEFAULT_CONFIG, KdeConfig, nonoverlap_table
from .inequality import (
    gini,
    inequality_report,
    inequality_series,
    lorenz,
    reports_to_json,
    series_to_csv,
)
from .multivariate import correlation_matrix, pca
from .ranking import rerank_all
from .svg import lorenz_svg, season_svg

PCA_TOL = 0.02
NONOVERLAP_MAD_TARGET = 0.15
# The printed 2013/14 PCA table repeats the 2016/17 one, so it is not a usable reference.
PCA_EXCLUDED = ("2013/14",)

RANK_COLUMNS = (
    Descriptor.EXPENDITURE,
    Descriptor.PROFIT,
    Descriptor.PLAYER_SPEND,
    Descriptor.FOREIGN_SPEND,
    Descriptor.RATIO,
)


def _tag(season: str) -> str:
    return season.replace("/", "_")


def _read_csv(path: Path) -> list[dict[str, str]]:
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def reference_ranks(season: str) -> dict[Descriptor, np.ndarray]:
    """Printed re-rank columns for ``season``, indexed by official position."""
    rows = sorted(_read_csv(data_path("reference", f"ranks_{_tag(season)}.csv")), key=lambda r: int(r["position"]))
    return {d: np.array([int(r[d.value]) for r in rows]) for d in DESCRIPTORS}


def reference_pca(season: str) -> np.ndarray:
    """Printed 6 x 6 loading table (rows Pts, Ratio, PlayerSpend, ForeignSpend, Profit, Exp)."""
    rows = _read_csv(data_path("reference", f"pca_{_tag(season)}.csv"))
    return np.array([[float(r[f"pc{k}"]) for k in range(1, 7)] for r in rows])


def reference_nonoverlap() -> dict[str, np.ndarray]:
    rows = _read_csv(data_path("reference", "nonoverlap.csv"))
    return {r["season"]: np.array([float(r[d.value]) for d in DESCRIPTORS]) for r in rows}


def reference_overlap_percentages() -> list[dict[str, str]]:
    return _read_csv(data_path("reference", "overlap_percentages.csv"))


def has_reference(season: str) -> bool:
    return data_path("reference", f"ranks_{_tag(season)}.csv").exists()


@dataclass(frozen=True)
class Comparison:
    name: str
    passed: bool
    max_abs_dev: Optional[float] = None
    detail: str = ""

    def line(self) -> str:
        dev = "" if self.max_abs_dev is None else f" max|dev|={self.max_abs_dev:.4g}"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}{dev}{extra}"


def compare_rerank(table: SeasonTable) -> Comparison:
    ref = reference_ranks(table.season)
    got = rerank_all(table)
    bad = []
    dev = 0
    for d in DESCRIPTORS:
        diff = np.abs(np.array(got[d]) - ref[d])
        dev = max(dev, int(diff.max()))
        bad += [f"{d.value}:{table.records[i].team}" for i in np.flatnonzero(diff)]
    return Comparison(f"rerank {table.season}", not bad, float(dev), ", ".join(bad[:6]))


def pc1_deviation(computed: np.ndarray, printed: np.ndarray) -> float:
    """Max entry-wise deviation, allowing one global sign flip."""
    return float(min(np.abs(computed - printed).max(), np.abs(computed + printed).max()))


def compare_pca(table: SeasonTable, tol: float = PCA_TOL) -> Comparison:
    dev = pc1_deviation(pca(table).pc(1), reference_pca(table.season)[:, 0])
    return Comparison(f"pca-pc1 {table.season}", dev <= tol, dev, f"tol {tol}")


def compare_exp_dominant(table: SeasonTable) -> Comparison:
    pc1 = np.abs(pca(table).pc(1))
    top = int(np.argmax(pc1))
    return Comparison(f"pca-exp-largest {table.season}", top == 5, None, f"largest |PC1| entry index {top}")


def oracle_comparisons(corpus: Corpus, config: KdeConfig = DEFAULT_CONFIG) -> list[Comparison]:
    """Every check of computed results against the printed tables and prose."""
    seasons = [t for t in corpus if not t.partial and has_reference(t.season)]
    out = [compare_rerank(t) for t in seasons]
    out += [compare_pca(t) for t in seasons if t.season not in PCA_EXCLUDED]
    out += [compare_exp_dominant(t) for t in seasons]

    full = Corpus(tuple(seasons))
    if not seasons:
        return out
    nov = nonoverlap_table(full, config)
    ref = reference_nonoverlap()
    j_profit = DESCRIPTORS.index(Descriptor.PROFIT)
    not_max = [s for s, row in zip(nov.seasons, nov.values) if int(np.argmax(row)) != j_profit]
    out.append(Comparison("nonoverlap profit is row maximum", not not_max, None, ", ".join(not_max)))
    devs = np.concatenate([np.abs(row - ref[s]) for s, row in zip(nov.seasons, nov.values) if s in ref])
    mad = float(devs.mean())
    out.append(
        Comparison(
            "nonoverlap mean |dev| vs printed table",
            mad <= NONOVERLAP_MAD_TARGET,
            float(devs.max()),
            f"mean {mad:.4f}, target <= {NONOVERLAP_MAD_TARGET}",
        )
    )

    if "2015/16" in full:
        corr = correlation_matrix(full)
        i = corr.seasons.index("2015/16")
        r_profit = corr.values[i, j_profit]
        out.append(Comparison("correlation 2015/16 profit positive", r_profit > 0, None, f"r={r_profit:.4f}"))
        lows = [Descriptor.RATIO, Descriptor.FOREIGN_SPEND, Descriptor.PLAYER_SPEND, Descriptor.EXPENDITURE]
        missed = [d.value for d in lows if int(np.argmin(corr.values[:, DESCRIPTORS.index(d)])) != i]
        out.append(Comparison("correlation 2015/16 lowest season", not missed, None, ", ".join(missed)))

    worse = [
        t.season
        for t in seasons
        if not gini(t.column(Descriptor.RATIO)) < gini(t.column(Descriptor.FOREIGN_SPEND))
    ]
    out.append(Comparison("gini ratio < gini foreign spend", not worse, None, ", ".join(worse)))
    return out


def rerank_csv(table: SeasonTable) -> str:
    """Thirteen-column table: five rank columns, then the season data."""
    ranks = rerank_all(table)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(
        [f"rank_{d.value}" for d in RANK_COLUMNS]
        + ["position", "team", "points", "ratio", "player_spend", "foreign_spend", "profit", "expenditure"]
    )
    for i, r in enumerate(table.records):
        w.writerow(
            [ranks[d][i] for d in RANK_COLUMNS]
            + [r.position, r.team, r.points]
            + [format_number(getattr(r, c)) for c in ("ratio", "player_spend", "foreign_spend", "profit", "expenditure")]
        )
    return buf.getvalue()


@dataclass
class ReproduceResult:
    comparisons: list[Comparison]
    files: list[Path]
    seconds: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.comparisons)

    def summary(self) -> str:
        lines = [c.line() for c in self.comparisons]
        n_pass = sum(c.passed for c in self.comparisons)
        lines.append(f"{n_pass}/{len(self.comparisons)} comparisons passed")
        return "\n".join(lines) + "\n"


def reproduce(corpus: Corpus, out_dir: str | Path, config: KdeConfig = DEFAULT_CONFIG) -> ReproduceResult:
    """Regenerate every table and figure analogue under ``out_dir`` and check them."""
    t0 = time.perf_counter()
    out = Path(out_dir)
    files: list[Path] = []

    def write(rel: str, text: str) -> None:
        p = out / rel
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(text, encoding="utf-8")
        files.append(p)

    complete = corpus.complete()
    for t in complete:
        write(f"rerank/rerank_{_tag(t.season)}.csv", rerank_csv(t))

    series = {d: inequality_series(complete, d) for d in DESCRIPTORS}
    write("inequality/inequality_series.csv", series_to_csv(series))
    write("inequality/inequality.json", reports_to_json([inequality_report(t) for t in complete]))
    seasons = complete.labels
    write(
        "inequality/gini.svg",
        season_svg({d.label: [e.gini for e in series[d]] for d in DESCRIPTORS}, seasons, "Gini index"),
    )
    write(
        "inequality/theil.svg",
        season_svg({d.label: [e.theil for e in series[d]] for d in DESCRIPTORS}, seasons, "Theil index"),
    )
    for d in DESCRIPTORS:
        curves = {}
        for t in complete:
            try:
                curves[t.season] = lorenz(t.column(d))
            except ValueError:
                continue
        if curves:
            write(f"inequality/lorenz_{d.value}.svg", lorenz_svg(curves, f"Lorenz curves: {d.label}"))

    nov = nonoverlap_table(complete, config)
    write("overlap/nonoverlap.csv", nov.to_csv())
    write(
        "overlap/nonoverlap.svg",
        season_svg({f"Pts v {d.label}": nov.values[:, j].tolist() for j, d in enumerate(DESCRIPTORS)}, seasons, "Non-overlap"),
    )

    corr = correlation_matrix(complete)
    write("correlation/correlation.csv", corr.to_csv())
    write(
        "correlation/correlation.svg",
        season_svg({d.label: corr.values[:, j].tolist() for j, d in enumerate(DESCRIPTORS)}, seasons, "Correlation with points"),
    )

    for t in complete:
        res = pca(t)
        write(f"pca/pca_{_tag(t.season)}.csv", res.to_csv())
        write(f"pca/pca_{_tag(t.season)}.json", res.to_json())

    comparisons = oracle_comparisons(complete, config)
    result = ReproduceResult(comparisons, files, 0.0)
    write("summary.txt", result.summary())
    write(
        "summary.json",
        json.dumps(
            [{"name": c.name, "passed": bool(c.passed), "max_abs_dev": c.max_abs_dev, "detail": c.detail} for c in comparisons],
            indent=2,
        )
        + "\n",
    )
    result.seconds = time.perf_counter() - t0
    return result
