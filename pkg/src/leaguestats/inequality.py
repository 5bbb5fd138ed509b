"""Lorenz curves, Gini coefficients and Theil indices.

Negative values (club losses) are handled as follows. Gini works on the raw
values through the Lorenz area, so it can exceed 1 when losses are present and
is undefined when the total is not positive. Theil needs strictly positive
values, so a vector with any value <= 0 is shifted to ``x - min(x) + 0.01 *
range(x)`` and the offset is reported alongside the index.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .corpus import DESCRIPTORS, Corpus, Descriptor, SeasonTable, descriptor_column, format_number
from .errors import DegenerateRange, LeagueStatsError, NonPositiveTotal, ZeroTotal

THEIL_SHIFT_EPS = 0.01


@dataclass(frozen=True)
class LorenzCurve:
    p: np.ndarray
    L: np.ndarray

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.p.tolist(), self.L.tolist()))

    def area(self) -> float:
        """Trapezoidal area under the curve."""
        return float(np.sum((self.L[1:] + self.L[:-1]) * np.diff(self.p)) / 2.0)

    def to_csv(self) -> str:
        lines = ["p,L"] + [f"{format_number(p)},{format_number(l)}" for p, l in self.points]
        return "\n".join(lines) + "\n"


def _as_vector(values: Sequence[float]) -> np.ndarray:
    x = np.asarray(values, dtype=float).ravel()
    if x.size < 2:
        raise ValueError("need at least two values")
    return x


def lorenz(values: Sequence[float]) -> LorenzCurve:
    x = np.sort(_as_vector(values), kind="stable")
    total = x.sum()
    if total == 0:
        raise ZeroTotal("Lorenz shares are undefined when the values sum to zero")
    n = x.size
    p = np.arange(n + 1) / n
    L = np.concatenate([[0.0], np.cumsum(x) / total])
    L[-1] = 1.0
    return LorenzCurve(p, L)


def gini(values: Sequence[float]) -> float:
    """One minus twice the trapezoidal area under the Lorenz curve."""
    x = _as_vector(values)
    if x.sum() <= 0:
        raise NonPositiveTotal(f"Gini undefined for non-positive total {x.sum():.6g}")
    return 1.0 - 2.0 * lorenz(x).area()


def theil(values: Sequence[float]) -> tuple[float, float]:
    """Theil T index and the offset added to make the values positive.

    >>> theil([2.0, 2.0, 2.0])
    (0.0, 0.0)
    """
    x = _as_vector(values)
    shift = 0.0
    if np.any(x <= 0):
        spread = x.max() - x.min()
        if spread == 0:
            raise DegenerateRange("all values equal and non-positive")
        shift = -x.min() + THEIL_SHIFT_EPS * spread
        x = x + shift
    if np.all(x == x[0]):
        return 0.0, float(shift)
    s = x / x.mean()
    return float(np.mean(s * np.log(s))), float(shift)


@dataclass(frozen=True)
class SeriesEntry:
    season: str
    gini: Optional[float]
    theil: Optional[float]
    shift_applied: float = 0.0
    note: str = ""


def inequality_series(corpus: Corpus, d: Descriptor) -> list[SeriesEntry]:
    """Gini and Theil for ``d`` in every season; undefined values become ``None``."""
    out = []
    for table in corpus:
        x = descriptor_column(table, d)
        notes = []
        try:
            g = gini(x)
        except LeagueStatsError as exc:
            g = None
            notes.append(type(exc).__name__)
        try:
            t, shift = theil(x)
        except LeagueStatsError as exc:
            t, shift = None, 0.0
            notes.append(type(exc).__name__)
        if shift:
            notes.append("shifted")
        out.append(SeriesEntry(table.season, g, t, shift, ";".join(notes)))
    return out


@dataclass
class InequalityReport:
    season: str
    gini: dict[Descriptor, Optional[float]] = field(default_factory=dict)
    theil: dict[Descriptor, Optional[float]] = field(default_factory=dict)
    shift_applied: dict[Descriptor, float] = field(default_factory=dict)
    flags: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        und = lambda v: "undefined" if v is None else v  # noqa: E731
        return {
            "season": self.season,
            "gini": {d.value: und(v) for d, v in self.gini.items()},
            "theil": {d.value: und(v) for d, v in self.theil.items()},
            "shift_applied": {d.value: v for d, v in self.shift_applied.items()},
            "flags": list(self.flags),
        }


def inequality_report(table: SeasonTable, descriptors: Sequence[Descriptor] = DESCRIPTORS) -> InequalityReport:
    rep = InequalityReport(table.season)
    single = Corpus((table,))
    for d in descriptors:
        (e,) = inequality_series(single, d)
        rep.gini[d] = e.gini
        rep.theil[d] = e.theil
        rep.shift_applied[d] = e.shift_applied
        if e.gini is None:
            rep.flags.append(f"{d.value}: gini undefined (non-positive total)")
        elif e.gini > 1:
            rep.flags.append(f"{d.value}: gini exceeds 1 because of negative values")
        if e.shift_applied:
            rep.flags.append(f"{d.value}: theil computed on values shifted by {e.shift_applied:.6g}")
    return rep


def reports_to_json(reports: Sequence[InequalityReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2) + "\n"


def series_to_csv(rows: dict[Descriptor, list[SeriesEntry]]) -> str:
    buf = io.StringIO()
    buf.write("season,descriptor,gini,theil,shift_applied\n")
    for d, entries in rows.items():
        for e in entries:
            g = "undefined" if e.gini is None else format_number(e.gini)
            t = "undefined" if e.theil is None else format_number(e.theil)
            buf.write(f"{e.season},{d.value},{g},{t},{format_number(e.shift_applied)}\n")
    return buf.getvalue()
