"""Gaussian kernel density estimates and the overlap between two of them.

Descriptors come in incommensurate units (points, a ratio, millions of
pounds), so each column is rescaled before estimating its density. The default
rescaling divides by the largest absolute value, which keeps zero fixed and
maps every column into [-1, 1]; profit columns with losses land on the
negative side. Densities are evaluated on one fixed grid so any two of them
can be compared pointwise.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .corpus import DESCRIPTORS, Corpus, Descriptor, SeasonTable, descriptor_column, format_number
from .errors import DegenerateRange, GridMismatch

SCALINGS = ("maxabs", "minmax", "zscore")


@dataclass(frozen=True)
class KdeConfig:
    scaling: str = "maxabs"
    grid_min: float = -1.2
    grid_max: float = 1.2
    grid_size: int = 512

    def __post_init__(self):
        if self.scaling not in SCALINGS:
            raise ValueError(f"scaling must be one of {SCALINGS}")
        if self.grid_size < 2 or self.grid_max <= self.grid_min:
            raise ValueError("bad grid")

    def grid(self) -> np.ndarray:
        return np.linspace(self.grid_min, self.grid_max, self.grid_size)


DEFAULT_CONFIG = KdeConfig()


@dataclass(frozen=True)
class DensityEstimate:
    grid: np.ndarray
    density: np.ndarray
    bandwidth: float
    label: str = ""
    season: str = ""

    def integral(self) -> float:
        return trapezoid(self.density, self.grid)

    def mode(self) -> float:
        return float(self.grid[np.argmax(self.density)])

    def to_csv(self) -> str:
        rows = ["x,f"] + [f"{format_number(x)},{format_number(f)}" for x, f in zip(self.grid, self.density)]
        return "\n".join(rows) + "\n"


@dataclass(frozen=True)
class OverlapResult:
    overlap: float
    non_overlap: float
    pair: tuple[str, str] = ("", "")
    season: str = ""


def trapezoid(y: np.ndarray, x: np.ndarray) -> float:
    return float(np.sum((y[1:] + y[:-1]) * np.diff(x)) / 2.0)


def normalize(values: Sequence[float], method: str = "minmax") -> np.ndarray:
    """Rescale a column to a unit-free range.

    ``minmax`` maps onto [0, 1]; ``maxabs`` divides by ``max(|x|)``;
    ``zscore`` centres and divides by the sample standard deviation.
    """
    x = np.asarray(values, dtype=float)
    lo, hi = x.min(), x.max()
    if not hi > lo:
        raise DegenerateRange("cannot rescale a constant vector")
    if method == "minmax":
        return (x - lo) / (hi - lo)
    if method == "maxabs":
        return x / np.abs(x).max()
    if method == "zscore":
        return (x - x.mean()) / x.std(ddof=1)
    raise ValueError(f"unknown scaling {method!r}")


def silverman_bandwidth(x: np.ndarray) -> float:
    """``0.9 * min(sd, IQR / 1.34) * n ** (-1/5)``; falls back to sd when IQR is 0."""
    x = np.asarray(x, dtype=float)
    sd = x.std(ddof=1)
    q75, q25 = np.percentile(x, [75, 25])
    spread = min(sd, (q75 - q25) / 1.34) if q75 > q25 else sd
    if not spread > 0:
        raise DegenerateRange("bandwidth undefined for a constant vector")
    return 0.9 * spread * x.size ** (-0.2)


def gaussian_kde_values(x: np.ndarray, at: np.ndarray, h: float) -> np.ndarray:
    """Unnormalised sum of Gaussian kernels of width ``h`` centred on ``x``."""
    z = (np.asarray(at, dtype=float)[:, None] - np.asarray(x, dtype=float)[None, :]) / h
    return np.exp(-0.5 * z * z).sum(axis=1) / (x.size * h * np.sqrt(2 * np.pi))


def kde(
    values: Sequence[float],
    config: KdeConfig = DEFAULT_CONFIG,
    bandwidth: Optional[float] = None,
    label: str = "",
    season: str = "",
) -> DensityEstimate:
    """Density of already-rescaled ``values`` on the config grid.

    The bandwidth defaults to Silverman's rule. The result is renormalised so
    its trapezoidal integral over the grid is exactly one, which absorbs the
    kernel mass falling outside the grid.
    """
    x = np.asarray(values, dtype=float)
    if np.unique(x).size < 2:
        raise DegenerateRange("KDE needs at least two distinct values")
    h = silverman_bandwidth(x) if bandwidth is None else float(bandwidth)
    if not h > 0:
        raise ValueError("bandwidth must be positive")
    grid = config.grid()
    f = gaussian_kde_values(x, grid, h)
    mass = trapezoid(f, grid)
    if not mass > 0:
        raise DegenerateRange("density vanishes on the grid")
    return DensityEstimate(grid, f / mass, h, label, season)


def descriptor_density(table: SeasonTable, d: Descriptor, config: KdeConfig = DEFAULT_CONFIG) -> DensityEstimate:
    x = normalize(descriptor_column(table, d), config.scaling)
    return kde(x, config, label=d.value, season=table.season)


def overlap(a: DensityEstimate, b: DensityEstimate) -> OverlapResult:
    """Overlap coefficient: trapezoidal integral of ``min(f_a, f_b)``."""
    if a.grid.shape != b.grid.shape or not np.array_equal(a.grid, b.grid):
        raise GridMismatch("densities are evaluated on different grids")
    ov = min(max(trapezoid(np.minimum(a.density, b.density), a.grid), 0.0), 1.0)
    return OverlapResult(ov, 1.0 - ov, (a.label, b.label), a.season or b.season)


def overlap_pct(table: SeasonTable, a: Descriptor, b: Descriptor, config: KdeConfig = DEFAULT_CONFIG) -> float:
    if a is b:
        raise ValueError("overlap_pct needs two different descriptors")
    res = overlap(descriptor_density(table, a, config), descriptor_density(table, b, config))
    return 100.0 * res.overlap


@dataclass(frozen=True)
class NonOverlapTable:
    seasons: tuple[str, ...]
    values: np.ndarray
    columns: tuple[Descriptor, ...] = field(default=DESCRIPTORS)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("season," + ",".join(f"Pts v {d.label}" for d in self.columns) + "\n")
        for s, row in zip(self.seasons, self.values):
            buf.write(s + "," + ",".join(format_number(v) for v in row) + "\n")
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "columns": [d.value for d in self.columns],
            "rows": {s: [float(v) for v in row] for s, row in zip(self.seasons, self.values)},
        }


def nonoverlap_table(corpus: Corpus, config: KdeConfig = DEFAULT_CONFIG) -> NonOverlapTable:
    """Non-overlap between points and each descriptor, one row per season."""
    rows = []
    for table in corpus:
        pts = descriptor_density(table, Descriptor.POINTS, config)
        rows.append([overlap(pts, descriptor_density(table, d, config)).non_overlap for d in DESCRIPTORS])
    return NonOverlapTable(tuple(corpus.labels), np.array(rows, dtype=float).reshape(len(rows), len(DESCRIPTORS)))
