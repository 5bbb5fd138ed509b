import math
import statistics

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leaguestats.corpus import DESCRIPTORS, Descriptor, descriptor_column
from leaguestats.density import (
    DEFAULT_CONFIG,
    KdeConfig,
    descriptor_density,
    gaussian_kde_values,
    kde,
    nonoverlap_table,
    normalize,
    overlap,
    overlap_pct,
    silverman_bandwidth,
)
from leaguestats.errors import DegenerateRange, GridMismatch


def brute_kde(xs, grid):
    """Pure-python Silverman KDE, renormalised with its own trapezoid sum."""
    n = len(xs)
    sd = statistics.stdev(xs)
    q = statistics.quantiles(xs, n=4, method="inclusive")
    h = 0.9 * min(sd, (q[2] - q[0]) / 1.34) * n ** -0.2
    f = [sum(math.exp(-0.5 * ((g - x) / h) ** 2) for x in xs) for g in grid]
    mass = sum((f[i] + f[i + 1]) / 2 * (grid[i + 1] - grid[i]) for i in range(len(grid) - 1))
    return h, [v / mass for v in f]


# Samples whose spread is resolvable on the default grid (spacing about 0.005);
# a near-zero IQR gives a bandwidth far below the grid step, which the library
# reports as DegenerateRange (checked separately below).
samples = st.lists(st.floats(-1, 1, allow_nan=False), min_size=5, max_size=30).filter(
    lambda v: np.percentile(v, 75) - np.percentile(v, 25) > 0.05
)


def test_normalize_examples(season0910):
    assert normalize([0, 5, 10]).tolist() == [0, 0.5, 1]
    pts = normalize(descriptor_column(season0910, Descriptor.POINTS))
    assert pts[0] == 1 and pts[-1] == 0
    unit = np.array([0.0, 0.2, 0.7, 1.0])
    assert np.array_equal(normalize(unit), unit)
    assert normalize([-2, 1, 4], "maxabs").tolist() == [-0.5, 0.25, 1]
    with pytest.raises(DegenerateRange):
        normalize([3, 3, 3])


def test_bimodal_symmetric():
    x = np.array([0.0, 1.0] * 10)
    h = silverman_bandwidth(x)
    est = kde(x, KdeConfig(grid_min=-0.5, grid_max=1.5, grid_size=513))
    assert np.allclose(est.density, est.density[::-1], atol=1e-9)
    at = np.linspace(-0.3, 0.5, 17)
    assert np.allclose(gaussian_kde_values(x, at, h), gaussian_kde_values(x, 1 - at, h), atol=1e-12)
    mid = est.density[256]
    assert est.density[np.argmin(np.abs(est.grid - 0.0))] > mid


def test_matches_brute_force(season0910):
    x = normalize(descriptor_column(season0910, Descriptor.POINTS), "maxabs")
    est = kde(x)
    grid = DEFAULT_CONFIG.grid().tolist()
    h, f = brute_kde(x.tolist(), grid)
    assert est.bandwidth == pytest.approx(h, rel=1e-12)
    assert np.allclose(est.density, f, atol=1e-9)
    assert est.mode() == grid[int(np.argmax(f))]
    assert est.integral() == pytest.approx(1, abs=1e-6)


@settings(max_examples=100, deadline=None)
@given(samples)
def test_density_properties(x):
    est = kde(x)
    assert abs(est.integral() - 1) < 1e-6
    assert np.all(est.density >= 0)


def test_degenerate_inputs():
    with pytest.raises(DegenerateRange):
        kde([0.3] * 20)
    with pytest.raises(DegenerateRange):
        kde([0.0, 0.0, 0.0, -1.0, -1.192092896e-07])


def test_overlap_examples():
    x = normalize([0, 1, 2, 3, 5, 8, 13])
    f = kde(x)
    assert overlap(f, f).overlap == 1.0
    cfg = KdeConfig()
    a = kde([-0.01, 0.0, 0.01], cfg, bandwidth=0.01)
    b = kde([0.99, 1.0, 1.01], cfg, bandwidth=0.01)
    assert overlap(a, b).overlap < 1e-12
    wide_a = kde([-0.01, 0.0, 0.01], cfg, bandwidth=10)
    wide_b = kde([0.99, 1.0, 1.01], cfg, bandwidth=10)
    assert overlap(wide_a, wide_b).overlap > 0.99


def test_grid_mismatch():
    x = [0.1, 0.4, 0.5, 0.9]
    with pytest.raises(GridMismatch):
        overlap(kde(x), kde(x, KdeConfig(grid_size=256)))


@settings(max_examples=100, deadline=None)
@given(samples, samples)
def test_overlap_symmetric_bounded(x, y):
    a, b = kde(x), kde(y)
    ab, ba = overlap(a, b), overlap(b, a)
    assert ab.overlap == ba.overlap
    assert 0 <= ab.overlap <= 1
    assert ab.overlap + ab.non_overlap == pytest.approx(1, abs=1e-9)
    assert overlap(a, a).overlap == pytest.approx(1, abs=1e-9)


def test_grid_refinement(corpus):
    coarse = nonoverlap_table(corpus, KdeConfig(grid_size=512))
    fine = nonoverlap_table(corpus, KdeConfig(grid_size=1024))
    assert np.abs(coarse.values - fine.values).max() < 1e-3


def test_nonoverlap_table(corpus):
    nov = nonoverlap_table(corpus)
    assert nov.values.shape == (8, 5)
    assert np.all((nov.values >= 0) & (nov.values <= 1))
    assert np.all(np.argmax(nov.values, axis=1) == DESCRIPTORS.index(Descriptor.PROFIT))
    lines = nov.to_csv().splitlines()
    assert lines[0] == "season,Pts v Ratio,Pts v Player Spend,Pts v Foreign Spend,Pts v Profits,Pts v Exp"
    assert len(lines) == 9 and lines[1].startswith("2009/10,")


def test_overlap_pct(corpus):
    t = corpus["2009/10"]
    with pytest.raises(ValueError):
        overlap_pct(t, Descriptor.PROFIT, Descriptor.PROFIT)
    same = t
    for r in t:
        same = same.replace_value(r.team, Descriptor.PLAYER_SPEND, r.foreign_spend)
    assert overlap_pct(same, Descriptor.PLAYER_SPEND, Descriptor.FOREIGN_SPEND) == pytest.approx(100.0, abs=1e-9)
    for s in corpus:
        v = overlap_pct(s, Descriptor.FOREIGN_SPEND, Descriptor.PROFIT)
        assert 0 <= v <= 100


def test_density_csv(season0910):
    est = descriptor_density(season0910, Descriptor.RATIO)
    lines = est.to_csv().splitlines()
    assert lines[0] == "x,f" and len(lines) == 513
    assert float(lines[1].split(",")[0]) == -1.2
