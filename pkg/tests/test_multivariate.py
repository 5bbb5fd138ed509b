import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from leaguestats.corpus import DESCRIPTORS, Descriptor, descriptor_column
from leaguestats.errors import DegenerateColumn, DegenerateRange, NoConvergence, NotSymmetric
from leaguestats.multivariate import (
    correlation_matrix,
    correlation_series,
    fix_signs,
    jacobi_eigh,
    pca,
    pca_matrix,
    pearson,
)

finite = st.floats(-100, 100, allow_nan=False, allow_infinity=False)
vectors = arrays(float, st.integers(3, 25), elements=finite).filter(lambda v: np.ptp(v) > 1e-3)


def textbook_pearson(x, y):
    n = len(x)
    mx, my = sum(x) / n, sum(y) / n
    num = sum((a - mx) * (b - my) for a, b in zip(x, y))
    den = (sum((a - mx) ** 2 for a in x) * sum((b - my) ** 2 for b in y)) ** 0.5
    return num / den


def test_pearson_examples(season0910):
    x = [1.0, 2.0, 4.0, 7.0]
    assert pearson(x, x) == 1.0
    assert pearson(x, [-v for v in x]) == -1.0
    pts = descriptor_column(season0910, Descriptor.POINTS)
    exp = descriptor_column(season0910, Descriptor.EXPENDITURE)
    assert pearson(pts, exp) > 0
    assert pearson(pts, exp) == pytest.approx(textbook_pearson(list(pts), list(exp)), abs=1e-12)
    assert pearson(pts, exp) == pytest.approx(np.corrcoef(pts, exp)[0, 1], abs=1e-12)


def test_pearson_errors():
    with pytest.raises(DegenerateRange):
        pearson([1, 2, 3], [5, 5, 5])
    with pytest.raises(ValueError):
        pearson([1, 2], [3, 4])
    with pytest.raises(ValueError):
        pearson([1, 2, 3], [3, 4])


@settings(max_examples=200, deadline=None)
@given(vectors, st.data())
def test_pearson_properties(x, data):
    y = data.draw(arrays(float, x.size, elements=finite).filter(lambda v: np.ptp(v) > 1e-3))
    r = pearson(x, y)
    assert -1 <= r <= 1
    assert r == pytest.approx(pearson(y, x), abs=1e-12)
    a = data.draw(st.floats(0.1, 10))
    b = data.draw(finite)
    assert pearson(a * x + b, y) == pytest.approx(r, abs=1e-9)
    assert pearson(-a * x + b, y) == pytest.approx(-r, abs=1e-9)


def test_correlation_matrix(corpus):
    corr = correlation_matrix(corpus)
    assert corr.values.shape == (8, 5)
    assert np.all(np.abs(corr.values) <= 1)
    i = corr.seasons.index("2015/16")
    assert corr.values[i, DESCRIPTORS.index(Descriptor.PROFIT)] > 0
    for d in (Descriptor.RATIO, Descriptor.PLAYER_SPEND, Descriptor.FOREIGN_SPEND, Descriptor.EXPENDITURE):
        assert int(np.argmin(corr.values[:, DESCRIPTORS.index(d)])) == i
    s = correlation_series(corpus, Descriptor.RATIO)
    assert [v for _, v in s.entries] == pytest.approx(corr.values[:, 0].tolist(), abs=0)
    assert corr.series(Descriptor.RATIO) == s
    assert corr.to_csv().splitlines()[0] == "season,ratio,player_spend,foreign_spend,profit,expenditure"


def test_jacobi_examples():
    w, v = jacobi_eigh(np.eye(6))
    assert np.array_equal(w, np.ones(6))
    assert np.array_equal(np.abs(v), np.eye(6))
    w, v = jacobi_eigh(np.diag([0.0, 3.0, 0.0, 1.0, 2.0, 0.0]))
    assert w.tolist() == [3, 2, 1, 0, 0, 0]
    assert np.array_equal(np.abs(v[:, 0]), np.eye(6)[1])
    assert np.array_equal(np.abs(v[:, 1]), np.eye(6)[4])


def test_jacobi_errors():
    a = np.arange(9.0).reshape(3, 3)
    with pytest.raises(NotSymmetric):
        jacobi_eigh(a)
    with pytest.raises(NotSymmetric):
        jacobi_eigh(np.ones((2, 3)))
    s = a + a.T
    with pytest.raises(NoConvergence):
        jacobi_eigh(s, max_sweeps=0)


@settings(max_examples=200, deadline=None)
@given(arrays(float, (6, 6), elements=st.floats(-1e3, 1e3)))
def test_jacobi_reconstructs(m):
    s = (m + m.T) / 2
    w, v = jacobi_eigh(s)
    scale = max(1.0, np.linalg.norm(s))
    assert np.all(np.diff(w) <= 0)
    assert np.allclose(v.T @ v, np.eye(6), atol=1e-10)
    assert np.allclose(v @ np.diag(w) @ v.T, s, atol=1e-9 * scale)
    assert np.allclose(w, np.linalg.eigvalsh(s)[::-1], atol=1e-9 * scale)


def test_fix_signs():
    v = np.array([[0.6, -0.1], [-0.8, -0.9]])
    out = fix_signs(v)
    assert out.tolist() == [[-0.6, 0.1], [0.8, 0.9]]


def test_pca_single_varying_column():
    X = np.zeros((5, 3))
    X[:, 1] = [1, 4, 2, 8, 5]
    res = pca_matrix(X, ["a", "b", "c"])
    assert res.pc(1).tolist() == [0, 1, 0]
    assert res.explained[0] == pytest.approx(1.0)
    with pytest.raises(DegenerateColumn):
        pca_matrix(np.ones((4, 2)), ["a", "b"])


def test_pca_season_values(corpus):
    res = pca(corpus["2009/10"])
    pc1 = dict(zip(res.variables, res.pc(1)))
    assert pc1["Exp"] == pytest.approx(0.921, abs=5e-3)
    assert abs(pc1["Exp"]) > abs(pc1["Profits"]) > abs(pc1["Player Spend"])
    assert pca(corpus["2012/13"]).pc(1)[5] == pytest.approx(0.945, abs=5e-3)


def test_pca_structure(corpus):
    for t in corpus:
        res = pca(t)
        L = res.loadings
        assert np.allclose(L.T @ L, np.eye(6), atol=1e-10)
        assert res.eigenvalues.sum() == pytest.approx(np.trace(res.covariance), rel=1e-10)
        assert np.allclose(L @ np.diag(res.eigenvalues) @ L.T, res.covariance, atol=1e-8 * np.abs(res.covariance).max())
        assert res.explained.sum() == pytest.approx(1.0, abs=1e-12)
        assert np.allclose(res.covariance, np.cov(np.column_stack([t.column(Descriptor.POINTS)] + [t.column(d) for d in DESCRIPTORS]), rowvar=False))
        assert pca(t).to_csv() == res.to_csv()


def test_pca_row_permutation(corpus):
    t = corpus["2014/15"]
    res = pca(t)
    X = np.column_stack([t.column(Descriptor.POINTS)] + [t.column(d) for d in DESCRIPTORS])
    perm = np.random.default_rng(7).permutation(20)
    other = pca_matrix(X[perm], res.variables)
    assert np.allclose(other.loadings, res.loadings, atol=1e-10)
    assert res.to_csv().splitlines()[0] == "variable,PCA 1,PCA 2,PCA 3,PCA 4,PCA 5,PCA 6"


def test_pca_constant_column(corpus):
    t = corpus["2009/10"]
    for r in t:
        t = t.replace_value(r.team, Descriptor.RATIO, 1.0)
    with pytest.raises(DegenerateColumn):
        pca(t)
