"""Pearson correlation against points, and per-season covariance PCA.

The PCA works on mean-centred raw columns (no scaling to unit variance), so
the money columns dominate the leading component. Eigenpairs come from a
cyclic Jacobi solver; each eigenvector's sign is fixed so that its
largest-magnitude entry is positive.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .corpus import DESCRIPTORS, PCA_VARIABLES, Corpus, Descriptor, SeasonTable, descriptor_column, format_number
from .errors import DegenerateColumn, DegenerateRange, NoConvergence, NotSymmetric

# Relative to the Frobenius norm: an absolute bound is unreachable for large
# covariance entries, and anything looser shows up as reconstruction error.
JACOBI_TOL = 1e-15
JACOBI_MAX_SWEEPS = 100
SYMMETRY_TOL = 1e-12


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("pearson needs two vectors of equal length")
    if x.size < 3:
        raise ValueError("pearson needs at least three observations")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = dx @ dx
    syy = dy @ dy
    if sxx == 0 or syy == 0:
        raise DegenerateRange("correlation undefined for a constant vector")
    r = (dx @ dy) / np.sqrt(sxx * syy)
    return float(min(1.0, max(-1.0, r)))


@dataclass(frozen=True)
class CorrelationSeries:
    descriptor: Descriptor
    entries: tuple[tuple[str, float], ...]


@dataclass(frozen=True)
class CorrelationMatrix:
    seasons: tuple[str, ...]
    values: np.ndarray
    columns: tuple[Descriptor, ...] = field(default=DESCRIPTORS)

    def series(self, d: Descriptor) -> CorrelationSeries:
        j = self.columns.index(d)
        return CorrelationSeries(d, tuple((s, float(v)) for s, v in zip(self.seasons, self.values[:, j])))

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("season," + ",".join(d.value for d in self.columns) + "\n")
        for s, row in zip(self.seasons, self.values):
            buf.write(s + "," + ",".join(format_number(v) for v in row) + "\n")
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "columns": [d.value for d in self.columns],
            "rows": {s: [float(v) for v in row] for s, row in zip(self.seasons, self.values)},
        }


def correlation_series(corpus: Corpus, d: Descriptor) -> CorrelationSeries:
    return CorrelationSeries(
        d,
        tuple(
            (t.season, pearson(descriptor_column(t, Descriptor.POINTS), descriptor_column(t, d)))
            for t in corpus
        ),
    )


def correlation_matrix(corpus: Corpus) -> CorrelationMatrix:
    """Pearson r of points against each descriptor: seasons x 5."""
    vals = [
        [pearson(descriptor_column(t, Descriptor.POINTS), descriptor_column(t, d)) for d in DESCRIPTORS]
        for t in corpus
    ]
    return CorrelationMatrix(tuple(corpus.labels), np.array(vals, dtype=float).reshape(len(vals), len(DESCRIPTORS)))


def _off_norm(a: np.ndarray) -> float:
    off = a[~np.eye(a.shape[0], dtype=bool)]
    return float(np.sqrt(off @ off))


def jacobi_eigh(
    S: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS
) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and eigenvectors of a real symmetric matrix by cyclic Jacobi.

    Sweeps over every off-diagonal pair until the off-diagonal Frobenius norm
    drops below ``tol`` times the matrix norm. Eigenvalues come back in
    descending order with eigenvectors as matching columns.
    """
    a = np.array(S, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSymmetric("matrix must be square")
    scale = max(1.0, float(np.abs(a).max()) if a.size else 1.0)
    if np.abs(a - a.T).max(initial=0.0) > SYMMETRY_TOL * scale:
        raise NotSymmetric("matrix is not symmetric")
    a = (a + a.T) / 2.0
    n = a.shape[0]
    v = np.eye(n)
    target = tol * max(np.linalg.norm(a), np.finfo(float).tiny)

    for _ in range(max_sweeps + 1):
        if _off_norm(a) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                diff = a[q, q] - a[p, p]
                if abs(apq) < 1e-150 * max(abs(diff), 1.0):
                    a[p, q] = a[q, p] = 0.0
                    continue
                theta = diff / (2.0 * apq)
                if abs(theta) > 1e150:
                    # theta**2 would overflow; use the leading term of t
                    t = 1.0 / (2.0 * theta)
                else:
                    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")

    w = np.diag(a).copy()
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Flip each column so its largest-magnitude entry is positive."""
    out = np.array(vectors, dtype=float)
    for k in range(out.shape[1]):
        i = int(np.argmax(np.abs(out[:, k])))
        if out[i, k] < 0:
            out[:, k] = -out[:, k]
    return out


@dataclass(frozen=True)
class PcaResult:
    variables: tuple[str, ...]
    loadings: np.ndarray
    eigenvalues: np.ndarray
    explained: np.ndarray
    covariance: np.ndarray
    season: str = ""

    def pc(self, k: int) -> np.ndarray:
        """Loading vector of component ``k`` (1-based)."""
        return self.loadings[:, k - 1]

    def to_csv(self) -> str:
        m = self.loadings.shape[1]
        buf = io.StringIO()
        buf.write("variable," + ",".join(f"PCA {k}" for k in range(1, m + 1)) + "\n")
        for name, row in zip(self.variables, self.loadings):
            buf.write(name + "," + ",".join(format_number(v) for v in row) + "\n")
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "season": self.season,
            "variables": list(self.variables),
            "loadings": self.loadings.tolist(),
            "eigenvalues": self.eigenvalues.tolist(),
            "explained": self.explained.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def pca_matrix(X: np.ndarray, variables: Sequence[str], season: str = "") -> PcaResult:
    """Covariance PCA of an observations x variables matrix (divisor n - 1)."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != len(variables) or X.shape[0] < 2:
        raise ValueError("X must be observations x variables with at least two rows")
    Xc = X - X.mean(axis=0)
    cov = Xc.T @ Xc / (X.shape[0] - 1)
    w, v = jacobi_eigh(cov)
    trace = float(np.trace(cov))
    if not trace > 0:
        raise DegenerateColumn("all columns are constant")
    return PcaResult(tuple(variables), fix_signs(v), w, w / trace, cov, season)


def pca(table: SeasonTable) -> PcaResult:
    """Six-variable PCA of one season (points plus the five descriptors)."""
    X = np.column_stack([descriptor_column(table, d) for d in PCA_VARIABLES])
    for d, col in zip(PCA_VARIABLES, X.T):
        if np.all(col == col[0]):
            raise DegenerateColumn(f"{table.season}: column {d.value} is constant")
    return pca_matrix(X, [d.label for d in PCA_VARIABLES], table.season)
