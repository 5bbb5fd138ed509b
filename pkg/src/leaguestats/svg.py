"""Minimal deterministic SVG line charts.

Output depends only on the input values: coordinates are printed with fixed
precision and series keep their insertion order, so identical input gives
byte-identical documents.
"""

from __future__ import annotations

from typing import Mapping, Optional, Sequence
from xml.sax.saxutils import escape

import numpy as np

from .errors import EmptySeries

WIDTH, HEIGHT = 800, 600
LEFT, RIGHT, TOP, BOTTOM = 70, 180, 40, 60
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf")

Point = tuple[float, Optional[float]]


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _label(v: float) -> str:
    return f"{v:.4g}"


def emit_svg(
    series: Mapping[str, Sequence[Point]],
    x_labels: Optional[Sequence[str]] = None,
    title: str = "",
    x_range: Optional[tuple[float, float]] = None,
    y_range: Optional[tuple[float, float]] = None,
) -> str:
    """Render named ``(x, y)`` series as polylines on shared axes.

    Points whose ``y`` is ``None`` are skipped. With ``x_labels`` the x values
    are treated as indices into the labels (used for season axes).
    """
    clean = {name: [(float(x), float(y)) for x, y in pts if y is not None] for name, pts in series.items()}
    if not clean or not any(clean.values()):
        raise EmptySeries("nothing to plot")
    xs = np.array([x for pts in clean.values() for x, _ in pts])
    ys = np.array([y for pts in clean.values() for _, y in pts])
    x0, x1 = x_range or (float(xs.min()), float(xs.max()))
    y0, y1 = y_range or (float(ys.min()), float(ys.max()))
    if x_labels is not None:
        x0, x1 = 0.0, float(max(len(x_labels) - 1, 1))
    if x1 == x0:
        x0, x1 = x0 - 1, x1 + 1
    if y1 == y0:
        y0, y1 = y0 - 1, y1 + 1

    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM
    sx = lambda x: LEFT + (x - x0) / (x1 - x0) * pw  # noqa: E731
    sy = lambda y: TOP + ph - (y - y0) / (y1 - y0) * ph  # noqa: E731

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{WIDTH / 2:.0f}" y="24" text-anchor="middle" font-size="16">{escape(title)}</text>')
    bottom, right = TOP + ph, LEFT + pw
    out.append(f'<line x1="{LEFT}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>')
    out.append(f'<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{bottom}" stroke="black"/>')

    # y ticks: min and max only
    for val in (y0, y1):
        y = sy(val)
        out.append(f'<line x1="{LEFT - 5}" y1="{_fmt(y)}" x2="{LEFT}" y2="{_fmt(y)}" stroke="black"/>')
        out.append(
            f'<text x="{LEFT - 8}" y="{_fmt(y + 4)}" text-anchor="end" font-size="12">{_label(val)}</text>'
        )
    if x_labels is not None:
        ticks = [(float(i), str(lab)) for i, lab in enumerate(x_labels)]
    else:
        ticks = [(x0, _label(x0)), (x1, _label(x1))]
    for val, lab in ticks:
        x = sx(val)
        out.append(f'<line x1="{_fmt(x)}" y1="{bottom}" x2="{_fmt(x)}" y2="{bottom + 5}" stroke="black"/>')
        out.append(
            f'<text x="{_fmt(x)}" y="{bottom + 20}" text-anchor="middle" font-size="12">{escape(lab)}</text>'
        )

    for k, (name, pts) in enumerate(clean.items()):
        colour = PALETTE[k % len(PALETTE)]
        if pts:
            coords = " ".join(f"{_fmt(sx(x))},{_fmt(sy(y))}" for x, y in pts)
            out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="2" points="{coords}"/>')
        ly = TOP + 20 * k + 10
        out.append(f'<line x1="{right + 15}" y1="{ly}" x2="{right + 40}" y2="{ly}" stroke="{colour}" stroke-width="2"/>')
        out.append(f'<text x="{right + 45}" y="{ly + 4}" font-size="12">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def lorenz_svg(curves: Mapping[str, object], title: str = "Lorenz curves") -> str:
    """Plot Lorenz curves with the equality diagonal drawn as its own series."""
    series: dict[str, list[Point]] = {"equality": [(0.0, 0.0), (1.0, 1.0)]}
    for name, curve in curves.items():
        series[name] = curve.points  # type: ignore[attr-defined]
    lo = min(0.0, min(float(np.min(c.L)) for c in curves.values()))  # type: ignore[attr-defined]
    return emit_svg(series, title=title, x_range=(0.0, 1.0), y_range=(lo, 1.0))


def season_svg(rows: Mapping[str, Sequence[Optional[float]]], seasons: Sequence[str], title: str = "") -> str:
    """One polyline per named row, x axis labelled by season."""
    series = {name: [(float(i), v) for i, v in enumerate(vals)] for name, vals in rows.items()}
    return emit_svg(series, x_labels=list(seasons), title=title)
