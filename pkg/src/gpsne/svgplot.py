"""Minimal static SVG line/scatter plots (axes, series, legend).

Only what the CLI figures need: linear or logarithmic axes, polyline and
marker series, and a legend. Output depends only on the input data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence
from xml.sax.saxutils import escape

__all__ = ["Series", "Figure"]

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


@dataclass
class Series:
    x: Sequence[float]
    y: Sequence[Optional[float]]
    label: str
    line: bool = True
    markers: bool = False
    dashed: bool = False
    hollow: bool = False


@dataclass
class Figure:
    title: str = ""
    xlabel: str = ""
    ylabel: str = ""
    xlog: bool = False
    ylog: bool = False
    width: int = 640
    height: int = 440
    series: List[Series] = field(default_factory=list)

    margin = (70, 20, 40, 50)  # left, right, top, bottom

    def add(self, *args, **kwargs) -> Series:
        s = Series(*args, **kwargs)
        self.series.append(s)
        return s

    def _points(self, s):
        for x, y in zip(s.x, s.y):
            if x is None or y is None:
                continue
            if (self.xlog and x <= 0) or (self.ylog and y <= 0):
                continue
            if math.isfinite(x) and math.isfinite(y):
                yield float(x), float(y)

    def _limits(self, axis):
        log = self.xlog if axis == 0 else self.ylog
        vals = [p[axis] for s in self.series for p in self._points(s)]
        if not vals:
            return (0.0, 1.0)
        lo, hi = min(vals), max(vals)
        if log:
            lo, hi = math.floor(math.log10(lo)), math.ceil(math.log10(hi))
            if lo == hi:
                hi += 1
            return float(lo), float(hi)
        if lo == hi:
            lo, hi = lo - 0.5, hi + 0.5
        pad = 0.05 * (hi - lo)
        return lo - pad, hi + pad

    def render(self) -> str:
        left, right, top, bottom = self.margin
        pw = self.width - left - right
        ph = self.height - top - bottom
        xlim, ylim = self._limits(0), self._limits(1)

        def tx(x):
            v = math.log10(x) if self.xlog else x
            return left + pw * (v - xlim[0]) / (xlim[1] - xlim[0])

        def ty(y):
            v = math.log10(y) if self.ylog else y
            return top + ph * (1.0 - (v - ylim[0]) / (ylim[1] - ylim[0]))

        out = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" height="{self.height}" '
            f'viewBox="0 0 {self.width} {self.height}" font-family="sans-serif" font-size="12">',
            f'<rect x="0" y="0" width="{self.width}" height="{self.height}" fill="white"/>',
            f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
        ]
        out += self._ticks(0, xlim, tx, ty, top + ph)
        out += self._ticks(1, ylim, tx, ty, left)
        if self.title:
            out.append(f'<text x="{left + pw / 2:.2f}" y="{top - 14}" text-anchor="middle">{escape(self.title)}</text>')
        out.append(f'<text x="{left + pw / 2:.2f}" y="{self.height - 10}" text-anchor="middle">{escape(self.xlabel)}</text>')
        out.append(
            f'<text x="16" y="{top + ph / 2:.2f}" text-anchor="middle" '
            f'transform="rotate(-90 16 {top + ph / 2:.2f})">{escape(self.ylabel)}</text>'
        )

        for i, s in enumerate(self.series):
            color = _COLORS[i % len(_COLORS)]
            pts = [(tx(x), ty(y)) for x, y in self._points(s)]
            if s.line and len(pts) > 1:
                dash = ' stroke-dasharray="6,4"' if s.dashed else ""
                path = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
                out.append(f'<polyline points="{path}" fill="none" stroke="{color}" stroke-width="1.5"{dash}/>')
            if s.markers:
                fill = "white" if s.hollow else color
                out += [f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="{fill}" stroke="{color}"/>' for x, y in pts]
            ly = top + 16 + 16 * i
            out.append(f'<line x1="{left + pw - 150}" y1="{ly - 4}" x2="{left + pw - 126}" y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
            out.append(f'<text x="{left + pw - 120}" y="{ly}">{escape(s.label)}</text>')
        out.append("</svg>")
        return "\n".join(out) + "\n"

    def _ticks(self, axis, lim, tx, ty, at):
        log = self.xlog if axis == 0 else self.ylog
        if log:
            values = [10.0 ** k for k in range(int(lim[0]), int(lim[1]) + 1)]
            labels = [f"1e{int(round(math.log10(v)))}" for v in values]
        else:
            step = _nice_step((lim[1] - lim[0]) / 5)
            start = math.ceil(lim[0] / step) * step
            values = []
            v = start
            while v <= lim[1] + 1e-12 * step:
                values.append(v)
                v += step
            labels = [f"{v:.4g}" for v in values]
        out = []
        for v, label in zip(values, labels):
            if axis == 0:
                x = tx(v)
                out.append(f'<line x1="{x:.2f}" y1="{at}" x2="{x:.2f}" y2="{at - 5}" stroke="black"/>')
                out.append(f'<text x="{x:.2f}" y="{at + 15}" text-anchor="middle">{label}</text>')
            else:
                y = ty(v)
                out.append(f'<line x1="{at}" y1="{y:.2f}" x2="{at + 5}" y2="{y:.2f}" stroke="black"/>')
                out.append(f'<text x="{at - 6}" y="{y + 4:.2f}" text-anchor="end">{label}</text>')
        return out

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.render())


def _nice_step(raw):
    if raw <= 0:
        return 1.0
    exp = math.floor(math.log10(raw))
    frac = raw / 10 ** exp
    for nice in (1, 2, 5, 10):
        if frac <= nice:
            return nice * 10 ** exp
    return 10 ** (exp + 1)
