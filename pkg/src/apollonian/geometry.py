"""Scenes of circles and lines, exported as SVG 1.1 or CSV.

Packings are placed with the complex Descartes recursion: for each circle
the product ``k * z`` of curvature and centre obeys the same Vieta move as
``k``.  The seed is fixed canonically (outer circle centred at 0, the next
circle on the positive real axis, the third above the axis), so all
centres of an integral packing come out as exact rationals.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence, Union

from .bqf import CoefficientQuadruple
from .depth import reduce_to_root
from .descartes import is_descartes
from .staircase import DepthCircle, epsilon_circle, stair_width, strip_circle_bfs

Num = Union[Fraction, float]


@dataclass(frozen=True)
class SceneCircle:
    x: Num
    y: Num
    r: Num
    kind: str = "circle"
    label: str = ""


@dataclass(frozen=True)
class SceneLine:
    """Horizontal line ``y = const``; clipped to the viewport when drawn."""

    y: Num
    kind: str = "line"
    label: str = ""


@dataclass
class Scene:
    circles: list[SceneCircle] = field(default_factory=list)
    lines: list[SceneLine] = field(default_factory=list)
    viewport: tuple[Num, Num, Num, Num] | None = None  # xmin, ymin, xmax, ymax

    def bounds(self) -> tuple[Num, Num, Num, Num]:
        if self.viewport is not None:
            return self.viewport
        if not self.circles:
            ys = [ln.y for ln in self.lines] or [0]
            return -1, min(ys) - 1, 1, max(ys) + 1
        xmin = min(c.x - c.r for c in self.circles)
        xmax = max(c.x + c.r for c in self.circles)
        ys = [ln.y for ln in self.lines]
        ymin = min([c.y - c.r for c in self.circles] + ys)
        ymax = max([c.y + c.r for c in self.circles] + ys)
        pad = max(xmax - xmin, ymax - ymin) / 20 or 1
        return xmin - pad, ymin - pad, xmax + pad, ymax + pad

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["kind", "x", "y", "r", "label"])
        for ln in self.lines:
            wr.writerow([ln.kind, "", _num(ln.y), "", ln.label])
        for c in self.circles:
            wr.writerow([c.kind, _num(c.x), _num(c.y), _num(c.r), c.label])
        return buf.getvalue()

    def to_svg(self, size: int = 800, label_px: float = 12.0) -> str:
        """Deterministic SVG; labels only on circles wider than ``label_px`` pixels."""
        xmin, ymin, xmax, ymax = (float(v) for v in self.bounds())
        scale = size / max(xmax - xmin, ymax - ymin)
        width, height = (xmax - xmin) * scale, (ymax - ymin) * scale

        def px(x, y):
            return (float(x) - xmin) * scale, (ymax - float(y)) * scale

        out = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.3f}" height="{height:.3f}" '
            f'viewBox="0 0 {width:.3f} {height:.3f}">',
            "<style>.line{stroke:#444}.circle{stroke:#000;fill:none}.depth0{stroke:#b00;fill:none}"
            ".epsilon{stroke:#06c;fill:none}.marker{fill:#06c}.outer{stroke:#000;fill:none}"
            "text{font-family:sans-serif;text-anchor:middle;dominant-baseline:middle}</style>",
        ]
        for ln in self.lines:
            _, y = px(0, ln.y)
            out.append(f'<line class="{ln.kind}" x1="0.000" y1="{y:.3f}" x2="{width:.3f}" y2="{y:.3f}" stroke-width="1"/>')
        for c in self.circles:
            cx, cy = px(c.x, c.y)
            r = float(c.r) * scale
            if c.kind == "marker":
                out.append(f'<circle class="marker" cx="{cx:.3f}" cy="{cy:.3f}" r="2.000"/>')
                continue
            out.append(f'<circle class="{c.kind}" cx="{cx:.3f}" cy="{cy:.3f}" r="{r:.3f}" stroke-width="1"/>')
            if c.label and r > label_px:
                fs = min(r / 2, 24.0)
                out.append(f'<text x="{cx:.3f}" y="{cy:.3f}" font-size="{fs:.2f}">{c.label}</text>')
        out.append("</svg>")
        return "\n".join(out) + "\n"


def _num(v: Num) -> str:
    return str(v) if isinstance(v, Fraction) else repr(float(v))


def _depth_scene_item(dc: DepthCircle):
    t, _, v, w = dc.coeffs
    if w == 0:
        return SceneLine(Fraction(0) if t < 0 else Fraction(1), "line", dc.label)
    x, y = dc.center
    return SceneCircle(x, y, dc.radius, "depth0" if not dc.word else "circle", dc.label)


def render_depth_circles(max_depth: int) -> Scene:
    """Every depth circle with a word of length ``<= max_depth``, labelled."""
    if max_depth < 0:
        raise ValueError("max_depth must be >= 0")
    far = Fraction(10 ** 9)
    found = strip_circle_bfs(10 ** 30, (-far, far, -far), max_length=max_depth)
    scene = Scene()
    for dc in found:
        item = _depth_scene_item(dc)
        (scene.lines if isinstance(item, SceneLine) else scene.circles).append(item)
    return scene


def _exact_sqrt(x: Fraction) -> Fraction:
    num, den = x.numerator, x.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise ValueError(f"{x} is not a rational square")
    return Fraction(rn, rd)


def _third_centre(z1, r1, z2, r2, d13, d23):
    """Points at distance d13 from z1 and d23 from z2 (z1, z2 on the real axis)."""
    base = z2[0] - z1[0]
    x = (d13 * d13 - d23 * d23 + base * base) / (2 * base)
    y = _exact_sqrt(d13 * d13 - x * x)
    return (z1[0] + x, y), (z1[0] + x, -y)


def _dist2(a, b) -> Fraction:
    return (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2


def _seed(root: Sequence[int]):
    """Exact centres for the root quadruple, outer circle first."""
    k = list(root)
    R = [Fraction(1, abs(x)) for x in k]
    z0 = (Fraction(0), Fraction(0))
    z1 = (R[0] - R[1], Fraction(0))
    z2 = _third_centre(z0, R[0], z1, R[1], R[0] - R[2], R[1] + R[2])[0]
    for z3 in _third_centre(z0, R[0], z1, R[1], R[0] - R[3], R[1] + R[3]):
        if _dist2(z3, z2) == (R[2] + R[3]) ** 2:
            return [z0, z1, z2, z3]
    raise AssertionError(f"no consistent placement for {root}")


def packing_circles(q: Sequence[int], max_curvature: int) -> list[tuple[int, Fraction, Fraction]]:
    """``(curvature, x, y)`` for every circle of curvature ``<= max_curvature``."""
    q = tuple(int(x) for x in q)
    if not is_descartes(q):
        raise ValueError(f"{q} is not a Descartes quadruple")
    red = reduce_to_root(q)
    if red.mc <= 0:
        raise ValueError(f"{q} generates an unbounded packing (strip or half-plane)")
    root = sorted(red.root)
    centres = _seed(root)
    wk = [(k * z[0], k * z[1]) for k, z in zip(root, centres)]
    out = [(k, z[0], z[1]) for k, z in zip(root, centres) if k <= max_curvature or k < 0]
    stack = [(tuple(root), tuple(wk), 0)]
    while stack:
        ks, ws, last = stack.pop()
        for i in range(4):
            if i + 1 == last:
                continue
            k_new = 2 * (sum(ks) - ks[i]) - ks[i]
            if k_new > max_curvature:
                continue
            wx = 2 * (sum(w[0] for w in ws) - ws[i][0]) - ws[i][0]
            wy = 2 * (sum(w[1] for w in ws) - ws[i][1]) - ws[i][1]
            out.append((k_new, wx / k_new, wy / k_new))
            stack.append((ks[:i] + (k_new,) + ks[i + 1 :], ws[:i] + ((wx, wy),) + ws[i + 1 :], i + 1))
    out.sort(key=lambda c: (c[0], c[1], c[2]))
    return out


def render_packing(q: Sequence[int], max_curvature: int) -> Scene:
    scene = Scene()
    for k, x, y in packing_circles(q, max_curvature):
        scene.circles.append(SceneCircle(x, y, Fraction(1, abs(k)), "outer" if k < 0 else "circle", str(k)))
    return scene


def render_epsilon_circles(c: Sequence[int], eps_list: Iterable[float]) -> Scene:
    """``D_W`` plus one circle per ``eps`` (largest first) and its centre marker."""
    c = CoefficientQuadruple(*c)
    dc = DepthCircle(c)
    x, y = dc.center
    scene = Scene(circles=[SceneCircle(x, y, dc.radius, "circle", "D")])
    for eps in sorted(eps_list, reverse=True):
        ex, ey, er = epsilon_circle(c, eps)
        scene.circles.append(SceneCircle(ex, ey, er, "epsilon", f"eps={eps:g}"))
        scene.circles.append(SceneCircle(ex, ey, 0.0, "marker", ""))
    return scene


def max_epsilon(c: Sequence[int]) -> float:
    return stair_width(c[0])
