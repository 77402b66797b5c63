"""Depth circles of the scaled strip packing and the staircase they induce.

Depth circles are generated breadth-first from the four rows of ``S_theta``.
Each child replaces one row ``i`` by ``2 * (sum of the others) - row_i``,
exactly as ``S_i`` acts on the left.  A new circle sits in the gap bounded
by the other three rows, and all of its descendants stay in that gap, so a
whole subtree can be dropped once its gap misses the region of interest or
its circle is already smaller than requested.
"""
from __future__ import annotations

import csv
import io
import math
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .bqf import S_THETA, CoefficientQuadruple

BOTTOM_MASS = 3 / math.pi
# Just below sqrt(3)/2, the lowest point of the fundamental domain.
F_YMIN = Fraction(43, 50)


class StairKind(Enum):
    BOTTOM = "bottom"
    SIXTH = "sixth"
    HALF = "half"
    FULL = "full"
    NULL = "null"


WEIGHTS = {StairKind.SIXTH: 2, StairKind.HALF: 6, StairKind.FULL: 12}


@dataclass(frozen=True)
class DepthCircle:
    coeffs: CoefficientQuadruple
    word: tuple[int, ...] = ()
    j: int = 0

    @property
    def is_halfplane(self) -> bool:
        return self.coeffs.w == 0

    @property
    def center(self) -> tuple[Fraction, Fraction]:
        t, _, v, w = self.coeffs
        return Fraction(v, w), Fraction(t, 2 * w)

    @property
    def radius(self) -> Fraction:
        return Fraction(1, 2 * self.coeffs.w)

    @property
    def label(self) -> str:
        if not self.word:
            return f"Id{self.j}"
        return "".join(f"S{i}" for i in self.word)


def _coeffs(row: Sequence[int]) -> CoefficientQuadruple:
    return CoefficientQuadruple(-row[0], row[1], row[2], row[3])


def _line_y(c: CoefficientQuadruple) -> int:
    """The two half-planes are y <= 0 (t = -1) and y >= 1 (t = 1)."""
    return 0 if c.t < 0 else 1


def _tangency(c1: CoefficientQuadruple, c2: CoefficientQuadruple):
    """Tangency point of two touching depth circles; None when both are lines."""
    if c1.w == 0 and c2.w == 0:
        return None
    if c1.w == 0:
        c1, c2 = c2, c1
    x1, y1 = Fraction(c1.v, c1.w), Fraction(c1.t, 2 * c1.w)
    if c2.w == 0:
        return x1, Fraction(_line_y(c2))
    x2, y2 = Fraction(c2.v, c2.w), Fraction(c2.t, 2 * c2.w)
    # p = c1 + (c2 - c1) * r1 / (r1 + r2), with r = 1/(2w)
    s = Fraction(c2.w, c1.w + c2.w)
    return x1 + (x2 - x1) * s, y1 + (y2 - y1) * s


def gap_box(rows: Sequence[CoefficientQuadruple], i: int):
    """Bounding box ``(xlo, xhi, ylo, yhi)`` of the gap holding row ``i``.

    The gap is the curvilinear triangle cut out by the other three rows; it
    lies inside the straight triangle on its three vertices.  ``None`` marks
    an unbounded side.
    """
    others = [rows[k] for k in range(4) if k != i]
    pts = [_tangency(a, b) for a, b in ((others[0], others[1]), (others[0], others[2]), (others[1], others[2]))]
    finite = [p for p in pts if p is not None]
    xs = [p[0] for p in finite]
    ys = [p[1] for p in finite]
    if len(finite) == 3:
        return min(xs), max(xs), min(ys), max(ys)
    # two lines and one circle b; the gap runs off to infinity on the side of rows[i]
    b = next(c for c in others if c.w != 0)
    bx = Fraction(b.v, b.w)
    cx = Fraction(rows[i].v, rows[i].w)
    if cx < bx:
        return None, bx, Fraction(0), Fraction(1)
    return bx, None, Fraction(0), Fraction(1)


def _box_meets(box, window) -> bool:
    xlo, xhi, ylo, yhi = box
    wxlo, wxhi, wylo = window
    if xhi is not None and xhi < wxlo:
        return False
    if xlo is not None and xlo > wxhi:
        return False
    return yhi >= wylo


def strip_circle_bfs(
    w_max: int,
    window: tuple[Fraction, Fraction, Fraction] = (Fraction(-1), Fraction(1), Fraction(0)),
    max_length: int | None = None,
    t_max: int | None = None,
) -> list[DepthCircle]:
    """Depth circles with ``w <= w_max`` whose gaps meet ``window``.

    ``window = (xlo, xhi, ylo)`` is the box ``xlo <= x <= xhi, y >= ylo``.
    The result is complete for circles of that size meeting the window,
    includes the four depth-zero circles, and is ordered by ``(t, v, w)``.
    ``max_length`` caps the word length; ``t_max`` filters the output only.
    """
    root = [_coeffs(r) for r in S_THETA]
    out = {c: DepthCircle(c, (), j + 1) for j, c in enumerate(root)}
    queue = deque([(tuple(root), (), 0)])
    while queue:
        rows, word, last = queue.popleft()
        if max_length is not None and len(word) >= max_length:
            continue
        for i in range(1, 5):
            if i == last:
                continue
            k = i - 1
            new = CoefficientQuadruple(*(
                2 * sum(rows[m][f] for m in range(4) if m != k) - rows[k][f] for f in range(4)
            ))
            if new.w <= 0:
                raise AssertionError(f"non-circle row {new} from word {(i,) + word}")
            if new.w > w_max:
                continue
            child = rows[:k] + (new,) + rows[k + 1 :]
            if not _box_meets(gap_box(child, k), window):
                continue
            cword = (i,) + word
            if new in out:
                raise AssertionError(f"circle {new} generated twice ({out[new].label}, {cword})")
            out[new] = DepthCircle(new, cword, i)
            queue.append((child, cword, i))
    circles = out.values()
    if t_max is not None:
        circles = [c for c in circles if c.coeffs.t <= t_max]
    return sorted(circles, key=lambda c: (c.coeffs.t, c.coeffs.v, c.coeffs.w))


def classify_stair(c: DepthCircle | CoefficientQuadruple) -> StairKind:
    t, u, v, w = c.coeffs if isinstance(c, DepthCircle) else c
    if (t, u, v, w) == (1, 1, 0, 0):
        return StairKind.BOTTOM
    if w <= 0:
        return StairKind.NULL
    if (t, u, v, w) == (7, 4, -2, 4):
        return StairKind.SIXTH
    if v <= -3 and u == w == v * v and t == 2 * w - 1:
        return StairKind.HALF
    # exact versions of: x0 - r >= -1/2, x0 + r <= 0, |centre| >= 1 + r, y0 + r <= 1
    if 2 * v - 1 + w >= 0 and 2 * v + 1 <= 0 and 4 * v * v + t * t >= (2 * w + 1) ** 2 and t + 1 <= 2 * w:
        return StairKind.FULL
    return StairKind.NULL


def stair_width(t: int) -> float:
    """``t - sqrt(t^2 - 1)``, evaluated without cancellation."""
    return 1.0 / (t + math.sqrt(t * t - 1))


def stair_mass(t: int, weight: int) -> float:
    """``weight * (t / sqrt(t^2 - 1) - 1)``."""
    s = math.sqrt(t * t - 1)
    return weight * (1.0 / (s * (t + s)))


@dataclass
class Stair:
    t: int
    kind: StairKind
    words: list[str] = field(default_factory=list)

    @property
    def weight(self) -> int | None:
        return WEIGHTS.get(self.kind)

    @property
    def multiplicity(self) -> int:
        return len(self.words)

    @property
    def width(self) -> float:
        return 1.0 if self.kind is StairKind.BOTTOM else stair_width(self.t)

    @property
    def mass(self) -> float:
        if self.kind is StairKind.BOTTOM:
            return BOTTOM_MASS
        return self.multiplicity * stair_mass(self.t, self.weight)

    @property
    def height(self) -> float:
        if self.kind is StairKind.BOTTOM:
            return BOTTOM_MASS
        return self.multiplicity * self.weight / math.sqrt(self.t * self.t - 1)


@dataclass
class StaircaseModel:
    t_max: int
    stairs: list[Stair]

    @property
    def mass(self) -> float:
        return math.fsum(s.mass for s in self.stairs)

    def density(self, x: float) -> float:
        if x <= 0 or x > 1:
            return 0.0
        return math.fsum(s.height for s in self.stairs if s.width >= x)

    def cdf(self, x: float) -> float:
        x = min(max(x, 0.0), 1.0)
        return math.fsum(s.mass * min(x, s.width) / s.width for s in self.stairs)

    def bin_masses(self, bins: int) -> list[float]:
        edges = [self.cdf(k / bins) for k in range(bins + 1)]
        return [b - a for a, b in zip(edges, edges[1:])]

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["word", "t", "width", "height", "d_W"])
        for s in self.stairs:
            wr.writerow([";".join(s.words), s.t, f"{s.width:.10f}", f"{s.height:.10f}", f"{s.mass:.10f}"])
        return buf.getvalue()


def fundamental_domain_circles(t_max: int) -> list[DepthCircle]:
    """Depth circles with ``t <= t_max`` that can meet the fundamental domain."""
    # meeting y >= sqrt(3)/2 needs (t + 1) / (2w) >= sqrt(3)/2, i.e. 3w^2 <= (t + 1)^2
    w_max = math.isqrt((t_max + 1) ** 2 // 3)
    window = (Fraction(-1, 2), Fraction(0), F_YMIN)
    return strip_circle_bfs(max(w_max, 1), window, t_max=t_max)


def build_staircase(t_max: int) -> StaircaseModel:
    if t_max < 1:
        raise ValueError("t_max must be >= 1")
    groups: dict[tuple[int, StairKind], Stair] = {}
    for c in fundamental_domain_circles(t_max):
        kind = classify_stair(c)
        if kind is StairKind.NULL:
            continue
        groups.setdefault((c.coeffs.t, kind), Stair(c.coeffs.t, kind)).words.append(c.label)
    stairs = sorted(groups.values(), key=lambda s: (s.t, -(s.weight or 0)))
    return StaircaseModel(t_max, stairs)


def wk_word(k: int) -> tuple[int, ...]:
    """``W_k``: S1, then alternately S4 and S1 multiplied on the left."""
    return tuple(1 if (k - 1 - m) % 2 == 0 else 4 for m in range(k))


def wk_data(k: int) -> tuple[CoefficientQuadruple, tuple[Fraction, Fraction]]:
    """Closed-form coefficient quadruple of ``W_k`` and its tangency point with ``W_{k+1}``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    m = k + 1
    coeffs = CoefficientQuadruple(2 * m * m - 1, m * m, -m, m * m)
    den = 2 * k * k + 6 * k + 5
    return coeffs, (Fraction(-(2 * k + 3), den), Fraction(2 * k * k + 6 * k + 4, den))


def epsilon_circle(c: CoefficientQuadruple, eps: float) -> tuple[float, float, float]:
    """Centre and radius of the set where the height is at least ``width - eps``."""
    t, _, v, w = c
    if t <= 1 or w <= 0:
        raise ValueError("epsilon circles need t > 1")
    s = math.sqrt(t * t - 1)
    if eps < 0 or eps > stair_width(t) * (1 + 1e-12):
        raise ValueError(f"eps={eps} outside [0, {stair_width(t)}]")
    r2 = (eps * eps + 2 * eps * s) / (4 * w * w)
    return v / w, (s + eps) / (2 * w), math.sqrt(r2)


def summarize(circles: Iterable[DepthCircle]) -> dict[StairKind, int]:
    out = {k: 0 for k in StairKind}
    for c in circles:
        out[classify_stair(c)] += 1
    return out
