"""Greedy reduction of integral quadruples: MC, depth, depth element, height.

The walk repeatedly swaps the largest curvature for its Vieta partner while
that strictly decreases it.  The first non-positive curvature that appears
is the outer circle of the packing, so ``mc`` is read off there; the walk
then continues to the root quadruple.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import NamedTuple, Sequence

from .bqf import BinaryQuadraticForm, CoefficientQuadruple, coefficient_quadruple, theta
from .classes import enumerate_classes_fast
from .descartes import ApWord, apply_move, is_descartes


class ReductionError(RuntimeError):
    pass


class DepthElement(NamedTuple):
    """Either a non-empty word (``j`` = its leading letter) or ``Id_j`` (empty word)."""

    word: tuple[int, ...]
    j: int

    @classmethod
    def identity(cls, j: int) -> "DepthElement":
        return cls((), j)

    @property
    def is_identity(self) -> bool:
        return not self.word

    def __str__(self):
        if self.is_identity:
            return f"Id{self.j}"
        return "".join(f"S{i}" for i in self.word)

    def coefficients(self) -> CoefficientQuadruple:
        return coefficient_quadruple(ApWord(self.word), self.j)


class Reduction(NamedTuple):
    root: tuple[int, int, int, int]
    moves: tuple[int, ...]  # in the order they were applied
    depth: int
    mc: int


def iteration_cap(q: Sequence[int]) -> int:
    # Along a chain of circles squeezed between two fixed circles the
    # curvature grows only like k^2, so a walk can take about sqrt(max)
    # moves; the walk itself always terminates since max(q) strictly drops.
    m = max(abs(x) for x in q)
    return 64 + m.bit_length() ** 2 + 2 * isqrt(m)


def reduce_to_root(q: Sequence[int]) -> Reduction:
    """Greedy walk to the root quadruple.

    ``depth`` counts moves until the first non-positive entry appears.
    Ties for the maximum act on the lowest index.
    """
    q = tuple(q)
    if not is_descartes(q):
        raise ValueError(f"{q} does not satisfy the Descartes equation")
    cap = iteration_cap(q)
    moves: list[int] = []
    depth = 0 if min(q) <= 0 else None
    for _ in range(cap):
        big = max(q)
        i = q.index(big) + 1
        nq = apply_move(q, i)
        if nq[i - 1] >= big:
            break
        q = nq
        moves.append(i)
        if depth is None and q[i - 1] <= 0:
            depth = len(moves)
    else:
        raise ReductionError(f"no root reached within {cap} moves")
    if depth is None:
        raise ReductionError(f"root {q} has no non-positive curvature (not integral?)")
    return Reduction(q, tuple(moves), depth, max(0, -min(q)))


def depth_elements(q: Sequence[int], red: Reduction | None = None) -> tuple[DepthElement, ...]:
    red = red or reduce_to_root(q)
    if red.depth == 0:
        return tuple(DepthElement.identity(j + 1) for j, x in enumerate(q) if x <= 0)
    word = tuple(reversed(red.moves[: red.depth]))
    return (DepthElement(word, word[0]),)


@dataclass(frozen=True)
class HeightRecord:
    class_form: BinaryQuadraticForm
    quadruple: tuple[int, int, int, int]
    root: tuple[int, int, int, int]
    mc: int
    depth: int
    depth_elements: tuple[DepthElement, ...]
    height: Fraction

    @property
    def bottom(self) -> bool:
        """Tangent to the outer circle, i.e. ``Id2`` is among the depth elements."""
        return DepthElement.identity(2) in self.depth_elements


def height_record(n: int, form: Sequence[int]) -> HeightRecord:
    form = BinaryQuadraticForm(*form)
    q = theta((n, *form))
    red = reduce_to_root(q)
    return HeightRecord(
        class_form=form,
        quadruple=q,
        root=red.root,
        mc=red.mc,
        depth=red.depth,
        depth_elements=depth_elements(q, red),
        height=Fraction(red.mc, n),
    )


def _records_chunk(n: int, forms) -> list[HeightRecord]:
    return [height_record(n, f) for f in forms]


def rmc(n: int, workers: int = 1, chunks: int | None = None) -> list[HeightRecord]:
    """One ``HeightRecord`` per class of ID(n), in class-list order."""
    forms = enumerate_classes_fast(n, chunks=chunks or workers, workers=workers).forms
    if workers <= 1:
        return _records_chunk(n, forms)
    from concurrent.futures import ProcessPoolExecutor

    k = chunks or workers
    parts = [forms[len(forms) * i // k : len(forms) * (i + 1) // k] for i in range(k)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        out = ex.map(_records_chunk, [n] * k, parts)
        return [r for part in out for r in part]


def heights(records: Sequence[HeightRecord]) -> list[Fraction]:
    return [r.height for r in records]


def histogram(values: Sequence[Fraction | float], bins: int) -> list[tuple[Fraction, Fraction, int]]:
    """Counts of values in ``[k/bins, (k+1)/bins)``; the value 1 lands in the last bin."""
    if bins < 1:
        raise ValueError("bins must be >= 1")
    counts = Counter()
    for v in values:
        k = int(Fraction(v) * bins) if isinstance(v, Fraction) else int(v * bins)
        counts[min(max(k, 0), bins - 1)] += 1
    return [(Fraction(k, bins), Fraction(k + 1, bins), counts[k]) for k in range(bins)]


def weighted_histogram(points: dict[Fraction, int], bins: int) -> list[tuple[Fraction, Fraction, int]]:
    """Histogram of a multiset given as ``{value: multiplicity}``."""
    counts = Counter()
    for v, m in points.items():
        counts[min(int(v * bins), bins - 1)] += m
    return [(Fraction(k, bins), Fraction(k + 1, bins), counts[k]) for k in range(bins)]
