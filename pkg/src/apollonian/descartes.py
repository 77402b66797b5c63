"""Integer Descartes quadruples and the Apollonian group action.

Quadruples are plain 4-tuples of Python ints and are always ordered; nothing
here sorts implicitly.  Words follow matrix notation: ``ApWord((4, 1))`` is
the product S4*S1, so S1 acts first and S4 last.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Sequence

Quad = tuple[int, int, int, int]
Matrix = tuple[tuple[int, ...], ...]

IDENTITY4: Matrix = tuple(tuple(int(i == j) for j in range(4)) for i in range(4))

# Gram matrix of the Descartes form: W^T Q_D W = Q_D for every W in the group.
Q_D: Matrix = tuple(tuple(1 if i == j else -1 for j in range(4)) for i in range(4))


def matmul(x: Matrix, y: Matrix) -> Matrix:
    cols = list(zip(*y))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in x)


def transpose(x: Matrix) -> Matrix:
    return tuple(zip(*x))


def move_matrix(i: int) -> Matrix:
    """Matrix of the move S_i (1-based)."""
    rows = [list(r) for r in IDENTITY4]
    rows[i - 1] = [2] * 4
    rows[i - 1][i - 1] = -1
    return tuple(tuple(r) for r in rows)


def perm_matrix(perm: Sequence[int]) -> Matrix:
    """Matrix of ``q -> (q[perm[0]-1], ..., q[perm[3]-1])``."""
    return tuple(tuple(int(perm[i] - 1 == j) for j in range(4)) for i in range(4))


def transposition(i: int, j: int) -> tuple[int, int, int, int]:
    p = [1, 2, 3, 4]
    p[i - 1], p[j - 1] = p[j - 1], p[i - 1]
    return tuple(p)


@dataclass(frozen=True)
class ApWord:
    """A reduced word in S1..S4, optionally preceded by a permutation.

    ``letters[0]`` is the leftmost letter (applied last).  The full element
    is ``P_perm * S_letters[0] * ... * S_letters[-1]``.
    """

    letters: tuple[int, ...] = ()
    perm: tuple[int, int, int, int] | None = None

    def __post_init__(self):
        for a, b in zip(self.letters, self.letters[1:]):
            if a == b:
                raise ValueError(f"word {self.letters} is not reduced")
        if any(i not in (1, 2, 3, 4) for i in self.letters):
            raise ValueError(f"letters must lie in 1..4, got {self.letters}")
        if self.perm is not None and sorted(self.perm) != [1, 2, 3, 4]:
            raise ValueError(f"{self.perm} is not a permutation of 1..4")

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        body = "".join(f"S{i}" for i in self.letters) or "Id"
        if self.perm is not None:
            body = "P" + "".join(map(str, self.perm)) + body
        return body

    def matrix(self) -> Matrix:
        m = reduce(matmul, (move_matrix(i) for i in self.letters), IDENTITY4)
        if self.perm is not None:
            m = matmul(perm_matrix(self.perm), m)
        return m

    @classmethod
    def parse(cls, text: str) -> "ApWord":
        """Parse ``"S4S1"`` style strings (``"Id"`` or ``""`` for the identity)."""
        text = text.strip()
        if text in ("", "Id"):
            return cls()
        parts = text.split("S")
        if parts[0] != "":
            raise ValueError(f"cannot parse word {text!r}")
        return cls(tuple(int(p) for p in parts[1:]))


def is_descartes(q: Sequence[int]) -> bool:
    a, b, c, d = q
    return (a + b + c + d) ** 2 == 2 * (a * a + b * b + c * c + d * d)


def apply_move(q: Sequence[int], i: int) -> Quad:
    """Replace entry ``i`` (1-based) by its Vieta partner."""
    q = list(q)
    k = i - 1
    q[k] = 2 * (sum(q) - q[k]) - q[k]
    return tuple(q)


def apply_perm(q: Sequence[int], perm: Sequence[int]) -> Quad:
    return tuple(q[p - 1] for p in perm)


def apply_word(q: Sequence[int], w: ApWord) -> Quad:
    """Return ``w * q``: the rightmost letter acts first, the permutation last."""
    q = tuple(q)
    for i in reversed(w.letters):
        q = apply_move(q, i)
    if w.perm is not None:
        q = apply_perm(q, w.perm)
    return q


def is_primitive(q: Sequence[int]) -> bool:
    return reduce(gcd, q) == 1

