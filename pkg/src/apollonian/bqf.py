"""Positive semidefinite binary quadratic forms attached to Descartes quadruples.

A BQF quadruple ``[n, A, B, C]`` pairs a curvature ``n`` with a form of
discriminant ``-4n^2``.  ``phi``/``theta`` translate between these and
n-quadruples; ``gl2_act`` is the right action ``Q(x, y) -> Q(ax+by, cx+dy)``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Sequence

from .descartes import Q_D, ApWord, Matrix, matmul, transpose

Mat2 = tuple[tuple[int, int], tuple[int, int]]

S: Mat2 = ((0, 1), (-1, 0))
T: Mat2 = ((1, 1), (0, 1))
U: Mat2 = ((1, 0), (0, -1))
I2: Mat2 = ((1, 0), (0, 1))

# theta[n, A, B, C] = S_THETA @ (n, A, B, C)
S_THETA: Matrix = (
    (1, 0, 0, 0),
    (-1, 1, 0, 0),
    (-1, 0, 0, 1),
    (-1, 1, -1, 1),
)
Q_THETA: Matrix = (
    (1, 0, 0, 0),
    (0, 0, 0, -2),
    (0, 0, 4, 0),
    (0, -2, 0, 0),
)

if matmul(matmul(S_THETA, Q_THETA), transpose(S_THETA)) != Q_D:  # pragma: no cover
    raise AssertionError("S_theta Q_theta S_theta^T != Q_D")


class BinaryQuadraticForm(NamedTuple):
    A: int
    B: int
    C: int

    @property
    def discriminant(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    def is_reduced(self) -> bool:
        return 0 <= self.B <= self.A <= self.C


class BQFQuadruple(NamedTuple):
    n: int
    A: int
    B: int
    C: int

    @property
    def form(self) -> BinaryQuadraticForm:
        return BinaryQuadraticForm(self.A, self.B, self.C)

    def is_valid(self) -> bool:
        return (
            any(self)
            and self.A >= 0
            and self.C >= 0
            and 4 * self.n ** 2 + self.B ** 2 - 4 * self.A * self.C == 0
        )


class CoefficientQuadruple(NamedTuple):
    t: int
    u: int
    v: int
    w: int

    def norm(self) -> int:
        """``t^2 + 4v^2 - 4uw``; equals 1 for every genuine depth-circle row."""
        return self.t ** 2 + 4 * self.v ** 2 - 4 * self.u * self.w


def phi(q: Sequence[int]) -> BQFQuadruple:
    n, a, b, c = q
    return BQFQuadruple(n, n + a, n + a + b - c, n + b)


def theta(Q: Sequence[int]) -> tuple[int, int, int, int]:
    n, A, B, C = Q
    return (n, A - n, C - n, A + C - B - n)


def det2(g: Mat2) -> int:
    return g[0][0] * g[1][1] - g[0][1] * g[1][0]


def mul2(g: Mat2, h: Mat2) -> Mat2:
    (a, b), (c, d) = g
    (e, f), (k, l) = h
    return ((a * e + b * k, a * f + b * l), (c * e + d * k, c * f + d * l))


def inv2(g: Mat2) -> Mat2:
    """Inverse in GL(2, Z)."""
    (a, b), (c, d) = g
    D = det2(g)
    if D not in (1, -1):
        raise ValueError(f"det {D} is not a unit")
    return ((d * D, -b * D), (-c * D, a * D))


def gl2_act(g: Mat2, Q: Sequence[int]) -> BQFQuadruple:
    (a, b), (c, d) = g
    if abs(det2(g)) != 1:
        raise ValueError(f"matrix {g} has determinant {det2(g)}, need +-1")
    n, A, B, C = Q
    return BQFQuadruple(
        n,
        A * a * a + B * a * c + C * c * c,
        2 * A * a * b + B * (a * d + b * c) + 2 * C * c * d,
        A * b * b + B * b * d + C * d * d,
    )


def reduce_form(Q: Sequence[int]) -> tuple[BQFQuadruple, Mat2]:
    """Reduce to the unique ``0 <= B <= A <= C`` representative.

    Returns the reduced quadruple and ``g`` with ``gl2_act(g, Q) == reduced``.
    """
    n, A, B, C = Q
    if n <= 0:
        raise ValueError("reduction is only defined for definite forms (n > 0)")
    if A <= 0 or C <= 0 or B * B - 4 * A * C != -4 * n * n:
        raise ValueError(f"{tuple(Q)} is not a BQF quadruple")
    g = I2
    while True:
        # translate B into (-A, A]
        k = (A - B) // (2 * A)
        if k:
            B, C = B + 2 * k * A, A * k * k + B * k + C
            g = mul2(g, ((1, k), (0, 1)))
        if A > C:
            A, B, C = C, -B, A
            g = mul2(g, S)
            continue
        break
    if B < 0:
        B = -B
        g = mul2(g, U)
    return BQFQuadruple(n, A, B, C), g


class PrincipalRoot(NamedTuple):
    """Principal root ``x + iy``; ``x is None`` marks the point at infinity."""

    x: Fraction | None
    y: Fraction | None

    @property
    def is_infinite(self) -> bool:
        return self.x is None


INFINITY = PrincipalRoot(None, None)


def principal_root(Q: Sequence[int]) -> PrincipalRoot:
    n, A, B, _ = Q
    if A == 0:
        return INFINITY
    return PrincipalRoot(Fraction(-B, 2 * A), Fraction(n, A))


def mobius(g: Mat2, z: PrincipalRoot) -> PrincipalRoot:
    """PGL(2, Z) action on P^1(C); determinant -1 acts on the conjugate."""
    (a, b), (c, d) = g
    D = det2(g)
    if z.is_infinite:
        return INFINITY if c == 0 else PrincipalRoot(Fraction(a, c), Fraction(0))
    x, y = z
    if D == -1:
        y = -y
    # (a z + b) / (c z + d) with z = x + iy
    den = (c * x + d) ** 2 + (c * y) ** 2
    if den == 0:
        return INFINITY
    re = ((a * x + b) * (c * x + d) + a * c * y * y) / den
    im = (a * d - b * c) * y / den
    return PrincipalRoot(re, im)


def theta_word_matrix(w: ApWord) -> Matrix:
    """``W * S_theta`` for a word ``W``."""
    return matmul(w.matrix(), S_THETA) if len(w) or w.perm else S_THETA


def coefficient_quadruple(w: ApWord, j: int | None = None) -> CoefficientQuadruple:
    """Coefficient quadruple ``(t, u, v, w)`` from row ``j`` of ``W S_theta``.

    ``j`` defaults to the leading letter of ``w``; it is required for the
    identity word, where it selects the depth-zero circle ``Id_j``.
    """
    if j is None:
        if not w.letters:
            raise ValueError("the identity word needs an explicit row index")
        j = w.letters[0]
    row = theta_word_matrix(w)[j - 1]
    return CoefficientQuadruple(-row[0], row[1], row[2], row[3])


def row_value(c: CoefficientQuadruple, Q: Sequence[int]) -> int:
    """Curvature ``-t n + u A + v B + w C`` of the circle the row describes."""
    n, A, B, C = Q
    return -c.t * n + c.u * A + c.v * B + c.w * C

