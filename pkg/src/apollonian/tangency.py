"""Tangency numbers T(c1, c2), local factors s_p, RMC_0 and spike prediction.

``T(c1, c2)`` counts ``0 <= x <= A/2`` (``A = c1 + c2``) with ``A | x^2 + c1^2``
and ``gcd(A, 2x, (x^2 + c1^2)/A) = 1``.  The solution set mod A is closed
under ``x -> -x``, so ``T = (N + z) / 2`` where ``N`` is the number of
residues and ``z`` counts the self-paired ones (``x = 0`` and ``x = A/2``).
``N`` factors over the prime powers of ``A``; each factor is found by Hensel
lifting.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod

import numpy as np

from .factor import factor_with_spf, factorint, spf_sieve, sqrt_mod_prime_power


def _valuation(m: int, p: int) -> int:
    if m == 0:
        return 10 ** 9
    f = 0
    while m % p == 0:
        m //= p
        f += 1
    return f


def _check_a(c1: int, c2: int) -> int:
    A = c1 + c2
    if A <= 0:
        raise ValueError(f"need c1 + c2 > 0, got {c1} + {c2}")
    return A


def _admissible(A: int, x: int, c1: int) -> bool:
    num = x * x + c1 * c1
    return num % A == 0 and gcd(gcd(A, 2 * x), num // A) == 1


def tangency_bruteforce(c1: int, c2: int) -> int:
    A = _check_a(c1, c2)
    return sum(1 for x in range(A // 2 + 1) if _admissible(A, x, c1))


def sp_bruteforce(p: int, e: int, c1: int) -> int:
    """Direct count of ``x mod p^e`` with ``x^2 = -c1^2`` and ``p`` not dividing
    ``gcd(x, (x^2 + c1^2)/p^e)``."""
    pe = p ** e
    if pe < 2 ** 31 and c1 * c1 < 2 ** 62 - pe * pe:
        # only x with x^2 = -c1^2 mod p can qualify; scan those residue classes
        total = 0
        for r in range(p):
            if (r * r + c1 * c1) % p:
                continue
            x = np.arange(r, pe, p, dtype=np.int64)
            num = x * x + c1 * c1
            hit = num % pe == 0
            total += int(np.count_nonzero(hit & ~((x % p == 0) & ((num // pe) % p == 0))))
        return total
    total = 0
    for x in range(pe):
        num = x * x + c1 * c1
        if num % pe == 0 and not (x % p == 0 and (num // pe) % p == 0):
            total += 1
    return total


def sp_hensel(p: int, e: int, c1: int) -> int:
    """Same count as ``sp_bruteforce`` from the Hensel-lifted roots."""
    pe1 = p ** (e + 1)
    roots = sqrt_mod_prime_power(-c1 * c1, p, e)
    return sum(1 for x in roots if not (x % p == 0 and (x * x + c1 * c1) % pe1 == 0))


def sp_closed_form(p: int, e: int, c1: int) -> int:
    if e < 1:
        raise ValueError("e must be >= 1")
    f = _valuation(c1, p)
    if p == 2:
        if e >= 2 * f + 2:
            return 0
        if e == 2 * f + 1:
            return 2 ** f
        return 2 ** (e // 2 - 1) if e % 2 == 0 else 0
    if e >= 2 * f + 1:
        if p % 4 == 1:
            return 2 * (p - 1) * p ** (f - 1) if f > 0 else 2
        return 0
    if e == 2 * f:
        return (p - 2) * p ** (f - 1) if p % 4 == 1 else p ** f
    return (p - 1) * p ** (e // 2 - 1) if e % 2 == 0 else 0


def _factor_a(A: int, spf: np.ndarray | None, budget: int | None) -> dict[int, int]:
    if spf is not None and A < len(spf):
        return factor_with_spf(A, spf)
    return factorint(A, budget) if A > 1 else {}


def tangency_number(c1: int, c2: int, spf: np.ndarray | None = None, budget: int | None = None) -> int:
    """Exact ``T(c1, c2)`` from the factorization of ``A = c1 + c2``."""
    A = _check_a(c1, c2)
    fac = _factor_a(A, spf, budget)
    N = prod(sp_hensel(p, e, c1) for p, e in fac.items())
    z = int(_admissible(A, 0, c1))
    if A % 2 == 0:
        z += _admissible(A, A // 2, c1)
    return (N + z) // 2


def tangency_estimate(c1: int, c2: int, spf: np.ndarray | None = None, budget: int | None = None) -> Fraction:
    """``(1/2) * prod s_p`` over ``p^e || c1 + c2``, using the closed forms."""
    A = _check_a(c1, c2)
    fac = _factor_a(A, spf, budget)
    return Fraction(prod(sp_closed_form(p, e, c1) for p, e in fac.items()), 2)


def rmc0(n: int, spf: np.ndarray | None = None) -> list[int]:
    """``mult[c] = T(n, -c)`` for ``0 <= c < n``: the bottom-stair multiset."""
    if n < 1:
        raise ValueError("n must be >= 1")
    spf = spf if spf is not None and len(spf) > n else spf_sieve(n)
    return [tangency_number(n, -c, spf) for c in range(n)]


def rmc0_points(mult: list[int]) -> dict[Fraction, int]:
    n = len(mult)
    return {Fraction(c, n): m for c, m in enumerate(mult) if m}


@dataclass(frozen=True)
class SpikeRow:
    p: int
    e: int
    f: int

    @property
    def modulus(self) -> int:
        return self.p ** self.e

    @property
    def magnitude(self) -> float:
        return self.p ** min(self.e / 2, self.f)


@dataclass
class SpikeReport:
    n: int
    rows: list[SpikeRow] = field(default_factory=list)

    @property
    def primes(self) -> list[int]:
        return sorted({r.p for r in self.rows})

    def positions(self, p: int) -> list[int]:
        """All ``c`` in ``[0, n)`` with ``p^2 | n - c``."""
        m = p * p
        return list(range(self.n % m, self.n, m))

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["p", "e", "f", "positions_modulus", "magnitude_class"])
        for r in self.rows:
            wr.writerow([r.p, r.e, r.f, r.modulus, f"{r.magnitude:.6g}"])
        return buf.getvalue()


def predict_spikes(n: int, budget: int | None = None) -> SpikeReport:
    """Spike families: one row per prime ``p <= sqrt(n)`` dividing ``n`` and
    per exponent ``e >= 2`` with ``p^e <= n`` (positions ``c`` with ``p^e || n - c``)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    rows = []
    for p, f in factorint(n, budget).items():
        if p * p > n:
            continue
        e = 2
        while p ** e <= n:
            rows.append(SpikeRow(p, e, f))
            e += 1
    return SpikeReport(n, rows)


def position_class_means(mult: list[int], modulus: int, residue: int) -> tuple[float, int]:
    vals = mult[residue % modulus :: modulus]
    return (math.fsum(vals) / len(vals) if vals else 0.0), len(vals)
