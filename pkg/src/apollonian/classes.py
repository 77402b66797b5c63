"""Reduced primitive forms of discriminant -4n^2, i.e. the classes ID(n).

Two independent routes produce the same sorted list:

* ``enumerate_classes_naive`` scans the whole reduced box with numpy;
* ``enumerate_classes_fast`` factors every ``x^2 + n^2`` (``B = 2x``) with a
  root sieve and reads the forms off the divisors.

The fast path splits the ``x`` range into chunks that can run in worker
processes; chunk outputs are merged with a sorted k-way merge, so the
result never depends on the chunking.
"""
from __future__ import annotations

import heapq
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd, isqrt

import numpy as np

from .bqf import BinaryQuadraticForm, theta
from .factor import divisors, primes_up_to, sqrt_mod_prime

NAIVE_LIMIT = 20000


@dataclass
class ClassList:
    n: int
    forms: list[BinaryQuadraticForm] = field(default_factory=list)

    def __len__(self):
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)

    def quadruples(self) -> list[tuple[int, int, int, int]]:
        return [theta((self.n, *f)) for f in self.forms]


def _check_n(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")


def max_reduced_a(n: int) -> int:
    """Largest A with 3A^2 <= 4n^2 (a reduced form has B <= A <= C)."""
    return isqrt(4 * n * n // 3)


def enumerate_classes_naive(n: int) -> ClassList:
    _check_n(n)
    if n > NAIVE_LIMIT:
        raise ValueError(f"naive enumeration is capped at n <= {NAIVE_LIMIT}; use the fast path")
    amax = max_reduced_a(n)
    A = np.arange(1, amax + 1, dtype=np.int64)[:, None]
    x = np.arange(0, amax // 2 + 1, dtype=np.int64)[None, :]
    num = x * x + n * n  # = A*C
    mask = (2 * x <= A) & (num % A == 0) & (num >= A * A)
    ai, xi = np.nonzero(mask)
    forms = []
    for a, xx in zip((ai + 1).tolist(), xi.tolist()):
        c = (xx * xx + n * n) // a
        if gcd(gcd(a, 2 * xx), c) == 1:
            forms.append(BinaryQuadraticForm(a, 2 * xx, c))
    forms.sort()
    return ClassList(n, forms)


def sieve_roots(n: int, limit: int) -> list[tuple[int, tuple[int, ...]]]:
    """For each prime p <= limit, the residues x mod p with p | x^2 + n^2."""
    out = []
    for p in primes_up_to(limit):
        if p == 2:
            out.append((2, (n % 2,)))
        elif n % p == 0:
            out.append((p, (0,)))
        elif p % 4 == 1:
            i = sqrt_mod_prime(p - 1, p)[0]
            r = n * i % p
            out.append((p, (r, p - r)))
    return out


def _chunk_forms(n: int, lo: int, hi: int, roots) -> list[BinaryQuadraticForm]:
    """Forms with B = 2x for x in [lo, hi), sorted."""
    size = hi - lo
    rem = [x * x + n * n for x in range(lo, hi)]
    facs: list[dict[int, int]] = [{} for _ in range(size)]
    for p, rs in roots:
        for r in rs:
            start = (r - lo) % p
            for k in range(start, size, p):
                v = rem[k]
                e = 0
                while v % p == 0:
                    v //= p
                    e += 1
                rem[k] = v
                facs[k][p] = e
    forms = []
    for k in range(size):
        x = lo + k
        fac = facs[k]
        if rem[k] > 1:
            fac[rem[k]] = 1
        N = x * x + n * n
        for a in divisors(dict(sorted(fac.items()))):
            if a < 2 * x:
                continue
            if a * a > N:
                break
            c = N // a
            if gcd(gcd(a, 2 * x), c) == 1:
                forms.append(BinaryQuadraticForm(a, 2 * x, c))
    forms.sort()
    return forms


def default_threads() -> int:
    env = os.environ.get("STAIRCASE_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def enumerate_classes_fast(n: int, chunks: int = 1, workers: int = 1) -> ClassList:
    """All reduced primitive forms of discriminant -4n^2.

    ``chunks`` splits the x range; ``workers > 1`` evaluates chunks in a
    process pool.  Output is identical for every choice of both.
    """
    _check_n(n)
    xmax = isqrt(n * n // 3)
    roots = sieve_roots(n, isqrt(xmax * xmax + n * n))
    chunks = max(1, min(chunks, xmax + 1))
    bounds = [((xmax + 1) * i // chunks, (xmax + 1) * (i + 1) // chunks) for i in range(chunks)]
    if workers > 1 and chunks > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_chunk_forms, [n] * chunks, *zip(*bounds), [roots] * chunks))
    else:
        parts = [_chunk_forms(n, lo, hi, roots) for lo, hi in bounds]
    return ClassList(n, list(heapq.merge(*parts)))


def id_set(n: int, **kw) -> list[tuple[int, int, int, int]]:
    """Reduced-root representatives of ID(n) as n-quadruples."""
    return enumerate_classes_fast(n, **kw).quadruples()
