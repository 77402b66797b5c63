"""Factorization and square roots modulo prime powers.

Small, dependency-free helpers: Miller-Rabin, Pollard-Brent with an
iteration budget, a smallest-prime-factor sieve, Tonelli-Shanks and
Hensel lifting.
"""
from __future__ import annotations

from itertools import product
from math import gcd, isqrt
import random

import numpy as np

SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


class FactorizationBudgetExceeded(RuntimeError):
    pass


def primes_up_to(limit: int) -> list[int]:
    if limit < 2:
        return []
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve).tolist()


def spf_sieve(limit: int) -> np.ndarray:
    """Smallest prime factor for every integer up to ``limit`` (0 and 1 map to 0)."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    rest = np.flatnonzero(spf == 0)
    spf[rest] = rest
    spf[:2] = 0
    return spf


def factor_with_spf(m: int, spf: np.ndarray) -> dict[int, int]:
    out: dict[int, int] = {}
    while m > 1:
        p = int(spf[m])
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        out[p] = e
    return out


def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24, probabilistic beyond."""
    if n < 2:
        return False
    for p in SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in SMALL_PRIMES[:13]:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def pollard_brent(n: int, budget: int | None = None, seed: int = 1) -> int:
    """Return a non-trivial factor of the odd composite ``n``."""
    rng = random.Random(seed)
    spent = 0
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
            spent += r
            if budget is not None and spent > budget:
                raise FactorizationBudgetExceeded(f"Pollard rho budget {budget} exhausted on {n}")
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def factorint(n: int, budget: int | None = None) -> dict[int, int]:
    """Prime factorization of ``|n|`` as ``{p: e}``, sorted by prime."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    for p in SMALL_PRIMES:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = pollard_brent(m, budget)
        stack += [d, m // d]
    return dict(sorted(out.items()))


def divisors(fac: dict[int, int]) -> list[int]:
    divs = [1]
    for p, e in fac.items():
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


def sqrt_mod_prime(a: int, p: int) -> list[int]:
    """Sorted square roots of ``a`` modulo the prime ``p`` (Tonelli-Shanks)."""
    a %= p
    if a == 0 or p == 2:
        return [a]
    if pow(a, (p - 1) // 2, p) != 1:
        return []
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return sorted({r, p - r})
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return sorted({r, p - r})


def sqrt_mod_prime_power(a: int, p: int, e: int) -> list[int]:
    """All ``x`` in ``[0, p^e)`` with ``x^2 = a (mod p^e)``, sorted.

    Roots are lifted one power at a time.  A root with ``p`` odd and
    ``p`` not dividing it lifts uniquely (Newton step); otherwise the
    ``p`` candidate lifts are checked directly.
    """
    roots = sqrt_mod_prime(a, p)
    mod = p
    for _ in range(e - 1):
        nxt = mod * p
        lifted = set()
        for r in roots:
            if p != 2 and r % p:
                inv = pow(2 * r, -1, nxt)
                lifted.add((r - (r * r - a) * inv) % nxt)
            else:
                for k in range(p):
                    x = r + k * mod
                    if (x * x - a) % nxt == 0:
                        lifted.add(x)
        roots = sorted(lifted)
        mod = nxt
    return roots


def crt_pairs(residues: list[list[int]], moduli: list[int]) -> list[int]:
    """Combine per-modulus residue lists into all residues mod the product."""
    out = [0]
    M = 1
    for rs, m in zip(residues, moduli):
        inv = pow(M, -1, m)
        out = [x + M * ((r - x) * inv % m) for x, r in product(out, rs)]
        M *= m
    return sorted(out)
