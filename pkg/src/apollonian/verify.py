"""Quick invariant suite behind ``staircase verify``.

Each check returns ``(ok, detail)``; none takes more than a few seconds.
"""
from __future__ import annotations

import random
import time
from fractions import Fraction
from typing import Callable

from . import bqf, classes, depth, geometry, staircase, tangency
from .descartes import Q_D, ApWord, matmul, transpose


def check_descartes_form():
    rng = random.Random(0)
    for _ in range(200):
        letters, prev = [], 0
        for _ in range(rng.randrange(0, 11)):
            prev = rng.choice([i for i in range(1, 5) if i != prev])
            letters.append(prev)
        M = ApWord(tuple(letters)).matrix()
        if matmul(matmul(transpose(M), Q_D), M) != Q_D:
            return False, f"word {letters} does not preserve Q_D"
    return True, "200 random words preserve Q_D"


def check_theta_phi():
    for n in range(1, 30):
        for f in classes.enumerate_classes_fast(n):
            Q = bqf.BQFQuadruple(n, *f)
            if bqf.phi(bqf.theta(Q)) != Q:
                return False, f"round trip fails at {Q}"
    return True, "phi(theta(Q)) = Q for all classes with n < 30"


def check_class_oracles():
    for n in range(1, 201):
        if classes.enumerate_classes_naive(n).forms != classes.enumerate_classes_fast(n, chunks=3).forms:
            return False, f"naive and fast enumerations differ at n={n}"
    return True, "naive = fast for n <= 200"


def check_rmc7():
    hs = sorted(r.height for r in depth.rmc(7))
    ok = hs == [Fraction(2, 7), Fraction(5, 7), Fraction(6, 7)]
    return ok, f"heights {[str(h) for h in hs]}"


def check_table1():
    model = staircase.build_staircase(50)
    got = [(s.t, round(s.width, 10), round(s.height, 10)) for s in model.stairs]
    want = [(1, 1.0, 0.9549296586), (7, 0.0717967697, 0.2886751346), (17, 0.0294372515, 0.3535533906),
            (31, 0.0161332303, 0.1936491673), (49, 0.0102051443, 0.2449489743), (49, 0.0102051443, 0.1224744871)]
    return got == want, f"{len(got)} stairs"


def check_mass():
    m = staircase.build_staircase(100).mass
    return 0.99 <= m <= 1 + 1e-9, f"mass(t<=100) = {m:.6f}"


def check_norms():
    for c in staircase.strip_circle_bfs(64):
        if c.coeffs.norm() != 1:
            return False, f"{c.label} has norm {c.coeffs.norm()}"
    return True, "t^2 + 4v^2 - 4uw = 1 on all rows with w <= 64"


def check_tangency():
    for c1 in range(1, 41):
        for c2 in range(-c1 + 1, 41):
            diff = tangency.tangency_bruteforce(c1, c2) - tangency.tangency_estimate(c1, c2)
            if not 0 <= diff <= 1:
                return False, f"bound fails at ({c1}, {c2})"
    return True, "0 <= T - estimate <= 1 for c1, c2 <= 40"


def check_local_factors():
    for p in (2, 3, 5, 7):
        for e in range(1, 5):
            for m in range(1, 13):
                if tangency.sp_closed_form(p, e, m) != tangency.sp_bruteforce(p, e, m):
                    return False, f"s_p mismatch at p={p}, e={e}, c1={m}"
    return True, "closed form = brute force on a small grid"


def check_wk():
    for k in range(1, 101):
        coeffs, _ = staircase.wk_data(k)
        if bqf.coefficient_quadruple(ApWord(staircase.wk_word(k))) != coeffs:
            return False, f"W_{k} closed form differs"
    return True, "W_k closed form for k <= 100"


def check_packing():
    circles = geometry.packing_circles((-7, 12, 17, 20), 120)
    (k0, *_), rest = circles[0], circles[1:]
    R = Fraction(1, -k0)
    for i, (k, x, y) in enumerate(rest):
        r = Fraction(1, k)
        if x * x + y * y > (R - r) ** 2:
            return False, f"circle {k} leaves the outer circle"
        for k2, x2, y2 in rest[i + 1 :]:
            if (x - x2) ** 2 + (y - y2) ** 2 < (r + Fraction(1, k2)) ** 2:
                return False, f"circles {k} and {k2} overlap"
    return True, f"{len(circles)} circles pairwise disjoint"


CHECKS: list[tuple[str, Callable]] = [
    ("descartes_form", check_descartes_form),
    ("theta_phi_roundtrip", check_theta_phi),
    ("class_enum_oracles", check_class_oracles),
    ("rmc_n7", check_rmc7),
    ("table1", check_table1),
    ("staircase_mass", check_mass),
    ("bfs_norms", check_norms),
    ("tangency_bound", check_tangency),
    ("local_factors", check_local_factors),
    ("wk_closed_form", check_wk),
    ("packing_disjoint", check_packing),
]


def run_all(out=print) -> bool:
    all_ok = True
    for name, fn in CHECKS:
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # report, keep going
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        all_ok &= ok
        out(f"{'PASS' if ok else 'FAIL'} {name} ({time.perf_counter() - t0:.2f}s): {detail}")
    return all_ok
