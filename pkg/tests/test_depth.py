from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from apollonian.bqf import coefficient_quadruple
from apollonian.classes import enumerate_classes_fast, id_set
from apollonian.depth import (
    DepthElement, ReductionError, depth_elements, height_record, heights, histogram, iteration_cap, reduce_to_root,
    rmc, weighted_histogram,
)
from apollonian.descartes import ApWord, apply_move, apply_word
from conftest import reduced_words


def bfs_depth(q, limit=12):
    """Shortest reduced word reaching a non-positive entry, by exhaustive search."""
    frontier = [(tuple(q), 0)]
    for d in range(limit + 1):
        if any(min(x) <= 0 for x, _ in frontier):
            return d
        frontier = [(apply_move(x, i), i) for x, last in frontier for i in range(1, 5) if i != last]
    raise AssertionError("depth above search limit")


def test_reduce_examples():
    r = reduce_to_root((7, -2, 3, 6))
    assert (r.depth, r.mc) == (0, 2)
    assert sorted(r.root) == [-2, 3, 6, 7]
    r = reduce_to_root((105, 12, 17, 20))
    assert (r.depth, r.mc, r.moves[:1]) == (1, 7, (1,))
    r = reduce_to_root((1, 0, 0, 1))
    assert (r.depth, r.mc) == (0, 0)


def test_depth_element_examples():
    assert depth_elements((7, -2, 3, 6)) == (DepthElement.identity(2),)
    assert depth_elements((105, 12, 17, 20)) == (DepthElement((1,), 1),)
    assert set(depth_elements((1, 0, 0, 1))) == {DepthElement.identity(2), DepthElement.identity(3)}
    assert str(DepthElement((4, 1), 4)) == "S4S1"


def test_rmc_examples():
    assert sorted(heights(rmc(7))) == [Fraction(2, 7), Fraction(5, 7), Fraction(6, 7)]
    assert heights(rmc(1)) == [0]
    assert heights(rmc(2)) == [Fraction(1, 2)]
    assert all(r.bottom and r.depth == 0 for r in rmc(7))


def test_histogram_examples():
    h = histogram([Fraction(0), Fraction(1, 2)], 2)
    assert h == [(0, Fraction(1, 2), 1), (Fraction(1, 2), 1, 1)]
    assert histogram([Fraction(2, 7), Fraction(5, 7), Fraction(6, 7)], 1) == [(0, 1, 3)]
    assert [c for *_, c in histogram(heights(rmc(7)), 7)] == [0, 0, 1, 0, 0, 1, 1]
    assert [c for *_, c in weighted_histogram({Fraction(1, 4): 3, Fraction(3, 4): 1}, 2)] == [3, 1]
    with pytest.raises(ValueError):
        histogram([], 0)


def test_rejects_non_descartes():
    with pytest.raises(ValueError):
        reduce_to_root((1, 1, 1, 1))


def test_iteration_cap_grows_with_size():
    assert iteration_cap((1, 2, 3, 4)) < iteration_cap((10 ** 20, 1, 1, 1))


def test_long_chain_reduces():
    # circles squeezed between two big ones need many moves
    q = (-1, 2, 2, 3)
    for _ in range(300):
        q = apply_move(apply_move(q, 4), 3) if q[3] < q[2] else apply_move(apply_move(q, 3), 4)
    r = reduce_to_root(q)
    assert r.mc == 1
    q = (10 ** 6, 10 ** 6, 1, 1)
    with pytest.raises((ValueError, ReductionError)):
        reduce_to_root(q)


def test_greedy_depth_matches_bfs_oracle():
    for n in range(1, 51):
        for q in id_set(n):
            assert reduce_to_root(q).depth == bfs_depth(q), q


@given(st.integers(1, 3000), st.data())
def test_root_properties(n, data):
    f = data.draw(st.sampled_from(enumerate_classes_fast(n).forms))
    rec = height_record(n, f)
    root = rec.root
    assert min(root) == -rec.mc or (rec.mc == 0 and min(root) == 0)
    assert all(apply_move(root, i)[i - 1] >= root[i - 1] for i in range(1, 5))
    assert 0 <= rec.height < 1
    assert (rec.depth == 0) == (min(rec.quadruple) <= 0)


@given(st.integers(1, 2000), st.data(), reduced_words(8))
def test_mc_is_class_invariant(n, data, word):
    f = data.draw(st.sampled_from(enumerate_classes_fast(n).forms))
    q = height_record(n, f).quadruple
    ap1 = tuple(i for i in word if i != 1)
    ap1 = tuple(x for k, x in enumerate(ap1) if k == 0 or ap1[k - 1] != x)
    q2 = apply_word(q, ApWord(ap1))
    assert q2[0] == n
    assert reduce_to_root(q2).mc == reduce_to_root(q).mc


def test_depth_is_not_a_class_invariant():
    # the same Ap_1-class can be represented at different depths
    q = (7, -2, 3, 6)
    q2 = apply_move(q, 2)
    assert q2 == (7, 34, 3, 6)
    assert reduce_to_root(q).depth == 0 and reduce_to_root(q2).depth == 1
    assert reduce_to_root(q).mc == reduce_to_root(q2).mc


def _bound_holds(height: Fraction, t: int) -> bool:
    # height <= t - sqrt(t^2 - 1), exactly
    return height <= t and (t - height) ** 2 >= t * t - 1


@pytest.mark.slow
def test_height_bounded_by_stair_width():
    cache = {}
    for n in range(1, 5001):
        for rec in rmc(n):
            for el in rec.depth_elements:
                if el not in cache:
                    cache[el] = coefficient_quadruple(ApWord(el.word), el.j).t
                assert _bound_holds(rec.height, cache[el]), (n, rec)
