from functools import reduce
from math import gcd

import pytest
from hypothesis import given, strategies as st

from apollonian.descartes import (
    Q_D, ApWord, apply_move, apply_perm, apply_word, is_descartes, is_primitive, matmul, transpose,
)
from conftest import reduced_words

SEEDS = [(-7, 12, 17, 20), (0, 0, 1, 1), (7, -2, 3, 6), (-1, 2, 2, 3), (-6, 11, 14, 15), (-3, 4, 12, 13)]


def test_is_descartes_examples():
    assert is_descartes((-7, 12, 17, 20))
    assert is_descartes((0, 0, 1, 1))
    assert not is_descartes((1, 1, 1, 1))


def test_apply_move_examples():
    assert apply_move((-7, 12, 17, 20), 1) == (105, 12, 17, 20)
    assert apply_move((0, 0, 1, 1), 2) == (0, 4, 1, 1)


def test_apply_word_examples():
    q = (-7, 12, 17, 20)
    assert apply_word(q, ApWord()) == q
    assert apply_word(q, ApWord((1,))) == (105, 12, 17, 20)
    assert apply_word((7, -2, 3, 6), ApWord((2,))) == (7, 34, 3, 6)


def test_word_order_rightmost_first():
    q = (-7, 12, 17, 20)
    assert apply_word(q, ApWord((4, 1))) == apply_move(apply_move(q, 1), 4)
    assert apply_word(q, ApWord((2,), perm=(2, 1, 3, 4))) == apply_perm(apply_move(q, 2), (2, 1, 3, 4))


def test_is_primitive_examples():
    assert is_primitive((-7, 12, 17, 20))
    assert not is_primitive((0, 0, 2, 2))
    assert is_primitive((7, -2, 3, 6))


def test_unreduced_word_rejected():
    with pytest.raises(ValueError):
        ApWord((1, 1))
    with pytest.raises(ValueError):
        ApWord((5,))


def test_word_parse_roundtrip():
    for text in ("Id", "S1", "S4S1", "S3S4S1"):
        assert str(ApWord.parse(text)) == text


@given(st.sampled_from(SEEDS), reduced_words(12), st.integers(1, 4))
def test_moves_preserve_descartes_and_gcd(seed, word, i):
    q = apply_word(seed, ApWord(word))
    assert is_descartes(q)
    assert is_descartes(apply_move(q, i))
    assert apply_move(apply_move(q, i), i) == q
    assert reduce(gcd, apply_move(q, i)) == reduce(gcd, seed)


@given(st.sampled_from(SEEDS), st.permutations((1, 2, 3, 4)))
def test_permutations_preserve_descartes(seed, perm):
    q = apply_perm(seed, tuple(perm))
    assert is_descartes(q)
    assert sorted(q) == sorted(seed)


@given(reduced_words(10))
def test_words_are_orthogonal_for_q_d(word):
    M = ApWord(word).matrix()
    assert matmul(matmul(transpose(M), Q_D), M) == Q_D


@given(st.sampled_from(SEEDS), reduced_words(8))
def test_word_matrix_matches_action(seed, word):
    w = ApWord(word)
    M = w.matrix()
    assert apply_word(seed, w) == tuple(sum(M[i][k] * seed[k] for k in range(4)) for i in range(4))
