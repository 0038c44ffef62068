"""Exact rational linear algebra against a sympy oracle."""

from fractions import Fraction

import numpy as np
import pytest
import sympy

from dec2d.rational import (
    SpanBuilder,
    clear_denominators,
    fraction_rows,
    independent_columns,
    matvec,
    nullspace,
    rank,
    rref,
    solve,
)


def random_int_matrix(rng, rows, cols, lo=-4, hi=5):
    return rng.integers(lo, hi, (rows, cols))


@pytest.mark.parametrize("seed", range(12))
def test_rank_matches_sympy(seed):
    rng = np.random.default_rng(seed)
    rows = int(rng.integers(1, 8))
    cols = int(rng.integers(1, 8))
    a = random_int_matrix(rng, rows, cols)
    assert rank(a) == sympy.Matrix(a.tolist()).rank()


def test_rank_zero_matrix():
    assert rank(np.zeros((3, 4), dtype=np.int64)) == 0
    assert rank(np.zeros((0, 4), dtype=np.int64)) == 0


def test_rank_identity():
    assert rank(np.eye(5, dtype=np.int64)) == 5


@pytest.mark.parametrize("seed", range(12))
def test_nullspace_matches_sympy(seed):
    rng = np.random.default_rng(100 + seed)
    rows = int(rng.integers(1, 7))
    cols = int(rng.integers(1, 7))
    a = random_int_matrix(rng, rows, cols)
    ours = nullspace(a)
    theirs = sympy.Matrix(a.tolist()).nullspace()
    assert len(ours) == len(theirs)
    for vec in ours:
        assert all(isinstance(x, Fraction) for x in vec)
        out = matvec(fraction_rows(a), vec)
        assert all(x == 0 for x in out)
    # our vectors must span the same space: each sympy vector solves into ours
    if ours:
        span = SpanBuilder()
        for v in ours:
            span.add(list(v))
        for sv in theirs:
            frac = [Fraction(sympy.Rational(x).p, sympy.Rational(x).q) for x in sv]
            assert span.contains(frac)


def test_rref_pivots_deterministic():
    a = np.array([[0, 2, 4], [0, 1, 2], [3, 0, 1]], dtype=np.int64)
    reduced, pivots = rref(fraction_rows(a))
    assert pivots == [0, 1]
    assert reduced[0][0] == 1 and reduced[1][1] == 1


@pytest.mark.parametrize("seed", range(10))
def test_solve_round_trip(seed):
    rng = np.random.default_rng(200 + seed)
    rows = int(rng.integers(1, 7))
    cols = int(rng.integers(1, 7))
    a = random_int_matrix(rng, rows, cols)
    x_true = [Fraction(int(c)) for c in random_int_matrix(rng, cols, 1).ravel()]
    b = matvec(fraction_rows(a), x_true)
    x = solve(a, b)
    assert x is not None
    assert matvec(fraction_rows(a), x) == b


def test_solve_inconsistent_returns_none():
    a = np.array([[1, 0], [1, 0]], dtype=np.int64)
    b = [Fraction(1), Fraction(2)]
    assert solve(a, b) is None


def test_solve_underdetermined_free_vars_zero():
    a = np.array([[1, 1]], dtype=np.int64)
    x = solve(a, [Fraction(3)])
    assert x == [Fraction(3), Fraction(0)]


@pytest.mark.parametrize("seed", range(8))
def test_independent_columns(seed):
    rng = np.random.default_rng(300 + seed)
    rows = int(rng.integers(1, 7))
    cols = int(rng.integers(1, 7))
    a = random_int_matrix(rng, rows, cols)
    idx = independent_columns(a)
    assert len(idx) == rank(a)
    assert list(idx) == sorted(idx)
    if idx:
        sub = a[:, idx]
        assert rank(sub) == len(idx)


def test_clear_denominators():
    vec = [Fraction(1, 2), Fraction(-3, 4), Fraction(0)]
    cleared = clear_denominators(vec)
    assert cleared == [2, -3, 0]
    assert clear_denominators([Fraction(-1, 2), Fraction(-1, 3)]) == [-3, -2] or clear_denominators(
        [Fraction(-1, 2), Fraction(-1, 3)]
    ) == [3, 2]


def test_clear_denominators_leading_sign_and_gcd():
    # scaled result is primitive and its first nonzero entry is positive
    vec = [Fraction(0), Fraction(-2, 3), Fraction(4, 3)]
    cleared = clear_denominators(vec)
    assert cleared[0] == 0 and cleared[1] > 0
    from math import gcd

    g = 0
    for x in cleared:
        g = gcd(g, abs(x))
    assert g == 1


def test_span_builder():
    span = SpanBuilder()
    assert span.add([Fraction(1), Fraction(0), Fraction(1)])
    assert not span.add([Fraction(2), Fraction(0), Fraction(2)])  # dependent
    assert span.add([Fraction(0), Fraction(1), Fraction(0)])
    assert span.contains([Fraction(3), Fraction(5), Fraction(3)])
    assert not span.contains([Fraction(0), Fraction(0), Fraction(1)])
    assert span.dimension == 2
