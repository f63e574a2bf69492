import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from veronuc.errors import IndexOutOfRange
from veronuc.mono import (
    EmptyCase,
    base_p_digits,
    carry_free,
    classify_empty,
    count_nonvanishing,
    enumerate_exponents,
    multinomial_exact,
    multinomial_mod_p,
    nucleus_dim_formula,
    rank,
    span_of_powers_dim,
    unrank,
)


def factorial_multinomial(t, e):
    """Oracle: t! / prod(e_i!) straight from factorials."""
    if sum(e) != t or min(e) < 0:
        return 0
    value = Fraction(math.factorial(t))
    for x in e:
        value /= math.factorial(x)
    assert value.denominator == 1
    return int(value)


def compositions(m, t):
    """Oracle: all (m+1)-tuples summing to t, by filtering the full box."""
    return [e for e in itertools.product(range(t + 1), repeat=m + 1) if sum(e) == t]


# --- exponent tuples --------------------------------------------------------------

def test_enumerate_m1_t2():
    assert enumerate_exponents(1, 2) == [(2, 0), (1, 1), (0, 2)]


def test_enumerate_m2_t2_has_six_base_points():
    assert enumerate_exponents(2, 2) == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]


def test_enumerate_m0():
    assert enumerate_exponents(0, 5) == [(5,)]


@pytest.mark.parametrize("m,t", [(m, t) for m in range(5) for t in range(7)])
def test_enumerate_is_descending_lex_and_complete(m, t):
    got = enumerate_exponents(m, t)
    assert len(got) == math.comb(m + t, t)
    assert got == sorted(compositions(m, t), reverse=True)


def test_rank_examples():
    assert rank((2, 0)) == 0
    assert unrank(1, 2, 2) == (0, 2)
    assert rank(unrank(2, 3, 7)) == 7


@pytest.mark.parametrize("m,t", [(0, 3), (1, 4), (2, 3), (3, 5), (5, 2)])
def test_rank_unrank_bijection(m, t):
    tuples = enumerate_exponents(m, t)
    for i, e in enumerate(tuples):
        assert rank(e) == i
        assert unrank(m, t, i) == e


def test_unrank_out_of_range():
    with pytest.raises(IndexOutOfRange):
        unrank(1, 2, 3)
    with pytest.raises(IndexOutOfRange):
        unrank(1, 2, -1)


# --- digits -------------------------------------------------------------------------

def test_digits_examples():
    assert base_p_digits(3, 2) == [1, 1]
    assert base_p_digits(0, 5) == []
    # 90 = 3^2 + 3^4
    assert base_p_digits(90, 3) == [0, 0, 1, 0, 1]


@given(st.integers(0, 10**12), st.sampled_from([2, 3, 5, 7, 11, 101]))
def test_digits_reconstruct(n, p):
    d = base_p_digits(n, p)
    assert sum(x * p**i for i, x in enumerate(d)) == n
    assert all(0 <= x < p for x in d)
    assert not d or d[-1] != 0


# --- multinomials ----------------------------------------------------------------------

def test_multinomial_exact_examples():
    assert multinomial_exact(3, (1, 1, 1)) == 6
    assert multinomial_exact(2, (1, 1, 0)) == 2
    assert multinomial_exact(4, (1, 1, 1, 2)) == 0


def test_multinomial_exact_against_factorials():
    for m in range(4):
        for t in range(9):
            for e in enumerate_exponents(m, t):
                assert multinomial_exact(t, e) == factorial_multinomial(t, e)


def test_multinomial_mod_p_examples():
    assert multinomial_mod_p(3, (1, 1, 1), 2) == 0
    assert multinomial_mod_p(2, (1, 1, 0), 2) == 0
    # 6! / (2! 2! 2!) = 90 and 90 = 30 * 3
    assert factorial_multinomial(6, (2, 2, 2)) == 90
    assert multinomial_mod_p(6, (2, 2, 2), 3) == 0


def test_carry_free_examples():
    assert carry_free(3, (1, 1, 1), 2) is False
    assert carry_free(3, (3, 0), 2) is True
    assert carry_free(6, (2, 2, 2), 3) is False


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_lucas_exhaustive_small(p):
    for m in range(1, 4):
        for t in range(0, 16):
            for e in enumerate_exponents(m, t):
                exact = multinomial_exact(t, e)
                residue = multinomial_mod_p(t, e, p)
                assert residue == exact % p
                assert carry_free(t, e, p) == (residue != 0)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 6), st.integers(0, 300), st.sampled_from([2, 3, 5, 7]), st.data())
def test_lucas_randomized(m, t, p, data):
    cuts = sorted(data.draw(st.lists(st.integers(0, t), min_size=m, max_size=m)))
    e = tuple(b - a for a, b in zip([0] + cuts, cuts + [t]))
    assert sum(e) == t
    assert multinomial_mod_p(t, e, p) == multinomial_exact(t, e) % p
    assert carry_free(t, e, p) == (multinomial_mod_p(t, e, p) != 0)


def test_off_simplex_tuples_are_zero():
    assert multinomial_mod_p(4, (1, 1, 1, 2), 2) == 0
    assert multinomial_exact(4, (5, -1)) == 0
    assert carry_free(4, (1, 1, 1, 2), 2) is False


# --- counting formulas -------------------------------------------------------------------

def test_count_nonvanishing_examples():
    assert count_nonvanishing(2, 2, 2) == 3
    assert count_nonvanishing(2, 3, 2) == 9
    for m, t, p in [(1, 2, 3), (3, 4, 5), (2, 6, 7)]:
        assert count_nonvanishing(m, t, p) == math.comb(m + t, t)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_count_nonvanishing_against_enumeration(p):
    for m in range(0, 5):
        for t in range(0, 20):
            tuples = enumerate_exponents(m, t)
            if len(tuples) > 10**4:
                continue
            brute = sum(multinomial_exact(t, e) % p != 0 for e in tuples)
            assert count_nonvanishing(m, t, p) == brute
            assert nucleus_dim_formula(m, t, p) == len(tuples) - brute - 1


def test_nucleus_dim_formula_examples():
    assert nucleus_dim_formula(2, 2, 2) == 2
    assert nucleus_dim_formula(2, 3, 2) == 0
    assert nucleus_dim_formula(1, 3, 2) == -1


def test_span_of_powers_dim_examples():
    assert span_of_powers_dim(2, 3, 2) == 9
    assert span_of_powers_dim(1, 3, 2) == 4
    assert span_of_powers_dim(2, 2, 3) == 6


# --- empty-nucleus classification -----------------------------------------------------

def test_classify_examples():
    assert classify_empty(2, 2, 3) is EmptyCase.SMALL_T
    assert classify_empty(1, 3, 2) is EmptyCase.CURVE_SPECIAL
    assert classify_empty(2, 3, 2) is EmptyCase.NON_EMPTY
    assert classify_empty(0, 7, 2) is EmptyCase.TRIVIAL_PARAMS
    assert classify_empty(4, 1, 2) is EmptyCase.TRIVIAL_PARAMS


def test_curve_special_digit_pattern():
    # 5 = 12 in base 3, 17 = 122 in base 3, 26 = 222 in base 3
    for t in (5, 8, 17, 26):
        assert classify_empty(1, t, 3) is EmptyCase.CURVE_SPECIAL
    for t in (4, 6, 7, 9, 10):
        assert classify_empty(1, t, 3) is EmptyCase.NON_EMPTY


def test_witness_tuple_for_case_four():
    # e = (1, p-1, t-p, 0, ...) has a carry whenever t >= p and m >= 2
    for p in (2, 3, 5):
        for m in range(2, 5):
            for t in range(p, 3 * p + 2):
                e = (1, p - 1, t - p) + (0,) * (m - 2)
                assert multinomial_mod_p(t, e, p) == 0


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_classification_matches_formula(p):
    for m in range(0, 7):
        for t in range(1, p**3 + 1):
            label = classify_empty(m, t, p)
            assert (label is EmptyCase.NON_EMPTY) == (nucleus_dim_formula(m, t, p) >= 0)
