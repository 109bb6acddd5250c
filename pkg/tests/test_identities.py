"""Exact combinatorial identities behind the congruence proofs."""

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from hypercheck import identities
from hypercheck.errors import PoleInParameter
from hypercheck.special import harmonic_exact

XS = tuple(identities._PARTFRAC_RHS)


@given(st.integers(min_value=0, max_value=120))
def test_alternating_binomial_sum(n):
    case = identities.alternating_binomial_sum(n)
    assert case.passed
    assert case.rhs == (-1) ** n


@given(st.integers(min_value=1, max_value=120))
def test_harmonic_weighted_sum(n):
    case = identities.harmonic_weighted_sum(n)
    assert case.passed
    assert case.rhs == 2 * Fraction(-1) ** n * harmonic_exact(n)


@given(st.integers(min_value=1, max_value=120))
def test_tail_harmonic_sum(n):
    case = identities.tail_harmonic_sum(n)
    assert case.passed
    assert case.rhs == Fraction(-1) ** n * harmonic_exact(n)


@given(st.integers(min_value=1, max_value=120))
def test_shifted_harmonic_sum_needs_k0(n):
    full = identities.shifted_harmonic_sum(n)
    printed = identities.shifted_harmonic_sum_printed(n)
    assert full.passed
    # dropping the k=0 term removes exactly H_n from the left side
    assert not printed.passed
    assert full.lhs - printed.lhs == harmonic_exact(n)
    assert printed.rhs == full.rhs


@given(st.integers(min_value=0, max_value=120))
def test_harmonic_difference_chain(n):
    case = identities.harmonic_difference_chain(n)
    assert case.passed
    assert case.rhs == Fraction(-1) ** n * harmonic_exact(n)


def test_small_sum_values_frozen():
    assert identities.alternating_binomial_sum(3).lhs == -1
    assert identities.harmonic_weighted_sum(2).lhs == 3
    assert identities.tail_harmonic_sum(2).lhs == Fraction(3, 2)
    assert identities.harmonic_difference_chain(2).lhs == Fraction(3, 2)


@given(st.sampled_from(XS), st.integers(min_value=0, max_value=150))
def test_partial_fraction_sum(x, k):
    case = identities.partial_fraction_sum(k, x)
    assert case.passed


def test_partial_fraction_closed_forms_spot():
    # at x = 1/2: sum_{i<k} (1/(1/2+i) + 1/(1/2+i)) = 4 H_{2k} - 2 H_k
    k = 5
    direct = sum(
        1 / (Fraction(1, 2) + i) + 1 / (Fraction(1, 2) + i) for i in range(k)
    )
    assert direct == 4 * harmonic_exact(2 * k) - 2 * harmonic_exact(k)
    # at x = 1/6 the decomposition needs all four strides
    want = (
        6 * harmonic_exact(6 * k)
        - 3 * harmonic_exact(3 * k)
        - 2 * harmonic_exact(2 * k)
        + harmonic_exact(k)
    )
    direct = sum(
        1 / (Fraction(1, 6) + i) + 1 / (Fraction(5, 6) + i) for i in range(k)
    )
    assert direct == want


@given(st.sampled_from(XS), st.integers(min_value=0, max_value=120))
def test_term_convolution_identity(x, k):
    case = identities.term_convolution_identity(x, k)
    assert case.passed


def test_term_convolution_rejects_poles():
    with pytest.raises(PoleInParameter):
        identities.term_convolution_identity(Fraction(-2), 5)
    with pytest.raises(PoleInParameter):
        identities.term_convolution_identity(Fraction(3), 5)


@given(st.integers(min_value=0, max_value=100), st.integers(min_value=0, max_value=4))
def test_taylor_coefficient_check(k, r):
    for case in identities.taylor_coefficient_check(k, r):
        assert case.passed


def test_taylor_coefficient_values_frozen():
    zeroth, first = identities.taylor_coefficient_check(1, 1)
    assert zeroth.lhs == comb(2, 1) == 2
    assert first.lhs == 2  # r * C(2k,k) * (2 H_2k - 2 H_k) = 1 * 2 * 1
    zeroth, first = identities.taylor_coefficient_check(3, 2)
    assert zeroth.lhs == comb(6, 3)
    assert first.lhs == 2 * comb(6, 3) * (
        2 * harmonic_exact(6) - 2 * harmonic_exact(3)
    )


@given(
    st.fractions(max_denominator=8, min_value=Fraction(-5), max_value=5),
    st.integers(min_value=0, max_value=25),
)
def test_generalized_binomial_product_form(x, k):
    want = Fraction(1)
    for i in range(k):
        want *= (x - i) / (i + 1)
    assert identities.generalized_binomial(x, k) == want


def test_generalized_binomial_matches_comb_for_integers():
    for n in range(12):
        for k in range(14):
            assert identities.generalized_binomial(n, k) == comb(n, k)
    assert identities.generalized_binomial(Fraction(-1, 2), 2) == Fraction(3, 8)


@given(st.integers(min_value=1, max_value=120), st.integers(min_value=0, max_value=120))
def test_negation_symmetry(b, k):
    case = identities.negation_symmetry(b, k)
    assert case.passed


def test_negation_symmetry_is_the_binomial_reflection():
    # C(-b, k) C(-b+k, k) = C(b-1+k, k) C(b-1, k) as exact rationals
    b, k = 7, 4
    lhs = identities.generalized_binomial(-b, k) * identities.generalized_binomial(
        -b + k, k
    )
    rhs = comb(b - 1 + k, k) * comb(b - 1, k)
    assert lhs == rhs
    case = identities.negation_symmetry(b, k)
    assert case.lhs == lhs


@given(st.sampled_from(XS), st.integers(min_value=0, max_value=60))
def test_series_term_prefix_cache(x, k):
    terms = identities._series_terms(x, k)
    assert len(terms) >= k + 1
    want = Fraction(1)
    for i in range(k):
        want *= (x + i) * (1 - x + i) / (i + 1) ** 2
    assert terms[k] == want
