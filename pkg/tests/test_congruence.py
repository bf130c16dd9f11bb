import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from thinlie.arith import PrimePower, as_prime_power, powers_of
from thinlie.congruence import (AdmissibleConstituent, AdmissibleK, KVariant, TruncPoly, chain_hypothesis_poly_test,
                                chain_hypothesis_test, chain_sets, classify_admissible_k, classify_final_k,
                                constituent_closed_form, constituent_length_test, double_power_test,
                                final_k_closed_form, first_constituent_test, frobenius_power_test, one_plus_x,
                                poly_mul_trunc, poly_pow_trunc, reflection_identity_check)

chars = st.sampled_from([0, 2, 3, 5, 7])


def naive_mul(f, g, n, p):
    out = [0] * n
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            if i + j < n:
                out[i + j] += a * b
    return [c % p for c in out] if p else out


def lemma_set(p, top):
    """{3, 5, 7} and q, 2q - 1, 2q + 1 for q = p^s, s >= 1, as a plain set."""
    vals = {3, 5, 7}
    if p:
        for q in powers_of(p, top):
            if q > 1:
                vals |= {q, 2 * q - 1, 2 * q + 1}
    return {v for v in vals if v <= top and v % 2}


# -- truncated polynomials ---------------------------------------------------

def test_poly_examples():
    f = one_plus_x(2, 3)
    assert poly_mul_trunc(f, f).coeffs == (1, 0, 1)
    g = TruncPoly.make(5, 4, [3, 1, 4])
    assert poly_mul_trunc(g, TruncPoly.one(5, 4)) == g
    h = poly_mul_trunc(one_plus_x(5, 2), TruncPoly.make(5, 2, [1, -1]))
    assert h.coeffs == (1, 0)
    assert poly_pow_trunc(one_plus_x(2, 8), 4).coeffs == (1, 0, 0, 0, 1, 0, 0, 0)
    assert poly_pow_trunc(g, 0) == TruncPoly.one(5, 4)
    assert poly_pow_trunc(one_plus_x(2, 8), 8) == TruncPoly.one(2, 8)


def test_poly_mismatch_rejected():
    with pytest.raises(ValueError):
        poly_mul_trunc(one_plus_x(2, 3), one_plus_x(3, 3))
    with pytest.raises(ValueError):
        poly_mul_trunc(one_plus_x(2, 3), one_plus_x(2, 4))


coeff_lists = st.lists(st.integers(-20, 20), min_size=1, max_size=8)


@given(f=coeff_lists, g=coeff_lists, p=chars, n=st.integers(1, 9))
def test_mul_matches_convolution(f, g, p, n):
    F, G = TruncPoly.make(p, n, f[:n]), TruncPoly.make(p, n, g[:n])
    want = naive_mul(f[:n], g[:n], n, p)
    assert [Fraction(c) for c in poly_mul_trunc(F, G).coeffs] == [Fraction(c) for c in want]


@given(f=coeff_lists, p=chars, n=st.integers(1, 8), e=st.integers(0, 30))
def test_pow_matches_repeated_mul(f, p, n, e):
    F = TruncPoly.make(p, n, f[:n])
    acc = [1] + [0] * (n - 1)
    for _ in range(e):
        acc = naive_mul(acc, f[:n], n, p)
    assert [Fraction(c) for c in poly_pow_trunc(F, e).coeffs] == [Fraction(c) for c in acc]


@given(p=chars, e=st.integers(0, 300), n=st.integers(1, 40))
def test_pow_of_one_plus_x_is_binomial(p, e, n):
    got = poly_pow_trunc(one_plus_x(p, n), e).coeffs
    want = [math.comb(e, j) % p if p else math.comb(e, j) for j in range(n)]
    assert list(got) == want


# -- power criteria ----------------------------------------------------------

@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_power_criteria_hold_exactly_on_powers(p):
    for n in range(1, 400):
        power = as_prime_power(n, p) is not None
        assert frobenius_power_test(n, p) == power
        assert double_power_test(n, p) == power


@given(n=st.integers(1, 150), p=st.sampled_from([2, 3, 5, 7]))
def test_power_criteria_against_exact_binomials(n, p):
    assert frobenius_power_test(n, p) == all(math.comb(n, k) % p == 0 for k in range(1, n))
    assert double_power_test(n, p) == all(math.comb(2 * n, k) % p == 0 for k in range(1, n))


def test_power_criteria_need_finite_char():
    with pytest.raises(ValueError):
        frobenius_power_test(4, 0)


# -- second diamond ------------------------------------------------------------

def brute_hypothesis(n, p, extended=False):
    m = 2 * n + 1
    stop = n if extended else n - 1
    for j in range(1, stop):
        d = math.comb(m, j + 1) - n * math.comb(m, j)
        if (d % p if p else d) != 0:
            return False
    return True


@pytest.mark.parametrize("p", [0, 2, 3, 5, 7])
def test_chain_hypothesis_matches_exact_binomials(p):
    for n in range(1, 120):
        assert chain_hypothesis_test(n, p) == brute_hypothesis(n, p)
        assert chain_hypothesis_test(n, p, extended=True) == brute_hypothesis(n, p, True)


@pytest.mark.parametrize("p", [0, 2, 3, 5, 7])
def test_polynomial_form_agrees(p):
    for n in range(2, 80):
        assert chain_hypothesis_poly_test(n, p) == chain_hypothesis_test(n, p)


@pytest.mark.parametrize("p", [0, 2, 3, 5, 7])
def test_lemma_set_equality_and_converse(p):
    top = 301
    sets = chain_sets(p, top)
    assert set(sets["hypothesis"]) == lemma_set(p, top)
    assert set(sets["lemma"]) == lemma_set(p, top)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_extended_range_drops_seven_and_two_q_plus_one(p):
    top = 301
    ext = set(chain_sets(p, top)["extended"])
    dropped = {2 * q + 1 for q in powers_of(p, top) if q > 1} | ({7} if p != 7 else set())
    assert ext == lemma_set(p, top) - dropped


def test_classifier_examples():
    assert classify_admissible_k(9, 5) == AdmissibleK(KVariant.TWO_Q_MINUS_ONE, PrimePower(5, 1))
    assert str(classify_admissible_k(9, 5)) == "TwoQMinusOne(q=5)"
    assert classify_admissible_k(9, 3).variant is KVariant.Q
    assert classify_admissible_k(7, 2).variant is KVariant.TWO_Q_MINUS_ONE
    assert classify_admissible_k(7, 7).variant is KVariant.Q
    assert classify_admissible_k(7, 5).variant is KVariant.SEVEN
    assert classify_admissible_k(11, 0) is None
    with pytest.raises(ValueError):
        classify_admissible_k(8, 2)
    assert classify_admissible_k(9, 5).value == 9


@pytest.mark.parametrize("p", [0, 2, 3, 5, 7])
def test_final_set_matches_closed_form(p):
    for v in range(3, 400, 2):
        assert (classify_final_k(v, p) is not None) == final_k_closed_form(v, p)


def test_final_set_examples():
    assert chain_sets(0, 33)["theorem"] == [3, 5]
    assert chain_sets(2, 33)["theorem"] == [3, 7, 15, 31]
    assert chain_sets(3, 30)["theorem"] == [3, 5, 9, 17, 27]


def test_admissible_k_consistency():
    with pytest.raises(ValueError):
        AdmissibleK(KVariant.Q)
    with pytest.raises(ValueError):
        AdmissibleK(KVariant.THREE, PrimePower(3, 1))


# -- constituents ---------------------------------------------------------------

@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_first_constituent_classifier(p):
    for ell in range(2, 1001, 2):
        got = first_constituent_test(ell, p)
        expected = as_prime_power(ell // 2, p)
        assert (got is None) == (expected is None)
        if got is not None:
            assert 2 * got.q == ell


def test_first_constituent_edge_cases():
    assert first_constituent_test(6, 0) is None
    with pytest.raises(ValueError):
        first_constituent_test(5, 2)


QS = [PrimePower.of(q, p) for p, qs in ((2, (2, 4, 8, 16, 32)), (3, (3, 9, 27)), (5, (5, 25)), (7, (7, 49)))
      for q in qs]


@pytest.mark.parametrize("q", QS, ids=lambda q: f"q{q.q}")
def test_constituent_length_classifier(q):
    for ell in range(q.q, 2 * q.q + 1):
        hit = constituent_length_test(ell, q)
        brute = all(math.comb(j, j - ell + 1) % q.p == 0 for j in range(ell, 2 * q.q - 1))
        assert (hit is not None) == brute == constituent_closed_form(ell, q)
        if hit is not None:
            assert hit.value == ell


def test_constituent_value_type():
    q = PrimePower.of(4, 2)
    assert AdmissibleConstituent(q).value == 8 and AdmissibleConstituent(q).full
    assert AdmissibleConstituent(q, 1).value == 6
    assert str(AdmissibleConstituent(q, 2)) == "Deficit(s=2)"
    with pytest.raises(ValueError):
        AdmissibleConstituent(q, 3)
    with pytest.raises(ValueError):
        constituent_length_test(3, q)


@pytest.mark.parametrize("q", QS, ids=lambda q: f"q{q.q}")
def test_reflection_identity(q):
    assert reflection_identity_check(q)


def test_reflection_identity_oracle_small():
    # brute force with exact binomials for one q of each prime
    for p, q in ((2, 8), (3, 9), (5, 5)):
        for a in range(q):
            for b in range(a + 1):
                lhs = (-1) ** a * math.comb(a, b)
                rhs = (-1) ** b * math.comb(q - 1 - b, q - 1 - a)
                assert (lhs - rhs) % p == 0
