import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from thinlie.arith import (PrimeChar, PrimePower, as_char, as_prime_power, binom_exact, binom_mod, is_prime,
                           lucas_digits, powers_of)

primes = st.sampled_from([2, 3, 5, 7, 11])


# -- examples ----------------------------------------------------------------

@pytest.mark.parametrize("a,b,want", [(0, 0, 1), (7, 3, 35), (5, 9, 0)])
def test_binom_exact_examples(a, b, want):
    assert binom_exact(a, b) == want


@pytest.mark.parametrize("a,b,p,want", [(7, 3, 2, 1), (6, 3, 3, 2), (11, 0, 5, 1), (11, 0, 0, 1)])
def test_binom_mod_examples(a, b, p, want):
    assert binom_mod(a, b, p) == want


def test_lucas_digits_examples():
    assert lucas_digits(35, 2) == [1, 1, 0, 0, 0, 1]
    assert lucas_digits(0, 5) == [0]
    for p in (2, 3, 5):
        for s in range(6):
            assert lucas_digits(p ** s, p) == [0] * s + [1]


def test_as_prime_power_examples():
    assert as_prime_power(27, 3) == 3
    assert as_prime_power(12, 2) is None
    assert all(as_prime_power(1, p) == 0 for p in (2, 3, 5, 7))


def test_prime_char_validation():
    assert PrimeChar(0).p == 0 and not PrimeChar(0).finite
    assert as_char(7) == PrimeChar(7)
    with pytest.raises(ValueError):
        PrimeChar(9)
    with pytest.raises(TypeError):
        PrimeChar(True)


def test_is_prime_against_sieve():
    n = 2000
    sieve = [True] * (n + 1)
    sieve[0] = sieve[1] = False
    for i in range(2, int(n ** 0.5) + 1):
        for j in range(i * i, n + 1, i):
            sieve[j] = False
    assert [i for i in range(n + 1) if is_prime(i)] == [i for i in range(n + 1) if sieve[i]]


def test_prime_power_value():
    q = PrimePower.of(49, 7)
    assert (q.p, q.s, q.q) == (7, 2, 49)
    with pytest.raises(ValueError):
        PrimePower.of(12, 2)
    with pytest.raises(ValueError):
        PrimePower(4, 1)


def test_powers_of():
    assert list(powers_of(3, 30)) == [1, 3, 9, 27]


def test_scalar_arithmetic_zero_char_is_rational():
    c = PrimeChar(0)
    assert c.div(1, 2) == Fraction(1, 2)
    assert c.congruent(4, 4) and not c.congruent(4, 9)
    assert c.divides(0) and not c.divides(5)
    f = PrimeChar(5)
    assert f.inv(2) == 3 and f.reduce(-1) == 4 and f.divides(10)


# -- oracle properties ---------------------------------------------------------

def test_binom_exact_matches_math_comb():
    for a in range(0, 200):
        for b in range(0, a + 3):
            assert binom_exact(a, b) == math.comb(a, b)


@given(a=st.integers(0, 1024), b=st.integers(0, 1024), p=primes)
def test_lucas_matches_exact_reduction(a, b, p):
    assert binom_mod(a, b, p) == math.comb(a, b) % p


@given(a=st.integers(0, 511), b=st.integers(0, 511), p=primes)
def test_pascal_identity_mod_p(a, b, p):
    assert binom_mod(a + 1, b + 1, p) == (binom_mod(a, b, p) + binom_mod(a, b + 1, p)) % p


@given(a=st.integers(0, 512), data=st.data(), p=primes)
def test_symmetry_mod_p(a, data, p):
    b = data.draw(st.integers(0, a))
    assert binom_mod(a, b, p) == binom_mod(a, a - b, p)


@given(a=st.integers(0, 10 ** 9), p=st.integers(2, 40))
def test_lucas_digits_round_trip(a, p):
    d = lucas_digits(a, p)
    assert all(0 <= x < p for x in d)
    assert d == [0] or d[-1] != 0
    assert sum(x * p ** i for i, x in enumerate(d)) == a


@given(n=st.integers(1, 10 ** 6), p=primes)
def test_as_prime_power_oracle(n, p):
    s = as_prime_power(n, p)
    powers = {p ** k: k for k in range(0, 30)}
    assert s == powers.get(n)
