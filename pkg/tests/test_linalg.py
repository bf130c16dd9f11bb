from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from thinlie.arith import PrimeChar
from thinlie.lie_engine import graded, linalg

primes = st.sampled_from([2, 3, 5, 7])


def gaussian_binomial(m, c, q):
    num = den = 1
    for i in range(c):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@given(p=primes, data=st.data())
def test_nullspace_and_rank(p, data):
    char = PrimeChar(p)
    nrows = data.draw(st.integers(0, 5))
    ncols = data.draw(st.integers(1, 6))
    rows = [[data.draw(st.integers(0, p - 1)) for _ in range(ncols)] for _ in range(nrows)]
    ns = linalg.nullspace(char, rows, ncols)
    assert linalg.rank(char, rows, ncols) + len(ns) == ncols
    for v in ns:
        assert all(sum(a * b for a, b in zip(r, v)) % p == 0 for r in rows)
    if ns:
        assert linalg.rank(char, ns, ncols) == len(ns)


def test_rational_nullspace():
    char = PrimeChar(0)
    ns = linalg.nullspace(char, [[1, 2, 3], [2, 4, 7]], 3)
    assert len(ns) == 1
    v = ns[0]
    assert v[0] + 2 * v[1] + 3 * v[2] == 0 and 2 * v[0] + 4 * v[1] + 7 * v[2] == 0
    assert linalg.inverse(char, [[1, 2], [3, 4]]) == [[-2, 1], [Fraction(3, 2), Fraction(-1, 2)]]


@given(p=primes, data=st.data())
def test_inverse(p, data):
    char = PrimeChar(p)
    m = [[data.draw(st.integers(0, p - 1)) for _ in range(2)] for _ in range(2)]
    if not linalg.det2(char, m[0][0], m[0][1], m[1][0], m[1][1]):
        return
    inv = linalg.inverse(char, m)
    assert linalg.mat_mul(char, inv, m) == [[1, 0], [0, 1]]


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("c,m", [(1, 1), (1, 3), (2, 2), (2, 4)])
def test_rref_matrices_count_subspaces(p, c, m):
    mats = list(linalg.rref_matrices(PrimeChar(p), c, m))
    assert len(mats) == gaussian_binomial(m, c, p)
    assert len({tuple(map(tuple, x)) for x in mats}) == len(mats)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_binary_form_roots_by_brute_force(p):
    char = PrimeChar(p)
    for a, b, c in product(range(p), repeat=3):
        brute = any((a * s * s + b * s * t + c * t * t) % p == 0
                    for s, t in product(range(p), repeat=2) if (s, t) != (0, 0))
        assert linalg.binary_form_has_root(char, a, b, c) == brute


def test_rational_binary_forms():
    char = PrimeChar(0)
    assert linalg.binary_form_has_root(char, 1, 0, -4)
    assert not linalg.binary_form_has_root(char, 1, 0, 1)
    assert not linalg.binary_form_has_root(char, 1, 0, -2)
    assert linalg.binary_form_has_root(char, Fraction(1, 4), 0, -1)


def test_canonical_projective():
    assert linalg.canonical_projective(PrimeChar(5), [0, 3, 1]) == (0, 1, 2)


def covering_brute(p, dl, dn, mx, my):
    char = PrimeChar(p)
    for z in product(range(p), repeat=dl):
        if not any(z):
            continue
        cols = [linalg.mat_vec(char, mx, z), linalg.mat_vec(char, my, z)]
        if linalg.rank(char, cols, dn) < dn:
            return False
    return True


@given(p=primes, dl=st.sampled_from([1, 2]), dn=st.sampled_from([1, 2]), data=st.data())
def test_covering_check_by_brute_force(p, dl, dn, data):
    ent = st.integers(0, p - 1)
    mx = [[data.draw(ent) for _ in range(dl)] for _ in range(dn)]
    my = [[data.draw(ent) for _ in range(dl)] for _ in range(dn)]
    assert graded.covering_holds(PrimeChar(p), dl, dn, mx, my) == covering_brute(p, dl, dn, mx, my)


def test_candidate_order():
    assert graded.candidate_order(2) == [(1, graded.X), (1, graded.Y), (0, graded.X), (0, graded.Y)]
    assert graded.symbol_index(1, graded.Y) == 3
