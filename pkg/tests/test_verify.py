import pytest

from thinlie.arith import PrimeChar
from thinlie.lie_engine.maxclass import ConstituentProfile, MaxClassTable, X_POINT, Y_POINT
from thinlie.search.config import SearchConfig
from thinlie.search.verify import (asserted_lengths, h_bounds, h_cases, verify_any_constituent,
                                   verify_first_constituent, verify_h_values, verify_second_diamond)


def cfg(p, N, kind, **kw):
    return SearchConfig(p, N, kind, **kw)


def test_asserted_lengths_respect_lookahead():
    prof = ConstituentProfile(8, (6, 7, 4), 29, (8, 14, 21, 25))
    assert asserted_lengths(prof, 30, 0) == [8, 6, 7, 4]
    assert asserted_lengths(prof, 30, 5) == [8, 6, 7]
    assert asserted_lengths(prof, 30, 15) == [8, 6]
    assert asserted_lengths(prof, 30, 16) == []


def test_h_bounds_cases():
    assert h_bounds(5, PrimeChar(3)) == (2, 2)     # 2q - 1 with q = 3
    assert h_bounds(5, PrimeChar(7)) == (2, 2)     # the k = 5 case
    assert h_bounds(5, PrimeChar(5)) == (2, 5)     # k = q
    assert h_bounds(7, PrimeChar(2)) == (3, 8)     # 2q - 1 with p = 2
    assert h_bounds(9, PrimeChar(3)) == (4, 9)
    assert h_bounds(9, PrimeChar(5)) == (4, 4)
    assert h_bounds(3, PrimeChar(5)) == (1, 4)
    assert [c[0] for c in h_cases(3, PrimeChar(5))] == ["general"]


def test_first_constituent_examples():
    r = verify_first_constituent(cfg(2, 33, "maxclass"))
    assert r.passed and r.observed["ell"] == [4, 8, 16]
    r = verify_first_constituent(cfg(3, 21, "maxclass"))
    assert r.passed and r.observed["ell_ell2"] == [[6, 3]]
    r = verify_first_constituent(cfg(5, 33, "maxclass"))
    assert r.passed and r.observed["ell_ell2"] == [[10, 5]]
    assert r.count == len(r.profiles) == r.asserted + r.unconstrained


def test_any_constituent_examples():
    r = verify_any_constituent(cfg(2, 24, "maxclass"))
    assert r.passed and r.observed["lengths_by_q"]["2"] == [4, 3, 2]
    r = verify_any_constituent(cfg(2, 33, "maxclass"))
    assert r.passed and r.observed["lengths_by_q"]["4"] == [8, 7, 6, 4]
    r = verify_any_constituent(cfg(3, 27, "maxclass"))
    assert r.passed and set(r.observed["lengths_by_q"]["3"]) <= {6, 5, 3}


def test_reports_flag_violations_on_bad_tables():
    # an inconsistent table with first constituent 6 in characteristic 2
    bad = MaxClassTable.from_centralizers(2, [Y_POINT] * 4 + [X_POINT] + [Y_POINT] * 2 + [X_POINT] + [Y_POINT] * 3)
    r = verify_first_constituent(cfg(2, 12, "maxclass"), reverify=True, tables=[bad])
    assert not r.passed
    assert any("not twice a power" in v for v in r.violations)
    assert any("inconsistent" in v for v in r.violations)
    assert r.as_dict()["pass"] is False


def test_second_diamond_examples():
    r = verify_second_diamond(cfg(2, 17, "thin", certificate_cut=True))
    assert r.passed and r.observed["k_asserted"] == [3, 7]
    r = verify_second_diamond(cfg(3, 23, "thin", certificate_cut=True))
    assert r.passed and r.observed["k_asserted"] == [3, 5, 9]


def test_second_diamond_k7_present_for_p7():
    r = verify_second_diamond(cfg(7, 17, "thin", second_diamond=7), reverify=True)
    assert r.passed and r.observed["k_asserted"] == [7]


def test_h_values_examples():
    r = verify_h_values(cfg(3, 10, "thin", second_diamond=5))
    assert r.passed and r.observed["h_by_k"] == {"5": [2]}
    r = verify_h_values(cfg(7, 13, "thin", second_diamond=5))
    assert r.passed and r.observed["h_by_k"] == {"5": [2]}
    r = verify_h_values(cfg(2, 17, "thin", second_diamond=7))
    assert r.passed and r.observed["h_by_k"] == {"7": [3, 5, 6]}


def test_kind_mismatch():
    with pytest.raises(ValueError):
        verify_h_values(cfg(3, 10, "maxclass"))
    with pytest.raises(ValueError):
        verify_first_constituent(cfg(3, 10, "thin"))
