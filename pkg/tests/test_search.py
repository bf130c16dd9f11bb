import pytest

from thinlie.lie_engine.elements import Unbounded
from thinlie.lie_engine.full_check import TableFrontier
from thinlie.lie_engine.maxclass import MaxClassTable, constituent_profile, jacobi_consistency
from thinlie.lie_engine.thin import covering_violation, diamond_profile, metabelian_quotient_check, thin_jacobi_consistency
from thinlie.search.config import SearchConfig, SearchStats
from thinlie.search.maxclass_search import enumerate_maxclass, naive_maxclass
from thinlie.search.thin_search import certificate_depth, enumerate_thin


def maxclass(p, N, **kw):
    return list(enumerate_maxclass(SearchConfig(p, N, "maxclass", **kw)))


def thin(p, N, **kw):
    return list(enumerate_thin(SearchConfig(p, N, "thin", **kw)))


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(2, 5, "maxclass")
    with pytest.raises(ValueError):
        SearchConfig(2, 8, "other")
    with pytest.raises(ValueError):
        SearchConfig(2, 8, "maxclass", lookahead=-1)
    with pytest.raises(ValueError):
        SearchConfig(4, 8, "maxclass")
    with pytest.raises(ValueError):
        SearchConfig(2, 8, "maxclass", second_diamond=5)
    with pytest.raises(ValueError):
        enumerate_thin(SearchConfig(2, 8, "maxclass")).__next__()


# -- maximal class --------------------------------------------------------------------

def test_maxclass_p2_n10_examples():
    tables = maxclass(2, 10)
    assert MaxClassTable.metabelian(2, 10) in tables
    ells = [constituent_profile(t).ell for t in tables]
    assert 4 in ells
    assert all(e is Unbounded or e % 2 == 0 for e in ells)


def test_maxclass_p3_n20_first_constituent():
    for t in maxclass(3, 20):
        prof = constituent_profile(t)
        if prof.ell is not Unbounded and len(prof.positions) > 1:
            assert prof.ell in (6, 18)


@pytest.mark.parametrize("N", range(6, 13))
def test_maxclass_matches_naive_oracle_p2(N):
    cfg = SearchConfig(2, N, "maxclass")
    assert sorted(map(repr, enumerate_maxclass(cfg))) == sorted(map(repr, naive_maxclass(cfg)))


@pytest.mark.parametrize("N", range(6, 9))
def test_maxclass_matches_naive_oracle_p3(N):
    cfg = SearchConfig(3, N, "maxclass")
    assert sorted(map(repr, enumerate_maxclass(cfg))) == sorted(map(repr, naive_maxclass(cfg)))


def test_maxclass_without_normalization_contains_normalized():
    norm = set(maxclass(3, 12))
    free = set(maxclass(3, 12, normalize=False))
    assert norm <= free and len(free) > len(norm)


@pytest.mark.parametrize("p,N", [(2, 24), (3, 24), (5, 20), (7, 20)])
def test_maxclass_soundness(p, N):
    for t in maxclass(p, N):
        assert jacobi_consistency(t).ok
        assert TableFrontier(t).ok


@pytest.mark.parametrize("p,N,M", [(2, 20, 14), (3, 20, 11), (5, 16, 9)])
def test_maxclass_monotone(p, N, M):
    small = set(maxclass(p, M))
    assert {t.restrict(M) for t in maxclass(p, N)} <= small


def test_maxclass_stats():
    stats = SearchStats()
    tables = list(enumerate_maxclass(SearchConfig(2, 14, "maxclass"), stats))
    assert stats.emitted == len(tables)
    assert stats.nodes[14] == len(tables)
    assert not stats.sampled
    z = SearchStats()
    list(enumerate_maxclass(SearchConfig(0, 10, "maxclass"), z))
    assert z.sampled and not z.as_dict()["exhaustive"]


# -- thin ---------------------------------------------------------------------------------

def test_thin_p5_has_k5():
    tables = thin(5, 13, second_diamond=5)
    assert tables and all(diamond_profile(t).k == 5 for t in tables)


def test_thin_p2_n17_deep_k():
    ks = set()
    for t in thin(2, 17, certificate_cut=True):
        prof = diamond_profile(t)
        if prof.k is not None and 2 * prof.k + 3 <= t.maxdeg:
            ks.add(prof.k)
    assert ks == {3, 7}


@pytest.mark.parametrize("p,N", [(2, 12), (3, 10), (5, 7), (0, 6)])
def test_thin_soundness(p, N):
    tables = thin(p, N)
    assert tables
    for t in tables:
        assert covering_violation(t) is None
        assert thin_jacobi_consistency(t).ok
        k = t.second_diamond()
        if k is not None:
            assert metabelian_quotient_check(t, k)


def test_thin_includes_diamond_free_table():
    tables = thin(3, 9)
    assert sum(t.second_diamond() is None for t in tables) == 1


@pytest.mark.parametrize("p,N,M", [(2, 13, 9), (3, 11, 8)])
def test_thin_monotone(p, N, M):
    small = set(thin(p, M))
    assert {t.restrict(M) for t in thin(p, N)} <= small


def test_certificate_cut_keeps_every_deep_restriction():
    full = thin(2, 15)
    cut = set(thin(2, 15, certificate_cut=True))
    cfg = SearchConfig(2, 15, "thin", certificate_cut=True)
    for t in full:
        k = t.second_diamond()
        depth = certificate_depth(k, cfg) if k is not None else None
        if depth is not None and depth < t.maxdeg:
            assert t.restrict(depth) in cut
        else:
            assert t in cut


def test_thin_stats_record_covering_pruning():
    stats = SearchStats()
    list(enumerate_thin(SearchConfig(3, 10, "thin"), stats))
    assert sum(stats.pruned_covering.values()) > 0


# -- determinism -----------------------------------------------------------------------------

def test_repeat_runs_identical():
    assert maxclass(3, 18) == maxclass(3, 18)
    assert thin(3, 10) == thin(3, 10)


@pytest.mark.parametrize("kind,p,N,split", [("maxclass", 2, 22, 0), ("maxclass", 3, 20, 6),
                                            ("thin", 3, 10, 0), ("thin", 2, 12, 5)])
def test_parallel_matches_serial(kind, p, N, split):
    serial_stats, par_stats = SearchStats(), SearchStats()
    run = enumerate_maxclass if kind == "maxclass" else enumerate_thin
    serial = list(run(SearchConfig(p, N, kind), serial_stats))
    par = list(run(SearchConfig(p, N, kind, jobs=2, split_depth=split), par_stats))
    assert serial == par
    assert serial_stats.as_dict() == par_stats.as_dict()
