"""Theorem checks over enumerated tables.

Truncated tables only bound the invariants of an infinite algebra, so each
check states how deep a table must be before it is asserted; shallower
tables are counted as unconstrained, never as violations.  Every check
accepts an already enumerated ``tables`` sequence in place of running the
search again.

* constituents: ``ell_r`` is asserted once the onset of the following
  constituent, i.e. the deviation that ends it, lies within ``N - 1 - lookahead``.
* second diamond: ``k`` is asserted for tables reaching degree
  ``2k + 3 + lookahead``; the local relations at ``k + 1`` are checked as soon
  as that degree exists.
"""
from __future__ import annotations

import time
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

from ..arith import PrimeChar, as_prime_power
from ..congruence import classify_final_k, constituent_closed_form, first_constituent_test
from ..lie_engine.elements import Unbounded
from ..lie_engine.maxclass import MaxClassTable, constituent_profile, jacobi_consistency, sandwich_check
from ..lie_engine.full_check import TableFrontier
from ..lie_engine.thin import (CoveringError, ThinTable, diamond_profile, metabelian_quotient_check,
                               thin_jacobi_consistency)
from .config import SearchConfig, SearchStats
from .maxclass_search import enumerate_maxclass
from .thin_search import enumerate_thin


@dataclass
class VerificationReport:
    config: SearchConfig
    theorem: str
    count: int = 0
    profiles: List[Dict[str, Any]] = field(default_factory=list)
    violations: List[str] = field(default_factory=list)
    stats: SearchStats = field(default_factory=SearchStats)
    observed: Dict[str, Any] = field(default_factory=dict)
    asserted: int = 0
    unconstrained: int = 0
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def as_dict(self) -> Dict[str, Any]:
        return {
            "theorem": self.theorem,
            "config": self.config.echo(),
            "count": self.count,
            "asserted": self.asserted,
            "unconstrained": self.unconstrained,
            "observed": self.observed,
            "violations": list(self.violations),
            "pass": self.passed,
            "branch_statistics": self.stats.as_dict(),
            "profiles": self.profiles,
        }


def _sentinel(v):
    return "Unbounded" if v is Unbounded else v


# -- maximal class ------------------------------------------------------------

def _maxclass_tables(config: SearchConfig, report: VerificationReport, reverify: bool,
                     tables: Optional[Iterable[MaxClassTable]] = None,
                     cross_check: bool = False) -> Iterable[MaxClassTable]:
    if config.kind != "maxclass":
        raise ValueError("constituent checks need kind = 'maxclass'")
    source = enumerate_maxclass(config, report.stats) if tables is None else tables
    for idx, table in enumerate(source):
        report.count += 1
        if reverify:
            res = jacobi_consistency(table, cross_check=cross_check)
            if not res.ok:
                report.violations.append(f"table {idx}: emitted but inconsistent ({res.failure})")
            if not TableFrontier(table).ok:
                report.violations.append(f"table {idx}: rejected by the generic engine")
        yield table


def _structural_constituents(idx: int, table: MaxClassTable, prof, report: VerificationReport) -> None:
    if not sandwich_check(table):
        report.violations.append(f"table {idx}: (ad y)^2 != 0")
    if prof.ell is Unbounded:
        return
    if prof.ell % 2:
        report.violations.append(f"table {idx}: odd first constituent length {prof.ell}")
    for r, lr in enumerate(prof.subsequent, start=2):
        if lr <= 1:
            report.violations.append(f"table {idx}: constituent {r} has length {lr} <= 1")
        if lr > prof.ell:
            report.violations.append(f"table {idx}: constituent {r} longer than the first ({lr} > {prof.ell})")
        if 2 * lr < prof.ell:
            report.violations.append(f"table {idx}: constituent {r} shorter than ell/2 ({lr} < {prof.ell}/2)")
    if prof.subsequent and prof.subsequent[0] >= prof.ell:
        report.violations.append(f"table {idx}: ell_2 = {prof.subsequent[0]} is not below ell = {prof.ell}")


def asserted_lengths(prof, maxdeg: int, lookahead: int) -> List[int]:
    """Lengths ``ell_1, ell_2, ...`` whose successor's onset lies within ``maxdeg - 1 - lookahead``.

    ``ell_r`` ends at ``positions[r - 1]`` where constituent ``r + 1`` starts; the
    first length is asserted together with ``ell_2``.
    """
    limit = maxdeg - 1 - lookahead
    pos = [p for p in prof.positions if p <= limit]
    if len(pos) < 2:
        return []
    return [pos[0]] + [b - a for a, b in zip(pos, pos[1:])]


def verify_first_constituent(config: SearchConfig, reverify: bool = False, tables=None,
                             cross_check: bool = False) -> VerificationReport:
    """First constituent ``2q``; second constituent ``q`` when ``p`` is odd."""
    t0 = time.perf_counter()
    report = VerificationReport(config, "first-constituent")
    char = config.char
    N = config.maxdeg
    ells: Counter = Counter()
    pairs: Counter = Counter()
    for idx, table in enumerate(_maxclass_tables(config, report, reverify, tables, cross_check)):
        prof = constituent_profile(table)
        _structural_constituents(idx, table, prof, report)
        limit = N - 1 - config.lookahead
        determined = prof.ell is not Unbounded and len(prof.positions) >= 2 and prof.positions[1] <= limit
        report.profiles.append({"table": idx, "ell": _sentinel(prof.ell), "subsequent": list(prof.subsequent),
                                "asserted": determined})
        if not determined:
            report.unconstrained += 1
            continue
        report.asserted += 1
        ell, ell2 = prof.ell, prof.subsequent[0]
        ells[ell] += 1
        pairs[(ell, ell2)] += 1
        q = first_constituent_test(ell, char) if ell % 2 == 0 else None
        if q is None:
            report.violations.append(f"table {idx}: first constituent length {ell} is not twice a power of {char.p}")
            continue
        if char.p % 2 == 1 and ell2 != ell // 2:
            report.violations.append(f"table {idx}: ell = {ell} but ell_2 = {ell2} != {ell // 2}")
    report.observed = {"ell": sorted(ells), "ell_ell2": sorted([list(k) for k in pairs])}
    report.seconds = time.perf_counter() - t0
    return report


def verify_any_constituent(config: SearchConfig, reverify: bool = False, tables=None,
                           cross_check: bool = False) -> VerificationReport:
    """Every constituent length is ``2q`` or ``2q - p^s`` with ``p^s <= q``."""
    t0 = time.perf_counter()
    report = VerificationReport(config, "any-constituent")
    char = config.char
    by_q: Dict[int, set] = defaultdict(set)
    for idx, table in enumerate(_maxclass_tables(config, report, reverify, tables, cross_check)):
        prof = constituent_profile(table)
        _structural_constituents(idx, table, prof, report)
        lengths = asserted_lengths(prof, config.maxdeg, config.lookahead)
        report.profiles.append({"table": idx, "ell": _sentinel(prof.ell), "subsequent": list(prof.subsequent),
                                "asserted_lengths": lengths})
        if len(lengths) < 2:
            report.unconstrained += 1
            continue
        report.asserted += 1
        ell = lengths[0]
        pq = first_constituent_test(ell, char) if ell % 2 == 0 else None
        if pq is None:
            report.violations.append(f"table {idx}: first constituent length {ell} is not twice a power of {char.p}")
            continue
        q = pq.q
        by_q[q].update(lengths[1:])
        if lengths[1] == 2 * q:
            report.violations.append(f"table {idx}: ell_2 equals ell = {2 * q}")
        if char.p % 2 == 1 and lengths[1] != q:
            report.violations.append(f"table {idx}: ell_2 = {lengths[1]} != q = {q}")
        for r, lr in enumerate(lengths[1:], start=2):
            if not q <= lr <= 2 * q or not constituent_closed_form(lr, pq):
                report.violations.append(f"table {idx}: ell_{r} = {lr} is neither 2q nor 2q - p^s (q = {q})")
    report.observed = {"lengths_by_q": {str(q): sorted(v, reverse=True) for q, v in sorted(by_q.items())}}
    report.seconds = time.perf_counter() - t0
    return report


# -- thin -----------------------------------------------------------------------------

def h_cases(k: int, char: PrimeChar) -> List[Tuple[str, int, int]]:
    """Applicable ``(case, lower, upper)`` bounds on ``h`` for second diamond ``k``."""
    cases = [("general", (k - 1) // 2, k + 1)]
    if k <= 3:
        return cases
    p = char.p
    if p:
        if (k + 1) % 2 == 0:
            q2 = (k + 1) // 2
            if as_prime_power(q2, p) is not None and q2 > 1:
                if p == 2:
                    cases.append(("k=2q-1, p=2", q2 - 1, 2 * q2))
                else:
                    cases.append(("k=2q-1", q2 - 1, q2 - 1))
        if as_prime_power(k, p) is not None:
            cases.append(("k=q", (k - 1) // 2, k))
    if k == 5 and p != 5:
        cases.append(("k=5", 2, 2))
    return cases


def h_bounds(k: int, char: PrimeChar) -> Tuple[int, int]:
    cases = h_cases(k, char)
    return max(c[1] for c in cases), min(c[2] for c in cases)


def _thin_tables(config: SearchConfig, report: VerificationReport, reverify: bool,
                 tables: Optional[Iterable[ThinTable]] = None, cross_check: bool = False) -> Iterable[ThinTable]:
    if config.kind != "thin":
        raise ValueError("diamond checks need kind = 'thin'")
    source = enumerate_thin(config, report.stats) if tables is None else tables
    for idx, table in enumerate(source):
        report.count += 1
        if reverify:
            res = thin_jacobi_consistency(table, cross_check=cross_check)
            if not res.ok:
                report.violations.append(f"table {idx}: emitted but inconsistent ({res.failure})")
        yield table


def _diamond_local_checks(idx: int, table: ThinTable, prof, report: VerificationReport) -> None:
    k = prof.k
    if k % 2 == 0:
        report.violations.append(f"table {idx}: second diamond in even degree {k}")
    if not metabelian_quotient_check(table, k):
        report.violations.append(f"table {idx}: L/L^k is not metabelian (k = {k})")
    # the relations below live in degree k + 1
    if k + 1 <= table.maxdeg:
        if prof.half_not_divisible is False:
            report.violations.append(f"table {idx}: p divides (k-1)/2 for k = {k}")
        if prof.diamond_relation is False:
            report.violations.append(f"table {idx}: [vxy] != ((k-1)/2)[vyx] for k = {k}")
        if k > 3 and prof.vyy_zero is False:
            report.violations.append(f"table {idx}: [vyy] != 0 for k = {k}")


def verify_second_diamond(config: SearchConfig, reverify: bool = False, tables=None,
                          cross_check: bool = False) -> VerificationReport:
    """``k`` is 3, 5, q or 2q - 1 (3 or 2q - 1 when p = 2; 3 or 5 when p = 0)."""
    t0 = time.perf_counter()
    report = VerificationReport(config, "second-diamond")
    char = config.char
    deep_k: Counter = Counter()
    shallow_k: Counter = Counter()
    for idx, table in enumerate(_thin_tables(config, report, reverify, tables, cross_check)):
        try:
            prof = diamond_profile(table)
        except CoveringError as exc:
            report.violations.append(f"table {idx}: {exc}")
            continue
        entry = {"table": idx, "k": prof.k, "h": _sentinel(prof.h), "degree": table.maxdeg}
        report.profiles.append(entry)
        if prof.k is None:
            report.unconstrained += 1
            continue
        _diamond_local_checks(idx, table, prof, report)
        k = prof.k
        deep = 2 * k + 3 + config.lookahead <= table.maxdeg
        entry["asserted"] = deep
        if not deep:
            shallow_k[k] += 1
            report.unconstrained += 1
            continue
        report.asserted += 1
        deep_k[k] += 1
        if classify_final_k(k, char) is None:
            report.violations.append(f"table {idx}: second diamond degree {k} is not admissible for p = {char.p}")
    report.observed = {"k_asserted": sorted(deep_k), "k_unconstrained": sorted(shallow_k),
                       "k_counts": {str(k): v for k, v in sorted((deep_k + shallow_k).items())}}
    report.seconds = time.perf_counter() - t0
    return report


def verify_h_values(config: SearchConfig, reverify: bool = False, tables=None,
                    cross_check: bool = False) -> VerificationReport:
    """``(k-1)/2 <= h <= k+1`` and the sharper case bounds for ``k > 3``."""
    t0 = time.perf_counter()
    report = VerificationReport(config, "h-values")
    char = config.char
    seen: Dict[int, set] = defaultdict(set)
    for idx, table in enumerate(_thin_tables(config, report, reverify, tables, cross_check)):
        try:
            prof = diamond_profile(table)
        except CoveringError as exc:
            report.violations.append(f"table {idx}: {exc}")
            continue
        report.profiles.append({"table": idx, "k": prof.k, "h": _sentinel(prof.h), "degree": table.maxdeg})
        if prof.k is None:
            report.unconstrained += 1
            continue
        k, h = prof.k, prof.h
        lo, hi = h_bounds(k, char)
        if h is Unbounded:
            # h <= hi would have shown up by degree k + hi
            if k + hi + config.lookahead <= table.maxdeg and 2 * k + 3 <= table.maxdeg:
                report.violations.append(f"table {idx}: h not reached by degree {table.maxdeg} although h <= {hi} (k = {k})")
            else:
                report.unconstrained += 1
            continue
        report.asserted += 1
        seen[k].add(h)
        if not lo <= h <= hi:
            names = ", ".join(c[0] for c in h_cases(k, char))
            report.violations.append(f"table {idx}: h = {h} outside [{lo}, {hi}] for k = {k} ({names})")
    report.observed = {"h_by_k": {str(k): sorted(v) for k, v in sorted(seen.items())}}
    report.seconds = time.perf_counter() - t0
    return report
