"""Command-line interface.

Every command prints one report document (JSON, one line) on stdout and
exits with 0 when the report has no violations, 1 otherwise and 2 on usage
or configuration errors.
"""
from __future__ import annotations

import sys
import time
from typing import Any, Dict, List, Optional, TextIO

import click

from .. import congruence
from ..arith import PrimePower, as_char, as_prime_power
from ..lie_engine.maxclass import (MaxClassTable, constituent_profile, jacobi_consistency, sandwich_check)
from ..lie_engine.thin import CoveringError, diamond_profile, thin_jacobi_consistency
from ..search import verify as verify_mod
from ..search.config import SearchConfig, SearchStats
from ..search.maxclass_search import enumerate_maxclass
from ..search.thin_search import enumerate_thin
from .documents import DocumentError, ReportDocument, algebra_document, dumps, loads_algebras, scalar_to_str

EXIT_PASS, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
CROSS_CHECK_LIMIT = 16  # the all-triples check is only run up to this degree


def _char_option(f):
    return click.option("--p", "p", type=int, required=True, help="Characteristic: 0 or a prime.")(f)


def _finish(report: ReportDocument, t0: float) -> None:
    report.duration = time.perf_counter() - t0
    click.echo(report.dumps())
    sys.exit(EXIT_PASS if report.passed else EXIT_VIOLATION)


def _config(p: int, degree: int, kind: str, **kw) -> SearchConfig:
    try:
        return SearchConfig(as_char(p), degree, kind, **kw)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None


@click.group()
def main() -> None:
    """Truncated graded Lie algebras of maximal class and thin Lie algebras."""


# -- admissible ------------------------------------------------------------------

@main.command()
@_char_option
@click.option("--max", "max_value", type=int, required=True, help="Largest odd value to tabulate.")
@click.option("--extended-range", is_flag=True, help="Also require the congruence at the last index.")
def admissible(p: int, max_value: int, extended_range: bool) -> None:
    """Second-diamond candidates: congruence sweep against the classifiers."""
    t0 = time.perf_counter()
    if max_value < 3:
        raise click.UsageError("--max must be at least 3")
    try:
        char = as_char(p)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    rows = []
    violations = []
    for v in range(3, max_value + 1, 2):
        n = (v - 1) // 2
        hyp = congruence.chain_hypothesis_test(n, char)
        ext = congruence.chain_hypothesis_test(n, char, extended=True)
        lemma = congruence.classify_admissible_k(v, char)
        final = congruence.classify_final_k(v, char)
        rows.append({"value": v, "hypothesis": hyp, "extended_range": ext,
                     "lemma": str(lemma) if lemma else None, "theorem": str(final) if final else None})
        if hyp != (lemma is not None):
            violations.append(f"{v}: congruence sweep says {hyp} but the lemma classifier says {lemma}")
    chosen = "extended_range" if extended_range else "hypothesis"
    results = {
        "rows": rows,
        "admissible": [r["value"] for r in rows if r[chosen]],
        "lemma_admissible": [r["value"] for r in rows if r["lemma"]],
        "theorem_admissible": [r["value"] for r in rows if r["theorem"]],
    }
    config = {"p": char.p, "max": max_value, "extended_range": extended_range}
    _finish(ReportDocument("admissible", config, results, violations), t0)


# -- enumerate -------------------------------------------------------------------

def _cross_check(table, cross: bool) -> Optional[str]:
    if not cross or table.maxdeg > CROSS_CHECK_LIMIT:
        return None
    if isinstance(table, MaxClassTable):
        res = jacobi_consistency(table, cross_check=True)
    else:
        res = thin_jacobi_consistency(table, cross_check=True)
    return None if res.ok else str(res.failure)


@main.command("enumerate")
@click.option("--kind", type=click.Choice(["maxclass", "thin"]), required=True)
@_char_option
@click.option("--degree", type=int, required=True, help="Truncation degree N.")
@click.option("--out", "out", type=click.Path(dir_okay=False, writable=True), default=None,
              help="File for the algebra documents (default: stdout, before the report).")
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--lookahead", type=int, default=0, show_default=True)
@click.option("--certificate-cut", is_flag=True,
              help="Thin only: stop a branch at degree 2k+3+lookahead once k is known.")
@click.option("--second-diamond", "second_diamond", type=int, default=None,
              help="Thin only: restrict to tables whose second diamond is in this degree.")
@click.option("--cross-check", is_flag=True, help=f"Re-check every table with all triples (N <= {CROSS_CHECK_LIMIT}).")
def enumerate_cmd(kind: str, p: int, degree: int, out: Optional[str], jobs: int, lookahead: int,
                  certificate_cut: bool, second_diamond: Optional[int], cross_check: bool) -> None:
    """Write every consistent canonical table, one document per line."""
    t0 = time.perf_counter()
    cfg = _config(p, degree, kind, jobs=jobs, lookahead=lookahead, certificate_cut=certificate_cut,
                  second_diamond=second_diamond)
    stats = SearchStats()
    stream = enumerate_maxclass(cfg, stats) if kind == "maxclass" else enumerate_thin(cfg, stats)
    violations: List[str] = []
    try:
        fh: TextIO = open(out, "w", encoding="utf-8") if out else sys.stdout
    except OSError as exc:
        raise click.UsageError(f"cannot write {out}: {exc}") from None
    count = 0
    try:
        for idx, table in enumerate(stream):
            fh.write(dumps(algebra_document(table)) + "\n")
            count += 1
            bad = _cross_check(table, cross_check)
            if bad:
                violations.append(f"table {idx}: {bad}")
    finally:
        if out:
            fh.close()
    results = {"count": count, "branch_statistics": stats.as_dict()}
    _finish(ReportDocument("enumerate", cfg.echo(), results, violations), t0)


# -- analyze ---------------------------------------------------------------------

ANALYSES = {"constituents": "maxclass", "centralizers": "maxclass", "sandwich": "maxclass", "diamonds": "thin"}


def _opt_scalar(v):
    return None if v is None else scalar_to_str(v)


def _analyze_one(table, which: str) -> Dict[str, Any]:
    if which == "constituents":
        prof = constituent_profile(table)
        return {"ell": prof.ell, "subsequent": list(prof.subsequent),
                "determined_up_to": prof.determined_up_to, "positions": list(prof.positions)}
    if which == "centralizers":
        return {"centralizers": [[scalar_to_str(c) for c in pt] for pt in table.centralizers().points]}
    if which == "sandwich":
        return {"sandwich": sandwich_check(table)}
    prof = diamond_profile(table)
    return {
        "k": prof.k, "h": prof.h, "diamond_degrees": list(prof.diamond_degrees),
        "normalization_alpha": _opt_scalar(prof.normalization_alpha), "determined_up_to": prof.determined_up_to,
        "vyy_zero": prof.vyy_zero, "diamond_relation": prof.diamond_relation,
        "half_not_divisible": prof.half_not_divisible, "vxx_coefficient": _opt_scalar(prof.vxx_coefficient),
    }


@main.command()
@click.argument("which", type=click.Choice(sorted(ANALYSES)))
@click.option("--in", "in_path", type=click.File("r"), required=True, help="Algebra documents, one per line ('-' for stdin).")
@click.option("--cross-check", is_flag=True, help=f"Also run the all-triples Jacobi check (N <= {CROSS_CHECK_LIMIT}).")
def analyze(which: str, in_path, cross_check: bool) -> None:
    """Profile each algebra document; undetermined invariants are reported as 'Unbounded' or null."""
    t0 = time.perf_counter()
    try:
        tables = loads_algebras(in_path.read())
    except DocumentError as exc:
        raise click.UsageError(f"malformed document: {exc}") from None
    want = ANALYSES[which]
    results = []
    violations = []
    for idx, table in enumerate(tables):
        kind = "maxclass" if isinstance(table, MaxClassTable) else "thin"
        if kind != want:
            raise click.UsageError(f"document {idx} is a {kind} table; '{which}' needs {want}")
        try:
            entry = {"table": idx, **_analyze_one(table, which)}
        except CoveringError as exc:
            violations.append(f"table {idx}: {exc}")
            continue
        if which == "sandwich" and not entry["sandwich"]:
            violations.append(f"table {idx}: (ad y)^2 != 0")
        bad = _cross_check(table, cross_check)
        if bad:
            violations.append(f"table {idx}: {bad}")
        results.append(entry)
    _finish(ReportDocument("analyze", {"analysis": which, "cross_check": cross_check}, results, violations), t0)


# -- verify ----------------------------------------------------------------------

THEOREMS = {
    "first-constituent": ("maxclass", verify_mod.verify_first_constituent),
    "any-constituent": ("maxclass", verify_mod.verify_any_constituent),
    "second-diamond": ("thin", verify_mod.verify_second_diamond),
    "h-values": ("thin", verify_mod.verify_h_values),
}


def identities_report(p: int, max_value: int) -> ReportDocument:
    """Reflection identity for every ``q = p^s <= max`` and the two power criteria for ``n <= max``."""
    char = as_char(p)
    violations = []
    qs = []
    q = p
    while q <= max_value:
        qs.append(q)
        if not congruence.reflection_identity_check(PrimePower.of(q, p)):
            violations.append(f"reflection identity fails for q = {q}")
        q *= p
    for n in range(1, max_value + 1):
        power = as_prime_power(n, p) is not None
        if congruence.frobenius_power_test(n, char) != power:
            violations.append(f"Frobenius criterion disagrees with 'power of {p}' at n = {n}")
        if congruence.double_power_test(n, char) != power:
            violations.append(f"doubled criterion disagrees with 'power of {p}' at n = {n}")
    results = {"reflection_q": qs, "power_criteria_checked_up_to": max_value}
    return ReportDocument("verify", {"theorem": "identities", "p": p, "max": max_value}, results, violations)


@main.command()
@click.argument("theorem", type=click.Choice(sorted(THEOREMS) + ["identities"]))
@_char_option
@click.option("--degree", type=int, default=None, help="Truncation degree N (enumeration theorems).")
@click.option("--max", "max_value", type=int, default=None, help="Bound on q and n (identities).")
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--lookahead", type=int, default=0, show_default=True)
@click.option("--certificate-cut/--no-certificate-cut", default=True, show_default=True,
              help="Thin theorems: stop a branch once its second-diamond assertion is decided.")
@click.option("--second-diamond", "second_diamond", type=int, default=None,
              help="Thin theorems: restrict to tables whose second diamond is in this degree.")
@click.option("--cross-check", is_flag=True, help="Re-verify every emitted table independently (all triples for N <= 16).")
def verify(theorem: str, p: int, degree: Optional[int], max_value: Optional[int], jobs: int, lookahead: int,
           certificate_cut: bool, second_diamond: Optional[int], cross_check: bool) -> None:
    """Check a theorem over an exhaustive enumeration (or run the identity sweeps)."""
    t0 = time.perf_counter()
    if theorem == "identities":
        if max_value is None or max_value < 2:
            raise click.UsageError("identities needs --max >= 2")
        try:
            char = as_char(p)
        except ValueError as exc:
            raise click.UsageError(str(exc)) from None
        if not char.p:
            raise click.UsageError("identities need a positive characteristic")
        _finish(identities_report(p, max_value), t0)
    if degree is None:
        raise click.UsageError(f"{theorem} needs --degree")
    kind, fn = THEOREMS[theorem]
    extra = {"certificate_cut": certificate_cut, "second_diamond": second_diamond} if kind == "thin" else {}
    if kind != "thin" and second_diamond is not None:
        raise click.UsageError("--second-diamond applies to thin theorems only")
    cfg = _config(p, degree, kind, jobs=jobs, lookahead=lookahead, **extra)
    rep = fn(cfg, reverify=cross_check, cross_check=cross_check and degree <= CROSS_CHECK_LIMIT)
    body = rep.as_dict()
    results = {k: body[k] for k in ("count", "asserted", "unconstrained", "observed", "branch_statistics", "profiles")}
    _finish(ReportDocument("verify", {"theorem": theorem, **cfg.echo()}, results, rep.violations), t0)


if __name__ == "__main__":  # pragma: no cover
    main()
