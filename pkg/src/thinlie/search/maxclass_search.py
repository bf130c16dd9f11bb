"""Enumeration of maximal-class tables.

Going from degree ``n - 1`` to ``n`` the only unknown is the pair
``(A, B) = (a_{n-1}, b_{n-1})``.  Every structure constant ``c_ij`` with
``i + j = n`` is a linear form in ``(A, B)``, and so is every relation that
must vanish in degree ``n``.  The admissible pairs are therefore the nonzero
vectors of a subspace of dimension 0, 1 or 2, i.e. no point, one point or
the whole projective line.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from ..arith import FpScalar, PrimeChar
from ..lie_engine.maxclass import (MaxClassTable, Pair, X_POINT, Y_POINT, canonical_pair, point_to_pair)
from .config import RATIONAL_SAMPLES, SearchConfig, SearchStats
from . import tree as tree_mod

Form = Tuple[FpScalar, FpScalar]


@dataclass
class MaxNode:
    top: int  # highest degree present; its pair is still unknown
    pairs: Tuple[Pair, ...]  # pairs for degrees 2 .. top-1
    c: Dict[Tuple[int, int], FpScalar]  # c_ij for i + j <= top
    deviated: bool  # some centralizer other than y already occurred


def all_points(char: PrimeChar) -> List[Tuple[FpScalar, FpScalar]]:
    """Projective points in canonical order: ``y``, ``x``, then ``(t, 1)``."""
    if char.p:
        rest = [(t, 1) for t in range(1, char.p)]
    else:
        rest = [(t, 1) for t in RATIONAL_SAMPLES if t]
    return [Y_POINT, X_POINT] + rest


class MaxClassTree:
    def __init__(self, config: SearchConfig):
        self.config = config
        self.char = config.char

    def root(self) -> MaxNode:
        return MaxNode(2, (), {}, False)

    def depth(self, node: MaxNode) -> int:
        return node.top

    def is_leaf(self, node: MaxNode) -> bool:
        return node.top >= self.config.maxdeg

    def emit(self, node: MaxNode) -> MaxClassTable:
        return MaxClassTable(self.char, node.top, node.pairs)

    # -- one degree ----------------------------------------------------------------
    def relations(self, node: MaxNode) -> Tuple[Dict[Tuple[int, int], Form], List[Form]]:
        """Linear forms of ``c_ij`` (``i + j = n``) and of the relations in degree ``n = top + 1``."""
        char = self.char
        n = node.top + 1
        pairs = node.pairs
        c = node.c
        mul, sub, add = char.mul, char.sub, char.add

        def pair(i: int) -> Pair:
            return pairs[i - 2]

        unit = {"x": (1, 0), "y": (0, 1)}
        forms: Dict[Tuple[int, int], Form] = {}
        rels: List[Form] = []
        for j in range(2, n - 1):
            i = n - j
            if j == 2:
                a_i, b_i = pair(i)
                forms[(i, 2)] = (b_i, char.neg(a_i))
                continue
            a_prev, b_prev = pair(j - 1)
            routes = []
            for g, coef, gi in (("x", a_prev, pair(i)[0]), ("y", b_prev, pair(i)[1])):
                if not coef:
                    continue
                base = c[(i, j - 1)]
                u = unit[g]
                f = forms[(i + 1, j - 1)]
                val = (sub(mul(base, u[0]), mul(gi, f[0])), sub(mul(base, u[1]), mul(gi, f[1])))
                inv = char.inv(coef)
                routes.append((mul(val[0], inv), mul(val[1], inv)))
            forms[(i, j)] = routes[0]
            if len(routes) == 2:
                rels.append((sub(routes[0][0], routes[1][0]), sub(routes[0][1], routes[1][1])))
        for i in range(2, n // 2 + 1):
            j = n - i
            if i == j:
                rels.append(forms[(i, i)])
            else:
                f, g = forms[(i, j)], forms[(j, i)]
                rels.append((add(f[0], g[0]), add(f[1], g[1])))
        for i in range(2, n - 2):
            j = n - 1 - i
            cij = c[(i, j)]
            for gk, g in enumerate(("x", "y")):
                gi = pair(i)[gk]
                gj = pair(j)[gk]
                f1, f2 = forms[(i + 1, j)], forms[(i, j + 1)]
                lhs = (cij, 0) if g == "x" else (0, cij)
                rels.append((sub(lhs[0], add(mul(gi, f1[0]), mul(gj, f2[0]))),
                             sub(lhs[1], add(mul(gi, f1[1]), mul(gj, f2[1])))))
        return forms, rels

    def admissible_pairs(self, node: MaxNode, stats: SearchStats) -> Tuple[List[Pair], Dict[Tuple[int, int], Form]]:
        char = self.char
        forms, rels = self.relations(node)
        nz = [r for r in rels if r[0] or r[1]]
        if not nz:
            pts = all_points(char)
            if not char.p:
                stats.sampled = True
            if self.config.normalize:
                if node.top == 2:
                    pts = [Y_POINT]
                elif not node.deviated:
                    pts = [Y_POINT, X_POINT]
            return [point_to_pair(char, pt) for pt in pts], forms
        r0 = nz[0]
        # the pair must be orthogonal to r0
        cand = canonical_pair(char, r0[1], char.neg(r0[0]))
        for r in nz[1:]:
            if char.add(char.mul(r[0], cand[0]), char.mul(r[1], cand[1])):
                return [], forms
        if self.config.normalize:
            pt = _pair_point(char, cand)
            if node.top == 2 and pt != Y_POINT:
                return [], forms
            if not node.deviated and pt not in (Y_POINT, X_POINT):
                return [], forms
        return [cand], forms

    def children(self, node: MaxNode, stats: SearchStats) -> List[MaxNode]:
        char = self.char
        pairs, forms = self.admissible_pairs(node, stats)
        kids = []
        for A, B in pairs:
            c = dict(node.c)
            for key, f in forms.items():
                c[key] = char.add(char.mul(f[0], A), char.mul(f[1], B))
            kids.append(MaxNode(node.top + 1, node.pairs + ((A, B),), c, node.deviated or bool(B)))
        return kids


def _pair_point(char: PrimeChar, pair: Pair):
    from ..lie_engine.maxclass import pair_to_point

    return pair_to_point(char, pair)


def default_split_depth(config: SearchConfig) -> int:
    return config.split_depth or min(config.maxdeg, 8)


def enumerate_maxclass(config: SearchConfig, stats: Optional[SearchStats] = None) -> Iterator[MaxClassTable]:
    """Every canonical maximal-class table consistent up to ``config.maxdeg``, in canonical order."""
    if config.kind != "maxclass":
        raise ValueError("enumerate_maxclass needs kind = 'maxclass'")
    stats = SearchStats() if stats is None else stats
    yield from tree_mod.run(MaxClassTree(config), stats, config.jobs, default_split_depth(config))


def naive_maxclass(config: SearchConfig) -> List[MaxClassTable]:
    """Generate-and-filter oracle: all normalized point sequences, kept if Jacobi-consistent."""
    from itertools import product

    from ..lie_engine.maxclass import jacobi_consistency

    char = config.char
    pts = all_points(char)
    out = []
    for seq in product(pts, repeat=config.maxdeg - 3):
        seq = (Y_POINT,) + seq
        if config.normalize:
            first = next((pt for pt in seq if pt != Y_POINT), None)
            if first is not None and first != X_POINT:
                continue
        table = MaxClassTable.from_centralizers(char, seq)
        if jacobi_consistency(table).ok:
            out.append(table)
    return out
