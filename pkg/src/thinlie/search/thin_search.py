"""Enumeration of thin tables with ``L/L^k`` metabelian.

Below the second diamond the algebra has maximal class with every component
centralized by ``y`` (this is what ``L/L^k`` metabelian amounts to), so each
degree only decides whether the next component is the diamond.  From the
diamond on, a new component ``L_n`` is a quotient of the symbol space
spanned by the ``[f_a, g]`` that kills the Jacobi relations: its row space
is chosen inside the annihilator of the relations, enumerated as reduced
echelon matrices.  Children failing the covering property are discarded.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Optional

from ..lie_engine import graded, linalg
from ..lie_engine.graded import Frontier, X, Y
from ..lie_engine.thin import ThinTable
from .config import RATIONAL_SAMPLES, SearchConfig, SearchStats
from . import tree as tree_mod


@dataclass
class ThinNode:
    frontier: Frontier
    k: Optional[int]  # degree of the second diamond once reached


class ThinTree:
    def __init__(self, config: SearchConfig):
        self.config = config
        self.char = config.char

    def root(self) -> ThinNode:
        return ThinNode(Frontier.initial(self.char), None)

    def depth(self, node: ThinNode) -> int:
        return node.frontier.top

    def is_leaf(self, node: ThinNode) -> bool:
        top = node.frontier.top
        if top >= self.config.maxdeg:
            return True
        return self.config.certificate_cut and node.k is not None and top >= certificate_depth(node.k, self.config)

    def emit(self, node: ThinNode) -> ThinTable:
        return ThinTable.from_frontier(node.frontier)

    def children(self, node: ThinNode, stats: SearchStats) -> List[ThinNode]:
        if node.k is None:
            return self._prefix_children(node)
        return self._general_children(node, stats)

    def _prefix_children(self, node: ThinNode) -> List[ThinNode]:
        fr = node.frontier
        step = fr.symbolic_step()
        n = step.degree
        rels = [r.vector for r in step.relations]
        want = self.config.second_diamond
        kids = []
        # one-dimensional, centralized by y: [e, x] = e_n, [e, y] = 0
        if all(not v[X] for v in rels) and (want is None or n < want):
            kids.append(ThinNode(fr.extend(step, [[1, 0]]), None))
        # the diamond: no relation at all among [e, x] and [e, y]
        if n >= 3 and all(not any(v) for v in rels) and (want is None or n == want):
            kids.append(ThinNode(fr.extend(step, [[1, 0], [0, 1]]), n))
        return kids

    def _general_children(self, node: ThinNode, stats: SearchStats) -> List[ThinNode]:
        char = self.char
        fr = node.frontier
        k = node.k
        step = fr.symbolic_step()
        n = step.degree
        width = step.width
        rels = [r.vector for r in step.relations if any(r.vector)]
        if n == k + 1 and self.config.normalize and k > 3 and not char.divides(k + 1):
            # x may be replaced by x + alpha y so that [vxx] = 0
            rels.append(linalg.unit(width, graded.symbol_index(0, X)))
        ann = linalg.nullspace(char, rels, width)
        m = len(ann)
        dl = fr.dims[n - 1]
        samples = None
        if not char.p:
            samples = RATIONAL_SAMPLES
        kids = []
        for c in (1, 2):
            if c > m:
                break
            for q in linalg.rref_matrices(char, c, m, samples):
                if not char.p and _has_free_entries(c, m):
                    stats.sampled = True
                proj = linalg.mat_mul(char, q, ann)
                proj = graded.canonical_projection(char, dl, proj)
                mx = [[row[graded.symbol_index(a, X)] for a in range(dl)] for row in proj]
                my = [[row[graded.symbol_index(a, Y)] for a in range(dl)] for row in proj]
                if not graded.covering_holds(char, dl, c, mx, my):
                    stats.pruned_covering[n] += 1
                    continue
                kids.append(ThinNode(fr.extend(step, proj), k))
        return kids


def certificate_depth(k: int, config: SearchConfig) -> int:
    """Degree through which second-diamond assertions about ``k`` are checked."""
    return 2 * k + 3 + config.lookahead


def _has_free_entries(c: int, m: int) -> bool:
    return c < m


def enumerate_thin(config: SearchConfig, stats: Optional[SearchStats] = None) -> Iterator[ThinTable]:
    """Canonical thin tables consistent up to ``config.maxdeg``, in canonical order.

    The diamond-free table (maximal class, centralized by ``y``) is included,
    so that restricting an enumeration to a smaller degree stays inside the
    enumeration at that degree.
    """
    if config.kind != "thin":
        raise ValueError("enumerate_thin needs kind = 'thin'")
    stats = SearchStats() if stats is None else stats
    split = config.split_depth or min(config.maxdeg, 7)
    yield from tree_mod.run(ThinTree(config), stats, config.jobs, split)
