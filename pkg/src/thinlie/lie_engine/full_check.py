"""Rebuilding a table in the generic graded engine, and the all-triples Jacobi check."""
from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from ..arith import FpScalar
from . import linalg
from .elements import ActionTable
from .graded import Frontier, Relation


class TableFrontier:
    """A :class:`Frontier` rebuilt from a table, with the first failing relation (if any)."""

    def __init__(self, table: ActionTable, N: Optional[int] = None):
        self.table = table
        N = table.maxdeg if N is None else N
        fr = Frontier.initial(table.char)
        self.failure: Optional[Tuple[int, Relation]] = None
        self.surjectivity_failure: Optional[int] = None
        for n in range(3, N + 1):
            mx = table.action(n - 1, "x")
            my = table.action(n - 1, "y")
            try:
                child, failed = fr.extend_concrete(mx, my)
            except ValueError:
                self.surjectivity_failure = n
                break
            fr = child
            if failed:
                self.failure = (n, failed[0])
                break
        self.frontier = fr

    @property
    def ok(self) -> bool:
        return self.failure is None and self.surjectivity_failure is None


def bracket(fr: Frontier, i: int, u: Sequence[FpScalar], j: int, v: Sequence[FpScalar]) -> List[FpScalar]:
    """``[u, v]`` for ``u`` in ``L_i`` and ``v`` in ``L_j`` using the frontier's products."""
    char = fr.char
    block = fr.product(i, j)
    out = [0] * fr.dims[i + j]
    for a, ua in enumerate(u):
        if not ua:
            continue
        for b, vb in enumerate(v):
            if vb:
                linalg.axpy(char, out, char.mul(ua, vb), block[a][b])
    return out


def all_triples_failure(table: ActionTable, N: int):
    """First basis triple violating the Jacobi identity, checking every triple of total degree <= N."""
    from .maxclass import JacobiFailure

    tf = TableFrontier(table, N)
    if tf.surjectivity_failure is not None:
        return JacobiFailure(tf.surjectivity_failure, "surjectivity", ())
    if tf.failure is not None:
        n, rel = tf.failure
        return JacobiFailure(n, rel.kind, rel.triple)
    fr = tf.frontier
    char = fr.char
    d = fr.dims
    for total in range(3, N + 1):
        for i in range(1, total - 1):
            for j in range(1, total - i):
                k = total - i - j
                for a in range(d[i]):
                    u = linalg.unit(d[i], a)
                    for b in range(d[j]):
                        v = linalg.unit(d[j], b)
                        uv = bracket(fr, i, u, j, v)
                        for c in range(d[k]):
                            w = linalg.unit(d[k], c)
                            lhs = bracket(fr, i + j, uv, k, w)
                            uw = bracket(fr, i, u, k, w)
                            vw = bracket(fr, j, v, k, w)
                            rhs = bracket(fr, i + k, uw, j, v)
                            linalg.axpy(char, rhs, 1, bracket(fr, i, u, j + k, vw))
                            if [char.reduce(x) for x in lhs] != [char.reduce(x) for x in rhs]:
                                return JacobiFailure(total, "jacobi-full", (f"L{i}[{a}]", f"L{j}[{b}]", f"L{k}[{c}]"))
    # antisymmetry for every pair, including degree one
    for total in range(2, N + 1):
        for i in range(1, total):
            j = total - i
            for a in range(d[i]):
                for b in range(d[j]):
                    s = list(fr.product(i, j)[a][b])
                    linalg.axpy(char, s, 1, fr.product(j, i)[b][a])
                    if any(s):
                        return JacobiFailure(total, "antisymmetry-full", (f"L{i}[{a}]", f"L{j}[{b}]"))
    return None
