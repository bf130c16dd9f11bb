"""Truncated thin Lie algebras: components of dimension one or two.

``dims[i - 1] = dim L_i`` and ``actions[i - 2] = (M_x(i), M_y(i))`` for
``2 <= i < maxdeg``, each matrix of shape ``dim L_{i+1} x dim L_i``.  The
degree-one action is fixed by ``e_2 = [y, x]``.

Canonical tables choose the basis of ``L_{i+1}`` among the images
``[f_a, g]`` of the basis ``f`` of ``L_i``, taking ``a`` from the last basis
vector backwards and ``x`` before ``y`` (see :func:`graded.candidate_order`).
This makes the second diamond spanned by ``([vx], [vy])``, the next component
by ``[vyx]``, and one-dimensional components by the iterated ``x``-image,
falling back to the ``y``-image.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from ..arith import FpScalar, PrimeChar, as_char
from . import graded, linalg
from .elements import ActionTable, HomogeneousElement, Unbounded, degree_one_action, eval_word
from .full_check import TableFrontier
from .words import LeftNormedWord

MatrixT = Tuple[Tuple[FpScalar, ...], ...]


class CoveringError(ValueError):
    def __init__(self, degree: int):
        super().__init__(f"covering property fails from degree {degree} to {degree + 1}")
        self.degree = degree


def _freeze(m: Sequence[Sequence[FpScalar]]) -> MatrixT:
    return tuple(tuple(row) for row in m)


@dataclass(frozen=True)
class ThinTable(ActionTable):
    char: PrimeChar
    maxdeg: int
    dims: Tuple[int, ...]
    actions: Tuple[Tuple[MatrixT, MatrixT], ...]

    def __post_init__(self) -> None:
        N = self.maxdeg
        if N < 2:
            raise ValueError("maxdeg must be at least 2")
        if len(self.dims) != N:
            raise ValueError(f"expected {N} dimensions, got {len(self.dims)}")
        if self.dims[0] != 2:
            raise ValueError("L_1 must be two-dimensional")
        if self.dims[1] != 1:
            raise ValueError("L_2 = [L_1, L_1] is one-dimensional")
        if any(d not in (1, 2) for d in self.dims):
            raise ValueError("components must have dimension 1 or 2")
        if len(self.actions) != N - 2:
            raise ValueError(f"expected {N - 2} action pairs, got {len(self.actions)}")
        for i, (mx, my) in enumerate(self.actions, start=2):
            for m in (mx, my):
                if len(m) != self.dim(i + 1) or any(len(row) != self.dim(i) for row in m):
                    raise ValueError(f"action matrix at degree {i} has the wrong shape")

    @classmethod
    def build(cls, char, dims: Sequence[int], actions: Sequence[Tuple[Sequence[Sequence[FpScalar]], Sequence[Sequence[FpScalar]]]]) -> "ThinTable":
        char = as_char(char)
        acts = tuple((_freeze([[char.reduce(c) for c in r] for r in mx]),
                      _freeze([[char.reduce(c) for c in r] for r in my])) for mx, my in actions)
        return cls(char, len(dims), tuple(dims), acts)

    @classmethod
    def from_frontier(cls, fr: graded.Frontier) -> "ThinTable":
        acts = tuple((_freeze(fr.actions[i][0]), _freeze(fr.actions[i][1])) for i in range(2, fr.top))
        return cls(fr.char, fr.top, tuple(fr.dims[1:]), acts)

    def dim(self, i: int) -> int:
        return self.dims[i - 1]

    def action(self, i: int, g: str):
        if i == 1:
            return degree_one_action(self.char, g)
        mx, my = self.actions[i - 2]
        return [list(r) for r in (mx if g == "x" else my)]

    def restrict(self, maxdeg: int) -> "ThinTable":
        if maxdeg > self.maxdeg:
            raise ValueError("cannot restrict to a larger degree")
        return ThinTable(self.char, maxdeg, self.dims[:maxdeg], self.actions[: maxdeg - 2])

    def diamond_degrees(self) -> List[int]:
        return [i for i in range(2, self.maxdeg + 1) if self.dim(i) == 2]

    def second_diamond(self) -> Optional[int]:
        dd = self.diamond_degrees()
        return dd[0] if dd else None


def covering_violation(table: ThinTable, upto: Optional[int] = None) -> Optional[int]:
    """First degree ``i`` where some nonzero ``z`` in ``L_i`` has ``[z, L_1] != L_{i+1}``."""
    upto = table.maxdeg if upto is None else upto
    for i in range(2, upto):
        mx = table.action(i, "x")
        my = table.action(i, "y")
        if not graded.covering_holds(table.char, table.dim(i), table.dim(i + 1), mx, my):
            return i
    return None


def canonicalize(char, dims: Sequence[int], act: Sequence[Tuple[Sequence[Sequence[FpScalar]], Sequence[Sequence[FpScalar]]]],
                 gens: Tuple[Tuple[FpScalar, FpScalar], Tuple[FpScalar, FpScalar]] = ((1, 0), (0, 1))) -> ThinTable:
    """Re-express an action in canonical bases, optionally after changing generators.

    ``dims[i-1]`` and ``act[i-2]`` describe the old table; ``gens`` gives the new
    generators ``x'`` and ``y'`` in old coordinates ``(x, y)``.
    """
    char = as_char(char)
    (x1, x2), (y1, y2) = gens
    # e'_2 = [y', x'] = (y1 x2 - y2 x1) [x, y] + ... = (y2 x1 - y1 x2) e_2
    t2 = char.sub(char.mul(y2, x1), char.mul(y1, x2))
    if not t2:
        raise ValueError("new generators are linearly dependent")
    T = [[t2]]  # columns: new basis of the current degree in old coordinates
    new_actions = []
    N = len(dims)
    for i in range(2, N):
        mx, my = act[i - 2]
        mxp = [[char.add(char.mul(x1, a), char.mul(x2, b)) for a, b in zip(rx, ry)] for rx, ry in zip(mx, my)]
        myp = [[char.add(char.mul(y1, a), char.mul(y2, b)) for a, b in zip(rx, ry)] for rx, ry in zip(mx, my)]
        d_i, d_n = dims[i - 1], dims[i]
        imgs = {"x": linalg.mat_mul(char, mxp, T), "y": linalg.mat_mul(char, myp, T)}
        cands = graded.candidate_order(d_i)
        cols = [[imgs["x" if g == graded.X else "y"][r][a] for r in range(d_n)] for a, g in cands]
        chosen = linalg.independent_prefix(char, cols, d_n)
        if len(chosen) < d_n:
            raise ValueError(f"action at degree {i} is not surjective")
        T_next = linalg.from_columns([cols[k] for k in chosen], d_n)
        inv = linalg.inverse(char, T_next)
        new_actions.append((linalg.mat_mul(char, inv, imgs["x"]), linalg.mat_mul(char, inv, imgs["y"])))
        T = T_next
    return ThinTable.build(char, dims, new_actions)


def canonical_form(table: ThinTable) -> ThinTable:
    return canonicalize(table.char, table.dims, [(table.action(i, "x"), table.action(i, "y")) for i in range(2, table.maxdeg)])


# -- second diamond ---------------------------------------------------------------

def _v_word(k: int) -> LeftNormedWord:
    return LeftNormedWord(("y",) + ("x",) * (k - 2))


def _eval(table: ThinTable, letters: str) -> Optional[HomogeneousElement]:
    if len(letters) > table.maxdeg:
        return None
    return eval_word(table, LeftNormedWord(tuple(letters)))


def _proportional(char: PrimeChar, u: Sequence[FpScalar], v: Sequence[FpScalar]) -> Optional[FpScalar]:
    """``c`` with ``u = c v`` (``v`` nonzero), or ``None``."""
    idx = next((i for i, x in enumerate(v) if x), None)
    if idx is None:
        return None
    c = char.div(u[idx], v[idx])
    if all(char.reduce(a) == char.reduce(char.mul(c, b)) for a, b in zip(u, v)):
        return c
    return None


@dataclass(frozen=True)
class DiamondProfile:
    """Second-diamond invariants.

    ``h`` is :data:`Unbounded` when ``[v y x^(i-1) y]`` vanishes for every
    ``i`` with ``k + i <= determined_up_to``; ``None`` when ``k`` is absent.
    ``vyy_zero``, ``diamond_relation`` and ``normalization_alpha`` are ``None``
    when the table is too short to decide them.
    """

    k: Optional[int]
    h: Union[int, type(Unbounded), None]
    diamond_degrees: Tuple[int, ...]
    normalization_alpha: Optional[FpScalar]
    determined_up_to: int
    vyy_zero: Optional[bool] = None
    diamond_relation: Optional[bool] = None  # [vxy] = ((k-1)/2) [vyx]
    half_not_divisible: Optional[bool] = None  # p does not divide (k-1)/2
    vxx_coefficient: Optional[FpScalar] = None  # [vxx] = c [vyx]


def diamond_profile(table: ThinTable) -> DiamondProfile:
    bad = covering_violation(table)
    if bad is not None:
        raise CoveringError(bad)
    char = table.char
    N = table.maxdeg
    dd = tuple(table.diamond_degrees())
    if not dd:
        return DiamondProfile(None, None, dd, None, N)
    k = dd[0]
    v = "y" + "x" * (k - 2)
    half_ok = None
    if k % 2:
        half_ok = not char.divides((k - 1) // 2)
    vyy_zero = diamond_rel = None
    vxx_c = alpha = None
    if k + 1 <= N:
        vyy = _eval(table, v + "yy")
        vyy_zero = vyy.is_zero
        vyx = _eval(table, v + "yx").coords
        vxy = _eval(table, v + "xy").coords
        if k % 2:
            half = char.reduce((k - 1) // 2)
            diamond_rel = all(char.reduce(a) == char.mul(half, b) for a, b in zip(vxy, vyx))
        else:
            diamond_rel = False
        vxx_c = _proportional(char, _eval(table, v + "xx").coords, vyx)
        if vxx_c is not None and not char.divides(k + 1):
            alpha = char.div(char.neg(char.mul(2, vxx_c)), k + 1)
    h: Union[int, type(Unbounded)] = Unbounded
    for cand in range(1, N - k + 1):
        if not _eval(table, v + "y" + "x" * (cand - 1) + "y").is_zero:
            h = cand
            break
    return DiamondProfile(k, h, dd, alpha, N, vyy_zero, diamond_rel, half_ok, vxx_c)


class NormalizationError(ValueError):
    pass


def normalize_x(table: ThinTable, k: Optional[int] = None) -> Tuple[FpScalar, ThinTable]:
    """Replace ``x`` by ``x + alpha y`` so that ``[vxx] = 0``; returns ``alpha`` and the new table."""
    char = table.char
    if k is None:
        k = table.second_diamond()
        if k is None:
            raise NormalizationError("the table has no second diamond")
    if char.divides(k + 1):
        raise NormalizationError(f"k = {k} is congruent to -1 mod {char.p}: [vxx] cannot be normalized")
    if k + 1 > table.maxdeg:
        raise NormalizationError("the table stops before degree k + 1")
    v = "y" + "x" * (k - 2)
    vyx = _eval(table, v + "yx").coords
    c = _proportional(char, _eval(table, v + "xx").coords, vyx)
    if c is None:
        raise NormalizationError("[vxx] is not a multiple of [vyx]")
    alpha = char.div(char.neg(char.mul(2, c)), k + 1)
    if not alpha:
        return alpha, table
    new = canonicalize(char, table.dims, [(table.action(i, "x"), table.action(i, "y")) for i in range(2, table.maxdeg)],
                       gens=((1, alpha), (0, 1)))
    return alpha, new


def metabelian_quotient_check(table: ThinTable, k: int) -> bool:
    """``[L_i, L_j] = 0`` whenever ``i, j >= 2`` and ``i + j < k``."""
    top = min(k - 1, table.maxdeg)
    if top < 4:
        return True
    fr = TableFrontier(table.restrict(top)).frontier
    if fr.top < top:
        return False
    for n in range(4, top + 1):
        for i in range(2, n - 1):
            block = fr.product(i, n - i)
            if any(any(vec) for row in block for vec in row):
                return False
    return True


def thin_jacobi_consistency(table: ThinTable, N: Optional[int] = None, cross_check: bool = False):
    """Same contract as :func:`maxclass.jacobi_consistency`, for thin tables."""
    from .full_check import all_triples_failure
    from .maxclass import JacobiFailure, JacobiResult

    N = table.maxdeg if N is None else N
    tf = TableFrontier(table, N)
    if tf.surjectivity_failure is not None:
        return JacobiResult(False, JacobiFailure(tf.surjectivity_failure, "surjectivity", ()), N)
    if tf.failure is not None:
        n, rel = tf.failure
        return JacobiResult(False, JacobiFailure(n, rel.kind, rel.triple), N)
    if cross_check:
        fail = all_triples_failure(table, N)
        if fail is not None:
            return JacobiResult(False, fail, N)
    return JacobiResult(True, None, N)
