"""Truncated graded Lie algebras of maximal class.

A table stores, for ``2 <= i < N``, the pair ``(a_i, b_i)`` with
``[e_i, x] = a_i e_{i+1}`` and ``[e_i, y] = b_i e_{i+1}``.  The basis is fixed
by ``e_2 = [y, x]`` and ``e_{i+1} = [e_i, x]`` when ``a_i != 0``, otherwise
``[e_i, y]``; accordingly each pair has its first nonzero entry equal to 1.

The two-step centralizer ``C(L_i)`` is the line of ``L_1`` killing ``e_i``;
a point ``(s, t)`` stands for ``s x + t y`` with last nonzero coordinate 1,
so ``y = (0, 1)`` and ``x = (1, 0)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..arith import FpScalar, PrimeChar, as_char
from . import linalg
from .elements import ActionTable, Unbounded, degree_one_action

Point = Tuple[FpScalar, FpScalar]
Pair = Tuple[FpScalar, FpScalar]

Y_POINT: Point = (0, 1)
X_POINT: Point = (1, 0)


def canonical_pair(char: PrimeChar, a: FpScalar, b: FpScalar) -> Pair:
    return tuple(linalg.canonical_projective(char, (a, b)))  # type: ignore[return-value]


def canonical_point(char: PrimeChar, s: FpScalar, t: FpScalar) -> Point:
    """Scale so that the last nonzero coordinate is 1."""
    rev = linalg.canonical_projective(char, (t, s))
    return (rev[1], rev[0])


def pair_to_point(char: PrimeChar, pair: Pair) -> Point:
    a, b = pair
    return canonical_point(char, char.neg(b), a)


def point_to_pair(char: PrimeChar, point: Point) -> Pair:
    s, t = point
    return canonical_pair(char, t, char.neg(s))


@dataclass(frozen=True)
class CentralizerSequence:
    char: PrimeChar
    points: Tuple[Point, ...]  # points[0] is C(L_2)

    def __post_init__(self) -> None:
        for pt in self.points:
            if pt != canonical_point(self.char, *pt):
                raise ValueError(f"point {pt} is not in canonical form")

    def at(self, i: int) -> Point:
        return self.points[i - 2]


@dataclass(frozen=True)
class MaxClassTable(ActionTable):
    char: PrimeChar
    maxdeg: int
    pairs: Tuple[Pair, ...]  # pairs[i - 2] = (a_i, b_i) for 2 <= i < maxdeg

    def __post_init__(self) -> None:
        if self.maxdeg < 2:
            raise ValueError("maxdeg must be at least 2")
        if len(self.pairs) != self.maxdeg - 2:
            raise ValueError(f"expected {self.maxdeg - 2} pairs, got {len(self.pairs)}")
        for i, (a, b) in enumerate(self.pairs, start=2):
            if not a and not b:
                raise ValueError(f"pair at degree {i} is zero: [L_{i}, L_1] would vanish")
            if (a, b) != canonical_pair(self.char, a, b):
                raise ValueError(f"pair {(a, b)} at degree {i} is not canonical")

    # -- construction -------------------------------------------------------
    @classmethod
    def from_pairs(cls, char, pairs: Sequence[Pair]) -> "MaxClassTable":
        char = as_char(char)
        pairs = tuple(canonical_pair(char, char.reduce(a), char.reduce(b)) for a, b in pairs)
        return cls(char, len(pairs) + 2, pairs)

    @classmethod
    def from_centralizers(cls, char, points: Sequence[Point]) -> "MaxClassTable":
        char = as_char(char)
        pairs = tuple(point_to_pair(char, (char.reduce(s), char.reduce(t))) for s, t in points)
        return cls(char, len(pairs) + 2, pairs)

    @classmethod
    def metabelian(cls, char, maxdeg: int) -> "MaxClassTable":
        return cls.from_centralizers(char, [Y_POINT] * (maxdeg - 2))

    def restrict(self, maxdeg: int) -> "MaxClassTable":
        if maxdeg > self.maxdeg:
            raise ValueError("cannot restrict to a larger degree")
        return MaxClassTable(self.char, maxdeg, self.pairs[: maxdeg - 2])

    # -- ActionTable --------------------------------------------------------
    def dim(self, i: int) -> int:
        return 2 if i == 1 else 1

    def pair(self, i: int) -> Pair:
        return self.pairs[i - 2]

    def action(self, i: int, g: str) -> List[List[FpScalar]]:
        if i == 1:
            return degree_one_action(self.char, g)
        a, b = self.pair(i)
        return [[a if g == "x" else b]]

    def coefficient(self, i: int, g: str) -> FpScalar:
        a, b = self.pair(i)
        return a if g == "x" else b

    def generator_of(self, j: int) -> str:
        """The generator ``g`` with ``e_j = [e_{j-1}, g]`` (``j >= 3``)."""
        return "x" if self.pair(j - 1)[0] else "y"

    def centralizers(self) -> CentralizerSequence:
        return CentralizerSequence(self.char, tuple(pair_to_point(self.char, pr) for pr in self.pairs))


def centralizer_sequence(table: MaxClassTable) -> CentralizerSequence:
    return table.centralizers()


# -- structure constants -------------------------------------------------------

class BracketError(ValueError):
    pass


@dataclass
class BracketTable:
    """``c[(i, j)]`` with ``[e_i, e_j] = c_ij e_{i+j}`` for ``i, j >= 2``."""

    values: Dict[Tuple[int, int], FpScalar]
    path_conflicts: List[Tuple[int, int]] = field(default_factory=list)


def compute_brackets(table: MaxClassTable, upto: Optional[int] = None) -> BracketTable:
    """All ``c_ij`` with ``i + j <= upto`` by recursion on ``j``.

    Where both ``a_{j-1}`` and ``b_{j-1}`` are nonzero, ``e_j`` can be reached
    through either generator; both routes are evaluated and disagreements are
    recorded in ``path_conflicts``.
    """
    char = table.char
    N = table.maxdeg if upto is None else upto
    if N > table.maxdeg:
        raise BracketError(f"degree {N} exceeds the truncation degree {table.maxdeg}")
    c: Dict[Tuple[int, int], FpScalar] = {}
    conflicts: List[Tuple[int, int]] = []
    mul, sub = char.mul, char.sub
    for n in range(4, N + 1):
        for j in range(2, n - 1):
            i = n - j
            if j == 2:
                a_i, b_i = table.pair(i)
                a_n, b_n = table.pair(i + 1)
                c[(i, 2)] = sub(mul(b_i, a_n), mul(a_i, b_n))
                continue
            a_prev, b_prev = table.pair(j - 1)
            routes = []
            for g, coef in (("x", a_prev), ("y", b_prev)):
                if not coef:
                    continue
                val = sub(mul(c[(i, j - 1)], table.coefficient(n - 1, g)),
                          mul(table.coefficient(i, g), c[(i + 1, j - 1)]))
                routes.append(char.div(val, coef))
            c[(i, j)] = routes[0]
            if len(routes) == 2 and routes[0] != routes[1]:
                conflicts.append((i, j))
    return BracketTable(c, conflicts)


def bracket_components(table: MaxClassTable, i: int, j: int) -> FpScalar:
    """``c_ij`` with ``[e_i, e_j] = c_ij e_{i+j}``."""
    if i < 2 or j < 2:
        raise BracketError("bracket_components needs i, j >= 2")
    if i + j > table.maxdeg:
        raise BracketError(f"degree {i + j} exceeds the truncation degree {table.maxdeg}")
    return compute_brackets(table, i + j).values[(i, j)]


@dataclass(frozen=True)
class JacobiFailure:
    degree: int
    kind: str  # "path" | "alternating" | "antisymmetry" | "jacobi"
    triple: Tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.kind} failure in degree {self.degree}: ({', '.join(self.triple)})"


@dataclass(frozen=True)
class JacobiResult:
    ok: bool
    failure: Optional[JacobiFailure] = None
    degree: int = 0

    def __bool__(self) -> bool:
        return self.ok


def jacobi_consistency(table: MaxClassTable, N: Optional[int] = None, cross_check: bool = False) -> JacobiResult:
    """Check the table degree by degree and report the first failing triple.

    Checks path independence of ``c_ij``, ``c_ii = 0``, antisymmetry and
    ``J(e_i, e_j, g)`` for ``g`` in ``{x, y}``.  With ``cross_check`` the
    generic graded engine also checks every basis triple (intended for
    ``N <= 16``).
    """
    N = table.maxdeg if N is None else N
    if N > table.maxdeg:
        raise ValueError(f"N = {N} exceeds the truncation degree {table.maxdeg}")
    char = table.char
    bt = compute_brackets(table, N)
    c = bt.values
    conflicts = {i + j: (i, j) for i, j in reversed(bt.path_conflicts)}
    mul, add = char.mul, char.add
    for n in range(4, N + 1):
        if n in conflicts:
            i, j = conflicts[n]
            return JacobiResult(False, JacobiFailure(n, "path", (f"e{i}", f"e{j}")), N)
        for i in range(2, n // 2 + 1):
            j = n - i
            if i == j:
                if c[(i, i)]:
                    return JacobiResult(False, JacobiFailure(n, "alternating", (f"e{i}", f"e{i}")), N)
            elif add(c[(i, j)], c[(j, i)]):
                return JacobiResult(False, JacobiFailure(n, "antisymmetry", (f"e{i}", f"e{j}")), N)
        # J(e_i, e_j, g) lands in degree n when i + j = n - 1
        for i in range(2, n - 2):
            j = n - 1 - i
            for g in ("x", "y"):
                lhs = mul(c[(i, j)], table.coefficient(n - 1, g))
                rhs = add(mul(table.coefficient(i, g), c[(i + 1, j)]),
                          mul(table.coefficient(j, g), c[(i, j + 1)]))
                if lhs != rhs:
                    return JacobiResult(False, JacobiFailure(n, "jacobi", (f"e{i}", f"e{j}", g)), N)
    if cross_check:
        from .full_check import all_triples_failure

        fail = all_triples_failure(table, N)
        if fail is not None:
            return JacobiResult(False, fail, N)
    return JacobiResult(True, None, N)


# -- invariants ---------------------------------------------------------------

@dataclass(frozen=True)
class ConstituentProfile:
    """``ell`` is the first constituent length, ``subsequent`` lists ``ell_2, ell_3, ...``.

    Only lengths whose defining bracket ``[v_r y]`` lies within the
    truncation are listed.  ``ell`` is :data:`Unbounded` when ``y``
    centralizes every component up to ``determined_up_to``.
    """

    ell: Union[int, type(Unbounded)]
    subsequent: Tuple[int, ...]
    determined_up_to: int
    positions: Tuple[int, ...] = ()

    @property
    def lengths(self) -> Tuple[int, ...]:
        if self.ell is Unbounded:
            return ()
        return (self.ell,) + self.subsequent

    @property
    def ell2(self) -> Optional[int]:
        return self.subsequent[0] if self.subsequent else None


def deviation_positions(table: MaxClassTable) -> List[int]:
    """Degrees ``i`` whose centralizer is not ``y``."""
    return [i for i in range(2, table.maxdeg) if table.pair(i)[1]]


def constituent_profile(table: MaxClassTable) -> ConstituentProfile:
    pos = deviation_positions(table)
    if not pos:
        return ConstituentProfile(Unbounded, (), table.maxdeg - 1, ())
    gaps = tuple(b - a for a, b in zip(pos, pos[1:]))
    return ConstituentProfile(pos[0], gaps, table.maxdeg - 1, tuple(pos))


def sandwich_check(table: MaxClassTable, N: Optional[int] = None) -> bool:
    """``(ad y)^2`` kills every basis element of degree at most ``N - 2``."""
    N = table.maxdeg if N is None else min(N, table.maxdeg)
    # [y y] = 0 and [x y y] = -[e_2 y] = -b_2 e_3
    if N >= 3 and table.pair(2)[1]:
        return False
    for i in range(2, N - 1):
        if table.char.mul(table.pair(i)[1], table.pair(i + 1)[1]):
            return False
    return True
