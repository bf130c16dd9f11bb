"""Small dense linear algebra over a prime field (or Q when p = 0).

Vectors are lists, matrices are lists of rows.  Everything here is sized for
homogeneous components of dimension at most a handful.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from ..arith import FpScalar, PrimeChar

Vector = List[FpScalar]
Matrix = List[List[FpScalar]]


def zeros(n: int) -> Vector:
    return [0] * n


def unit(n: int, k: int) -> Vector:
    v = [0] * n
    v[k] = 1
    return v


def axpy(char: PrimeChar, acc: Vector, c: FpScalar, v: Sequence[FpScalar]) -> None:
    """``acc += c * v`` in place."""
    if not c:
        return
    p = char.p
    if p:
        for k, x in enumerate(v):
            if x:
                acc[k] = (acc[k] + c * x) % p
    else:
        for k, x in enumerate(v):
            if x:
                acc[k] += c * x


def scale(char: PrimeChar, c: FpScalar, v: Sequence[FpScalar]) -> Vector:
    p = char.p
    if p:
        return [c * x % p for x in v]
    return [c * x for x in v]


def mat_vec(char: PrimeChar, m: Sequence[Sequence[FpScalar]], v: Sequence[FpScalar]) -> Vector:
    out = []
    p = char.p
    for row in m:
        s = 0
        for a, b in zip(row, v):
            if a and b:
                s += a * b
        out.append(s % p if p else s)
    return out


def mat_mul(char: PrimeChar, a: Sequence[Sequence[FpScalar]], b: Sequence[Sequence[FpScalar]]) -> Matrix:
    cols = list(zip(*b)) if b else []
    return [mat_vec(char, cols, row) for row in a] if cols else [[] for _ in a]


def columns(m: Sequence[Sequence[FpScalar]], ncols: int) -> List[Vector]:
    return [[row[j] for row in m] for j in range(ncols)]


def from_columns(cols: Sequence[Sequence[FpScalar]], nrows: int) -> Matrix:
    return [[c[i] for c in cols] for i in range(nrows)]


def rref(char: PrimeChar, rows: Sequence[Sequence[FpScalar]], ncols: int) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in rows if any(r)]
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = char.inv(m[r][col])
        m[r] = scale(char, inv, m[r])
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                axpy(char, m[i], char.neg(f), m[r])
        pivots.append(col)
        r += 1
    return m[:r], pivots


def rank(char: PrimeChar, rows: Sequence[Sequence[FpScalar]], ncols: int) -> int:
    return len(rref(char, rows, ncols)[1])


def nullspace(char: PrimeChar, rows: Sequence[Sequence[FpScalar]], ncols: int) -> List[Vector]:
    """Basis of ``{v : row . v = 0 for every row}``, one vector per free column."""
    red, pivots = rref(char, rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            if row[f]:
                v[pc] = char.neg(row[f])
        basis.append(v)
    return basis


def independent_prefix(char: PrimeChar, vectors: Sequence[Sequence[FpScalar]], want: int) -> List[int]:
    """Indices of the first ``want`` vectors (in order) that are linearly independent."""
    chosen: List[int] = []
    echelon: List[Tuple[int, Vector]] = []  # (pivot, row with pivot entry 1)
    for idx, v in enumerate(vectors):
        if len(chosen) == want:
            break
        w = list(v)
        for piv, row in echelon:
            if w[piv]:
                axpy(char, w, char.neg(w[piv]), row)
        piv = next((t for t, x in enumerate(w) if x), None)
        if piv is None:
            continue
        echelon.append((piv, scale(char, char.inv(w[piv]), w)))
        chosen.append(idx)
    return chosen


def inverse(char: PrimeChar, m: Sequence[Sequence[FpScalar]]) -> Matrix:
    n = len(m)
    aug = [list(row) + unit(n, i) for i, row in enumerate(m)]
    red, pivots = rref(char, aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def det2(char: PrimeChar, a: FpScalar, b: FpScalar, c: FpScalar, d: FpScalar) -> FpScalar:
    """Determinant of ``[[a, b], [c, d]]``."""
    return char.sub(char.mul(a, d), char.mul(b, c))


def is_rational_square(v: FpScalar) -> bool:
    v = Fraction(v)
    if v < 0:
        return False
    return _is_square(v.numerator) and _is_square(v.denominator)


def _is_square(n: int) -> bool:
    from math import isqrt

    r = isqrt(n)
    return r * r == n


def binary_form_has_root(char: PrimeChar, a: FpScalar, b: FpScalar, c: FpScalar) -> bool:
    """Whether ``a s^2 + b s t + c t^2`` vanishes at some ``(s, t) != (0, 0)``."""
    if not a or not c:
        return True
    if char.p == 2:
        # (1,0) and (0,1) are excluded above; only (1,1) is left
        return (a + b + c) % 2 == 0
    disc = char.sub(char.mul(b, b), char.mul(4, char.mul(a, c)))
    if char.p:
        if disc == 0:
            return True
        return pow(int(disc), (char.p - 1) // 2, char.p) == 1
    return is_rational_square(disc)


def canonical_projective(char: PrimeChar, v: Sequence[FpScalar]) -> Tuple[FpScalar, ...]:
    """Scale ``v`` so that its first nonzero coordinate is 1."""
    for x in v:
        if x:
            inv = char.inv(x)
            return tuple(char.reduce(char.mul(inv, y)) for y in v)
    raise ValueError("zero vector has no projective point")


def rref_matrices(char: PrimeChar, rows: int, cols: int, samples: Optional[Sequence[FpScalar]] = None):
    """All ``rows x cols`` matrices of full row rank in reduced echelon form.

    Over a finite field the free entries run through every element; in
    characteristic zero they run through ``samples``.
    """
    from itertools import combinations, product

    values = list(samples) if not char.p else char.elements()
    if 0 not in values:
        values = [0] + values
    for pivots in combinations(range(cols), rows):
        slots = [(r, c) for r in range(rows) for c in range(pivots[r] + 1, cols) if c not in pivots]
        for fill in product(values, repeat=len(slots)):
            m = [[0] * cols for _ in range(rows)]
            for r, pc in enumerate(pivots):
                m[r][pc] = 1
            for (r, c), val in zip(slots, fill):
                m[r][c] = val
            yield m
