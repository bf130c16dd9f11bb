"""Products and Jacobi relations of a graded Lie algebra generated in degree one.

The algebra is described by ``dims[i] = dim L_i`` and, for each degree ``i``,
the matrices of ``ad x`` and ``ad y`` from ``L_i`` to ``L_{i+1}``.  Degree 1
has basis ``(x, y)`` and ``L_2`` is spanned by ``e_2 = [y, x]``.

All products landing in degree ``n`` are linear in the action matrices of
degree ``n - 1`` (the "top" action).  :class:`Frontier` exploits this: it can
compute every degree-``n`` product as a vector in the free symbol space
spanned by ``[f_a, g]`` (``f_a`` a basis vector of ``L_{n-1}``, ``g`` in
``{x, y}``), together with the Jacobi relations among those symbols.
Choosing ``L_n`` is then choosing a quotient of the symbol space that kills
the relations.

Antisymmetry plus the Jacobi identity for triples whose last entry is a
generator imply the full Jacobi identity, because ``ad`` of a bracket of
derivations is again a derivation and the algebra is generated by ``x, y``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..arith import FpScalar, PrimeChar
from . import linalg
from .linalg import Matrix, Vector

X, Y = 0, 1
GEN_NAMES = ("x", "y")

Block = List[List[Vector]]  # block[a][b] = [f_a, f_b] in the target component


def candidate_order(dim: int) -> List[Tuple[int, int]]:
    """Order in which images ``[f_a, g]`` are tried as basis vectors of the next degree."""
    return [(a, g) for a in reversed(range(dim)) for g in (X, Y)]


def symbol_index(a: int, g: int) -> int:
    return 2 * a + g


@dataclass
class Relation:
    """A Jacobi or antisymmetry relation landing in one degree.

    ``where`` holds ``(i, a, j, b)`` for ``[f_a, f_b]`` with ``f_a`` in ``L_i``,
    plus the generator index for Jacobi triples ``J(f_a, f_b, g)``.
    """

    kind: str  # "jacobi" | "antisymmetry" | "alternating"
    where: Tuple[int, ...]
    vector: Vector

    @property
    def triple(self) -> Tuple[str, ...]:
        w = self.where
        names = (_label(w[0], w[1]), _label(w[2], w[3]))
        if len(w) == 5:
            names += (GEN_NAMES[w[4]],)
        return names


@dataclass
class SymbolicStep:
    """Degree-``n`` products and relations expressed in the symbol space."""

    degree: int
    width: int  # 2 * dim L_{n-1}
    products: Dict[Tuple[int, int], Block]
    relations: List[Relation]


@dataclass
class Frontier:
    """A graded algebra known (and Jacobi-consistent) through degree ``top``."""

    char: PrimeChar
    top: int
    dims: List[int]
    actions: List[Optional[Tuple[Matrix, Matrix]]]
    products: List[Dict[Tuple[int, int], Block]]  # products[n] holds totals equal to n
    preimages: List[Optional[List[List[Tuple[FpScalar, int, int]]]]]

    @classmethod
    def initial(cls, char: PrimeChar) -> "Frontier":
        neg1 = char.reduce(-1)
        mx = [[0, 1]]
        my = [[neg1, 0]]
        prods = {(1, 1): [[[0], [neg1]], [[1], [0]]]}
        return cls(
            char=char,
            top=2,
            dims=[0, 2, 1],
            actions=[None, (mx, my)],
            products=[{}, {}, prods],
            preimages=[None, None, [[(1, Y, X)]]],
        )

    # -- access --------------------------------------------------------------
    def product(self, i: int, j: int) -> Block:
        return self.products[i + j][(i, j)]

    def gen_product(self, i: int, a: int, g: int) -> Vector:
        """``[f_a, g]`` for ``f_a`` in ``L_i``."""
        return self.products[i + 1][(i, 1)][a][g]

    # -- the degree-n computation -------------------------------------------
    def _degree(self, n: int, top: Callable[[Vector, int], Vector], width: int,
                with_relations: bool = True) -> Tuple[Dict[Tuple[int, int], Block], List[Relation]]:
        char = self.char
        p = char.p
        d = self.dims
        prods = self.products

        def addmul(acc: Vector, c: FpScalar, v: Sequence[FpScalar]) -> None:
            for t, x in enumerate(v):
                if x:
                    acc[t] += c * x

        def reduce(v: Vector) -> Vector:
            return [x % p for x in v] if p else v

        P: Dict[Tuple[int, int], Block] = {}
        dl = d[n - 1]
        P[(n - 1, 1)] = [[top(linalg.unit(dl, a), g) for g in (X, Y)] for a in range(dl)]
        P[(1, n - 1)] = [[reduce([-c for c in P[(n - 1, 1)][b][g]]) for b in range(dl)] for g in (X, Y)]
        for j in range(2, n - 1):
            i = n - j
            lower = prods[n - 1][(i, j - 1)]
            ugen = prods[i + 1][(i, 1)]
            shifted = P[(i + 1, j - 1)]
            pre = self.preimages[j]
            block: Block = []
            for a in range(d[i]):
                row = []
                for b in range(d[j]):
                    acc = [0] * width
                    for coef, a2, g in pre[b]:
                        addmul(acc, coef, top(lower[a][a2], g))
                        for r, c in enumerate(ugen[a][g]):
                            if c:
                                addmul(acc, -coef * c, shifted[r][a2])
                    row.append(reduce(acc))
                block.append(row)
            P[(i, j)] = block
        rels: List[Relation] = []
        if not with_relations:
            return P, rels
        for j in range(2, n - 1):
            i = n - j
            if i > j:
                continue
            for a in range(d[i]):
                for b in range(d[j]):
                    if i == j and a == b:
                        rels.append(Relation("alternating", (i, a, i, a), P[(i, i)][a][a]))
                    elif i < j or a < b:
                        v = list(P[(i, j)][a][b])
                        addmul(v, 1, P[(j, i)][b][a])
                        rels.append(Relation("antisymmetry", (i, a, j, b), reduce(v)))
        for i in range(1, n - 1):
            j = n - 1 - i
            pij = prods[n - 1][(i, j)]
            vg_all = prods[j + 1][(j, 1)]
            ug_all = prods[i + 1][(i, 1)]
            left = P[(j + 1, i)]
            right = P[(i + 1, j)]
            for a in range(d[i]):
                for b in range(d[j]):
                    for g in (X, Y):
                        acc = list(top(pij[a][b], g))
                        for r, c in enumerate(vg_all[b][g]):
                            if c:
                                addmul(acc, c, left[r][a])
                        for r, c in enumerate(ug_all[a][g]):
                            if c:
                                addmul(acc, -c, right[r][b])
                        rels.append(Relation("jacobi", (i, a, j, b, g), reduce(acc)))
        return P, rels

    def symbolic_step(self) -> SymbolicStep:
        """Products and relations of degree ``top + 1`` in the symbol space."""
        n = self.top + 1
        dl = self.dims[n - 1]
        width = 2 * dl

        def top(w: Sequence[FpScalar], g: int) -> Vector:
            v = [0] * width
            for r, c in enumerate(w):
                if c:
                    v[2 * r + g] = c
            return v

        P, rels = self._degree(n, top, width)
        return SymbolicStep(n, width, P, rels)

    def extend(self, step: SymbolicStep, projection: Matrix) -> "Frontier":
        """Child frontier with ``L_n`` the image of ``projection`` (rows = basis of ``L_n``)."""
        char = self.char
        n = step.degree
        dn = len(projection)
        dl = self.dims[n - 1]
        mx = [[projection[r][symbol_index(a, X)] for a in range(dl)] for r in range(dn)]
        my = [[projection[r][symbol_index(a, Y)] for a in range(dl)] for r in range(dn)]
        prods = {key: [[linalg.mat_vec(char, projection, v) for v in row] for row in block]
                 for key, block in step.products.items()}
        return self._child(n, dn, mx, my, prods)

    def _child(self, n: int, dn: int, mx: Matrix, my: Matrix, prods: Dict[Tuple[int, int], Block]) -> "Frontier":
        return Frontier(
            char=self.char,
            top=n,
            dims=self.dims + [dn],
            actions=self.actions + [(mx, my)],
            products=self.products + [prods],
            preimages=self.preimages + [compute_preimages(self.char, self.dims[n - 1], dn, mx, my)],
        )

    def extend_concrete(self, mx: Matrix, my: Matrix) -> Tuple["Frontier", List[Relation]]:
        """Child frontier for given action matrices, plus the relations that fail."""
        char = self.char
        n = self.top + 1
        dn = len(mx)

        def top(w: Sequence[FpScalar], g: int) -> Vector:
            return linalg.mat_vec(char, mx if g == X else my, w)

        P, rels = self._degree(n, top, dn)
        failed = [r for r in rels if any(r.vector)]
        return self._child(n, dn, mx, my, P), failed

    def action(self, i: int, g: int) -> Matrix:
        return self.actions[i][g]


def _label(i: int, a: int) -> str:
    if i == 1:
        return GEN_NAMES[a]
    return f"L{i}[{a}]"


def compute_preimages(char: PrimeChar, dl: int, dn: int, mx: Matrix, my: Matrix):
    """Each basis vector of ``L_n`` as a combination of images ``[f_a, g]``."""
    cands = candidate_order(dl)
    cols = [[(mx if g == X else my)[r][a] for r in range(dn)] for a, g in cands]
    chosen = linalg.independent_prefix(char, cols, dn)
    if len(chosen) < dn:
        raise ValueError("action is not surjective onto the next component")
    basis = linalg.from_columns([cols[k] for k in chosen], dn)
    inv = linalg.inverse(char, basis)
    out = []
    for b in range(dn):
        terms = []
        for k, idx in enumerate(chosen):
            coef = inv[k][b]
            if coef:
                a, g = cands[idx]
                terms.append((coef, a, g))
        out.append(terms)
    return out


def canonical_projection(char: PrimeChar, dl: int, projection: Matrix) -> Matrix:
    """Rescale a surjection from the symbol space so that its chosen image vectors form the identity."""
    dn = len(projection)
    cands = candidate_order(dl)
    cols = [[projection[r][symbol_index(a, g)] for r in range(dn)] for a, g in cands]
    chosen = linalg.independent_prefix(char, cols, dn)
    basis = linalg.from_columns([cols[k] for k in chosen], dn)
    inv = linalg.inverse(char, basis)
    return linalg.mat_mul(char, inv, projection)


def covering_holds(char: PrimeChar, dl: int, dn: int, mx: Matrix, my: Matrix) -> bool:
    """Every nonzero ``z`` in ``L_{n-1}`` satisfies ``[z, L_1] = L_n``."""
    if dl == 1:
        if dn == 1:
            return bool(mx[0][0] or my[0][0])
        return bool(linalg.det2(char, mx[0][0], my[0][0], mx[1][0], my[1][0]))
    if dn == 1:
        # z -> ([z,x], [z,y]) must be injective on L_{n-1}
        return bool(linalg.det2(char, mx[0][0], mx[0][1], my[0][0], my[0][1]))
    # det([Mx z | My z]) is a binary quadratic form in z; it must be anisotropic
    a = linalg.det2(char, mx[0][0], my[0][0], mx[1][0], my[1][0])
    c = linalg.det2(char, mx[0][1], my[0][1], mx[1][1], my[1][1])
    b = char.add(linalg.det2(char, mx[0][0], my[0][1], mx[1][0], my[1][1]),
                 linalg.det2(char, mx[0][1], my[0][0], mx[1][1], my[1][0]))
    return not linalg.binary_form_has_root(char, a, b, c)
