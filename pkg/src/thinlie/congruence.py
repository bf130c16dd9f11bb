"""Truncated polynomials over prime fields and the binomial criteria built on them.

Every criterion returns the closed form it certifies (a prime power, an
admissible degree, a constituent length) rather than a bare boolean, so that
reports can say which branch matched.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple, Union

from .arith import (
    FpScalar,
    PrimeChar,
    PrimePower,
    as_char,
    as_prime_power,
    binom_mod,
)

CharLike = Union[PrimeChar, int]


@dataclass(frozen=True)
class TruncPoly:
    """A polynomial over a prime field taken modulo ``X**order``."""

    char: PrimeChar
    order: int
    coeffs: Tuple[FpScalar, ...]

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ValueError("truncation order must be non-negative")
        if len(self.coeffs) != self.order:
            raise ValueError("coefficient list length must equal the order")

    @classmethod
    def make(cls, char: CharLike, order: int, coeffs: Iterable[FpScalar]) -> "TruncPoly":
        char = as_char(char)
        cs = [char.reduce(c) for c in list(coeffs)[:order]]
        cs += [0] * (order - len(cs))
        return cls(char, order, tuple(cs))

    @classmethod
    def one(cls, char: CharLike, order: int) -> "TruncPoly":
        return cls.make(char, order, [1])

    @classmethod
    def monomial(cls, char: CharLike, order: int, degree: int, c: FpScalar = 1) -> "TruncPoly":
        return cls.make(char, order, [0] * degree + [c])

    def coeff(self, j: int) -> FpScalar:
        return self.coeffs[j] if 0 <= j < self.order else 0

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def with_order(self, order: int) -> "TruncPoly":
        return TruncPoly.make(self.char, order, self.coeffs)

    def __add__(self, other: "TruncPoly") -> "TruncPoly":
        _check_compatible(self, other)
        add = self.char.add
        return TruncPoly(self.char, self.order, tuple(add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "TruncPoly") -> "TruncPoly":
        _check_compatible(self, other)
        sub = self.char.sub
        return TruncPoly(self.char, self.order, tuple(sub(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "TruncPoly") -> "TruncPoly":
        return poly_mul_trunc(self, other)

    def __pow__(self, e: int) -> "TruncPoly":
        return poly_pow_trunc(self, e)

    def __repr__(self) -> str:
        terms = [f"{c}*X^{j}" for j, c in enumerate(self.coeffs) if c]
        body = " + ".join(terms) if terms else "0"
        return f"TruncPoly(p={self.char.p}, mod X^{self.order}: {body})"


def _check_compatible(f: TruncPoly, g: TruncPoly) -> None:
    if f.char != g.char:
        raise ValueError(f"characteristic mismatch: {f.char.p} vs {g.char.p}")
    if f.order != g.order:
        raise ValueError(f"truncation order mismatch: {f.order} vs {g.order}")


def poly_mul_trunc(f: TruncPoly, g: TruncPoly) -> TruncPoly:
    """Product modulo ``X**order``; zero coefficients are skipped."""
    _check_compatible(f, g)
    n = f.order
    out: List[FpScalar] = [0] * n
    gs = [(j, c) for j, c in enumerate(g.coeffs) if c]
    for i, a in enumerate(f.coeffs):
        if not a:
            continue
        for j, b in gs:
            if i + j >= n:
                break
            out[i + j] += a * b
    return TruncPoly(f.char, n, tuple(f.char.reduce(c) for c in out))


def _sparse_mul(f: Dict[int, int], g: Dict[int, int], n: int, p: int) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for i, a in f.items():
        for j, b in g.items():
            if i + j < n:
                out[i + j] = (out.get(i + j, 0) + a * b) % p
    return {k: v for k, v in out.items() if v}


def _pow_frobenius(f: TruncPoly, e: int) -> TruncPoly:
    # In F_p[X], f(X)**(p**t) = f(X**(p**t)) since every coefficient is fixed by Frobenius.
    p, n = f.char.p, f.order
    base = {j: c for j, c in enumerate(f.coeffs) if c}
    result = {0: 1}
    step = 1
    while e and result:
        e, digit = divmod(e, p)
        if step >= n:
            # only the constant term survives in X**(p**t) with p**t >= order
            c0 = base.get(0, 0)
            result = _sparse_mul(result, {0: pow(c0, digit + e, p) if digit + e else 1}, n, p)
            break
        if digit:
            image = {j * step: c for j, c in base.items() if j * step < n}
            for _ in range(digit):
                result = _sparse_mul(result, image, n, p)
        step *= p
    out: List[FpScalar] = [0] * n
    for j, c in result.items():
        out[j] = c
    return TruncPoly(f.char, n, tuple(out))


def poly_pow_trunc(f: TruncPoly, e: int) -> TruncPoly:
    """``f**e`` modulo ``X**order``.

    In positive characteristic the exponent is split into base-p digits and
    each digit power is taken of a Frobenius image of ``f``.  In
    characteristic zero with an invertible constant term the power is built
    coefficient by coefficient from ``f * (f**e)' = e * f' * f**e``.
    """
    if e < 0:
        raise ValueError("exponent must be non-negative")
    char, n = f.char, f.order
    if char.p:
        return _pow_frobenius(f, e)
    result = TruncPoly.one(char, n)
    if n == 0:
        return result
    c0 = f.coeffs[0]
    if c0 == 0:
        base = f
        while e:
            if e & 1:
                result = poly_mul_trunc(result, base)
            e >>= 1
            if e:
                base = poly_mul_trunc(base, base)
        return result
    fs = [(i, c) for i, c in enumerate(f.coeffs) if c and i > 0]
    g: List[FpScalar] = [Fraction(c0) ** e] + [0] * (n - 1)
    for k in range(1, n):
        acc: FpScalar = 0
        for i, c in fs:
            if i > k:
                break
            acc += ((e + 1) * i - k) * c * g[k - i]
        g[k] = Fraction(acc) / (k * c0)
    return TruncPoly.make(char, n, g)


def one_plus_x(char: CharLike, order: int) -> TruncPoly:
    return TruncPoly.make(char, order, [1, 1])


# ---------------------------------------------------------------------------
# power criteria
# ---------------------------------------------------------------------------

def frobenius_power_test(n: int, char: CharLike) -> bool:
    """Whether ``(X+1)**n == X**n + 1`` in ``F_p[X]``."""
    char = as_char(char)
    if n < 1 or not char.p:
        raise ValueError("need n >= 1 and a positive characteristic")
    lhs = poly_pow_trunc(one_plus_x(char, n + 1), n)
    return lhs.coeffs == (1,) + (0,) * (n - 1) + (1,)


def double_power_test(n: int, char: CharLike) -> bool:
    """Whether ``(1+X)**(2n) == 1 (mod X**n)``, i.e. ``p | C(2n, k)`` for ``0 < k < n``."""
    char = as_char(char)
    if n < 1 or not char.p:
        raise ValueError("need n >= 1 and a positive characteristic")
    return all(binom_mod(2 * n, k, char) == 0 for k in range(1, n))


# ---------------------------------------------------------------------------
# second-diamond degree
# ---------------------------------------------------------------------------

def chain_hypothesis_test(n: int, char: CharLike, extended: bool = False) -> bool:
    """``C(2n+1, j+1) == n*C(2n+1, j) (mod p)`` for ``0 < j < n-1`` (``0 < j < n`` if extended)."""
    char = as_char(char)
    if n < 1:
        raise ValueError("n must be positive")
    m = 2 * n + 1
    stop = n if extended else n - 1
    for j in range(1, stop):
        lhs = binom_mod(m, j + 1, char)
        rhs = n * binom_mod(m, j, char)
        if not char.congruent(lhs, rhs):
            return False
    return True


def chain_hypothesis_poly_test(n: int, char: CharLike, order: Optional[int] = None) -> bool:
    """``(X+1)**(2n+1) * (1 - nX) == 1 + (n+1)X (mod X**n)`` in ``F_p[X]``."""
    char = as_char(char)
    if n < 2:
        raise ValueError("n must be at least 2")
    order = n if order is None else order
    lhs = poly_pow_trunc(one_plus_x(char, order), 2 * n + 1) * TruncPoly.make(char, order, [1, -n])
    return lhs == TruncPoly.make(char, order, [1, n + 1])


class KVariant(enum.Enum):
    THREE = "Three"
    FIVE = "Five"
    SEVEN = "Seven"
    Q = "Q"
    TWO_Q_MINUS_ONE = "TwoQMinusOne"
    TWO_Q_PLUS_ONE = "TwoQPlusOne"


_SMALL = {3: KVariant.THREE, 5: KVariant.FIVE, 7: KVariant.SEVEN}


@dataclass(frozen=True)
class AdmissibleK:
    variant: KVariant
    q: Optional[PrimePower] = None

    def __post_init__(self) -> None:
        if (self.q is None) != (self.variant in _SMALL.values()):
            raise ValueError(f"{self.variant.value} {'needs' if self.q is None else 'takes no'} q")

    @property
    def value(self) -> int:
        if self.variant is KVariant.Q:
            return self.q.q
        if self.variant is KVariant.TWO_Q_MINUS_ONE:
            return 2 * self.q.q - 1
        if self.variant is KVariant.TWO_Q_PLUS_ONE:
            return 2 * self.q.q + 1
        return {KVariant.THREE: 3, KVariant.FIVE: 5, KVariant.SEVEN: 7}[self.variant]

    def __str__(self) -> str:
        if self.q is None:
            return self.variant.value
        return f"{self.variant.value}(q={self.q.q})"


def _prime_power_forms(value: int, p: int) -> Optional[AdmissibleK]:
    # q ranges over p**s with s >= 1; q = 1 would only reproduce 3.
    for variant, q in (
        (KVariant.Q, value),
        (KVariant.TWO_Q_MINUS_ONE, (value + 1) // 2),
        (KVariant.TWO_Q_PLUS_ONE, (value - 1) // 2),
    ):
        if q >= p:
            s = as_prime_power(q, p)
            if s is not None and s >= 1:
                return AdmissibleK(variant, PrimePower(p, s))
    return None


def classify_admissible_k(value: int, char: CharLike) -> Optional[AdmissibleK]:
    """Membership of an odd ``value`` in ``{3, 5, 7, q, 2q-1, 2q+1}``.

    Prime-power forms take precedence (Q, then 2q-1, then 2q+1) over the
    sporadic values 3, 5, 7.
    """
    char = as_char(char)
    if value % 2 == 0:
        raise ValueError(f"expected an odd value, got {value}")
    if value < 3:
        return None
    if char.p:
        hit = _prime_power_forms(value, char.p)
        if hit is not None:
            return hit
    variant = _SMALL.get(value)
    return AdmissibleK(variant) if variant else None


def classify_final_k(value: int, char: CharLike, half_not_divisible: bool = True) -> Optional[AdmissibleK]:
    """Second-diamond degrees that survive all the exclusions.

    Starts from :func:`classify_admissible_k`, drops 7 unless ``p`` is 2 or 7,
    and (when ``half_not_divisible``) drops every value with ``p | (value-1)/2``,
    which is what the covering property forces.
    """
    char = as_char(char)
    hit = classify_admissible_k(value, char)
    if hit is None:
        return None
    if value == 7 and char.p not in (2, 7):
        return None
    if half_not_divisible and char.divides((value - 1) // 2):
        return None
    return hit


def final_k_closed_form(value: int, char: CharLike) -> bool:
    """Direct membership test for ``{3, 5, q, 2q-1}`` (``{3, 2q-1}`` when p = 2)."""
    char = as_char(char)
    p = char.p
    if value == 3:
        return True
    if p == 0:
        return value == 5
    if p == 2:
        return as_prime_power((value + 1) // 2, 2) not in (None, 0)
    if value == 5:
        return True
    if as_prime_power(value, p) not in (None, 0):
        return True
    return value % 2 == 1 and as_prime_power((value + 1) // 2, p) not in (None, 0)


# ---------------------------------------------------------------------------
# constituent lengths
# ---------------------------------------------------------------------------

def first_constituent_test(ell: int, char: CharLike) -> Optional[PrimePower]:
    """``q`` with ``ell == 2q`` when ``p | C(ell, j)`` for all ``0 < j < ell``, ``j != ell/2``."""
    char = as_char(char)
    if ell < 2 or ell % 2:
        raise ValueError(f"first constituent length must be even and >= 2, got {ell}")
    if not char.p:
        return None
    half = ell // 2
    for j in range(1, ell):
        if j != half and binom_mod(ell, j, char) != 0:
            return None
    s = as_prime_power(half, char.p)
    if s is None:
        raise ArithmeticError(f"criterion holds for ell={ell} but ell/2 is not a power of {char.p}")
    return PrimePower(char.p, s)


@dataclass(frozen=True)
class AdmissibleConstituent:
    """A constituent length ``2q`` (``s is None``) or ``2q - p**s`` with ``p**s <= q``."""

    q: PrimePower
    s: Optional[int] = None

    def __post_init__(self) -> None:
        if self.s is not None and not 0 <= self.s <= self.q.s:
            raise ValueError("deficit p**s must satisfy p**s <= q")

    @property
    def full(self) -> bool:
        return self.s is None

    @property
    def value(self) -> int:
        if self.s is None:
            return 2 * self.q.q
        return 2 * self.q.q - self.q.p ** self.s

    def __str__(self) -> str:
        return "FullLength" if self.s is None else f"Deficit(s={self.s})"


def constituent_length_test(ell_r: int, q: PrimePower) -> Optional[AdmissibleConstituent]:
    """Whether ``p | C(j, j - ell_r + 1)`` for ``ell_r <= j < 2q - 1``, as a closed form."""
    qq = q.q
    if not qq <= ell_r <= 2 * qq:
        raise ValueError(f"constituent length {ell_r} outside [{qq}, {2 * qq}]")
    for j in range(ell_r, 2 * qq - 1):
        if binom_mod(j, j - ell_r + 1, q.p) != 0:
            return None
    if ell_r == 2 * qq:
        return AdmissibleConstituent(q)
    s = as_prime_power(2 * qq - ell_r, q.p)
    if s is None:
        raise ArithmeticError(f"criterion holds for {ell_r} but 2q - {ell_r} is not a power of {q.p}")
    return AdmissibleConstituent(q, s)


def constituent_closed_form(ell_r: int, q: PrimePower) -> bool:
    """Direct membership test for ``{2q} U {2q - p**s : p**s <= q}``."""
    d = 2 * q.q - ell_r
    return d == 0 or (0 < d <= q.q and as_prime_power(d, q.p) is not None)


def reflection_identity_check(q: PrimePower) -> bool:
    """``(-1)**a C(a,b) == (-1)**b C(q-1-b, q-1-a) (mod p)`` for all ``0 <= b <= a < q``."""
    p, qq = q.p, q.q
    if qq < 2:
        raise ValueError("q must be at least 2")
    for a in range(qq):
        for b in range(a + 1):
            lhs = (-1) ** a * binom_mod(a, b, p)
            rhs = (-1) ** b * binom_mod(qq - 1 - b, qq - 1 - a, p)
            if (lhs - rhs) % p:
                return False
    return True


def chain_sets(char: CharLike, max_value: int) -> Dict[str, List[int]]:
    """Odd values ``3 <= v <= max_value`` under each criterion, for sweeps and reports."""
    char = as_char(char)
    odd = range(3, max_value + 1, 2)
    return {
        "hypothesis": [v for v in odd if chain_hypothesis_test((v - 1) // 2, char)],
        "extended": [v for v in odd if chain_hypothesis_test((v - 1) // 2, char, extended=True)],
        "lemma": [v for v in odd if classify_admissible_k(v, char) is not None],
        "theorem": [v for v in odd if classify_final_k(v, char) is not None],
    }
