"""Exact integer and prime-field arithmetic.

Scalars are plain Python numbers: canonical residues ``0 <= v < p`` for a
prime ``p``, and :class:`fractions.Fraction` (or ``int``) when ``p == 0``.
Characteristic zero behaves like the rationals, so every "congruence mod p"
in this package degrades to an equality of integers there.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Iterator, List, Optional, Union

FpScalar = Union[int, Fraction]

# Rows of Pascal's triangle kept in memory by the shared cache.
PASCAL_CACHE_ROWS = 4096


def is_prime(n: int) -> bool:
    """Deterministic trial division; adequate for the small primes used here."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeChar:
    """The characteristic of a prime field: a prime ``p`` or ``0`` for Q."""

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise TypeError(f"characteristic must be an int, got {self.p!r}")
        if self.p != 0 and not is_prime(self.p):
            raise ValueError(f"characteristic must be 0 or a prime, got {self.p}")

    def __int__(self) -> int:
        return self.p

    def __str__(self) -> str:
        return str(self.p)

    @property
    def finite(self) -> bool:
        return self.p > 0

    # -- scalar arithmetic -------------------------------------------------
    def reduce(self, v: Union[int, Fraction]) -> FpScalar:
        if self.p:
            if isinstance(v, Fraction):
                return v.numerator * pow(v.denominator, -1, self.p) % self.p
            return v % self.p
        if isinstance(v, Fraction) and v.denominator == 1:
            return v.numerator
        return v

    def add(self, a: FpScalar, b: FpScalar) -> FpScalar:
        return (a + b) % self.p if self.p else a + b

    def sub(self, a: FpScalar, b: FpScalar) -> FpScalar:
        return (a - b) % self.p if self.p else a - b

    def mul(self, a: FpScalar, b: FpScalar) -> FpScalar:
        return (a * b) % self.p if self.p else a * b

    def neg(self, a: FpScalar) -> FpScalar:
        return -a % self.p if self.p else -a

    def inv(self, a: FpScalar) -> FpScalar:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(int(a), -1, self.p)
        return Fraction(1) / a

    def div(self, a: FpScalar, b: FpScalar) -> FpScalar:
        return self.reduce(self.mul(a, self.inv(b)))

    def elements(self) -> List[int]:
        """All field elements in canonical order (finite fields only)."""
        if not self.p:
            raise ValueError("characteristic zero has no finite element list")
        return list(range(self.p))

    def congruent(self, a: int, b: int) -> bool:
        """``a == b (mod p)``, read as integer equality when ``p == 0``."""
        return (a - b) % self.p == 0 if self.p else a == b

    def divides(self, n: int) -> bool:
        """Whether ``p`` divides ``n``; for ``p == 0`` only ``n == 0`` qualifies."""
        return n % self.p == 0 if self.p else n == 0


@lru_cache(maxsize=None)
def _char_of(p: int) -> PrimeChar:
    return PrimeChar(p)


def as_char(char: Union[PrimeChar, int]) -> PrimeChar:
    return char if isinstance(char, PrimeChar) else _char_of(char)


@dataclass(frozen=True)
class PrimePower:
    """``q = p**s`` with ``p`` a positive prime."""

    p: int
    s: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not a prime")
        if self.s < 0:
            raise ValueError("exponent must be non-negative")

    @property
    def q(self) -> int:
        return self.p ** self.s

    @classmethod
    def of(cls, q: int, p: int) -> "PrimePower":
        s = as_prime_power(q, p)
        if s is None:
            raise ValueError(f"{q} is not a power of {p}")
        return cls(p, s)

    def __int__(self) -> int:
        return self.q


class _PascalCache:
    """Rows of Pascal's triangle built by addition only, shared across threads."""

    def __init__(self, max_rows: int) -> None:
        self.max_rows = max_rows
        self._rows: List[List[int]] = [[1]]
        self._lock = threading.Lock()

    def row(self, a: int) -> List[int]:
        if a < len(self._rows):
            return self._rows[a]
        if a >= self.max_rows:
            return _pascal_row(a)
        with self._lock:
            rows = self._rows
            while len(rows) <= a:
                prev = rows[-1]
                rows.append([1] + [x + y for x, y in zip(prev, prev[1:])] + [1])
            return rows[a]


def _pascal_row(a: int) -> List[int]:
    row = [1]
    for _ in range(a):
        row = [1] + [x + y for x, y in zip(row, row[1:])] + [1]
    return row


_PASCAL = _PascalCache(PASCAL_CACHE_ROWS)


def binom_exact(a: int, b: int) -> int:
    """Exact binomial coefficient, zero when ``b > a``."""
    if a < 0 or b < 0:
        raise ValueError("binomial arguments must be non-negative")
    if b > a:
        return 0
    return _PASCAL.row(a)[b]


def lucas_digits(a: int, p: int) -> List[int]:
    """Little-endian base-``p`` digits of ``a`` (``[0]`` for zero)."""
    if p < 2:
        raise ValueError("base must be at least 2")
    if a < 0:
        raise ValueError("only non-negative integers have digit expansions")
    if a == 0:
        return [0]
    digits = []
    while a:
        a, d = divmod(a, p)
        digits.append(d)
    return digits


def binom_mod(a: int, b: int, char: Union[PrimeChar, int]) -> FpScalar:
    """Binomial coefficient reduced mod ``p`` via the digit product of Lucas' theorem."""
    char = as_char(char)
    if a < 0 or b < 0:
        raise ValueError("binomial arguments must be non-negative")
    if not char.p:
        return binom_exact(a, b)
    if b > a:
        return 0
    p = char.p
    small = _digit_binomials(p)
    result = 1
    while b:
        a, ai = divmod(a, p)
        b, bi = divmod(b, p)
        if bi > ai:
            return 0
        result = result * small[ai][bi] % p
    return result


@lru_cache(maxsize=None)
def _digit_binomials(p: int) -> List[List[int]]:
    return [[binom_exact(a, b) % p for b in range(a + 1)] for a in range(p)]


def as_prime_power(n: int, p: int) -> Optional[int]:
    """Return ``s`` with ``n == p**s``, or ``None``."""
    if p < 2 or n < 1:
        raise ValueError("need p >= 2 and n >= 1")
    s = 0
    while n % p == 0:
        n //= p
        s += 1
    return s if n == 1 else None


def powers_of(p: int, limit: int) -> Iterator[int]:
    """Powers ``p**s`` (``s >= 0``) not exceeding ``limit``."""
    q = 1
    while q <= limit:
        yield q
        q *= p
