"""Left-normed words in the generators and formal combinations of them."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

from ..arith import FpScalar, PrimeChar, as_char, binom_mod

LETTERS = ("x", "y")


@dataclass(frozen=True)
class LeftNormedWord:
    """The iterated bracket ``[[...[a b] c] ...]``, written ``[abc...]``."""

    letters: Tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.letters:
            raise ValueError("a word needs at least one letter")
        bad = [c for c in self.letters if c not in LETTERS]
        if bad:
            raise ValueError(f"unknown generator(s) {bad}")

    @classmethod
    def parse(cls, text: str) -> "LeftNormedWord":
        """Parse ``"yxxy"`` or the power shorthand ``"y x^3 y"``."""
        letters: List[str] = []
        for token in text.replace("[", " ").replace("]", " ").split():
            if "^" in token:
                head, exp = token.split("^", 1)
                if len(head) != 1:
                    raise ValueError(f"bad power token {token!r}")
                letters.extend(head * int(exp))
            else:
                letters.extend(token)
        return cls(tuple(letters))

    @property
    def degree(self) -> int:
        return len(self.letters)

    def __add__(self, other: "LeftNormedWord | str | Iterable[str]") -> "LeftNormedWord":
        tail = other.letters if isinstance(other, LeftNormedWord) else tuple(other)
        return LeftNormedWord(self.letters + tail)

    def __str__(self) -> str:
        return "[" + "".join(self.letters) + "]"


@dataclass(frozen=True)
class FormalSum:
    """A homogeneous combination of left-normed words, merged and without zero terms."""

    char: PrimeChar
    terms: Tuple[Tuple[FpScalar, LeftNormedWord], ...]

    @classmethod
    def build(cls, char, terms: Iterable[Tuple[FpScalar, LeftNormedWord]]) -> "FormalSum":
        char = as_char(char)
        merged: Dict[LeftNormedWord, FpScalar] = {}
        order: List[LeftNormedWord] = []
        degree = None
        for coef, word in terms:
            if degree is None:
                degree = word.degree
            elif word.degree != degree:
                raise ValueError("formal sums must be homogeneous")
            if word not in merged:
                merged[word] = 0
                order.append(word)
            merged[word] = char.reduce(char.add(merged[word], coef))
        return cls(char, tuple((merged[w], w) for w in order if merged[w]))

    def coefficient(self, word: LeftNormedWord) -> FpScalar:
        for c, w in self.terms:
            if w == word:
                return c
        return 0

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{w}" for c, w in self.terms)


def expand_generalized_jacobi(prefix: LeftNormedWord, inner_head: str, inner_tail: str, j: int,
                              char) -> FormalSum:
    """Expand ``[v [y z^j]]`` as ``sum_i (-1)^i C(j,i) [v z^i y z^(j-i)]``.

    Here ``v`` is ``prefix``, ``y`` is ``inner_head`` and ``z`` is ``inner_tail``.
    """
    if j < 0:
        raise ValueError("j must be non-negative")
    char = as_char(char)
    terms = []
    for i in range(j + 1):
        c = binom_mod(j, i, char)
        if i % 2:
            c = char.neg(c)
        word = prefix + ((inner_tail,) * i + (inner_head,) + (inner_tail,) * (j - i))
        terms.append((c, word))
    return FormalSum.build(char, terms)
