"""Homogeneous elements and word evaluation shared by both table kinds."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from ..arith import FpScalar, PrimeChar
from . import linalg
from .linalg import Matrix
from .words import FormalSum, LeftNormedWord

GENERATOR_COORDS = {"x": (1, 0), "y": (0, 1)}


class _UnboundedType:
    """Marks an invariant whose defining event never happens within the truncation."""

    _instance: Optional["_UnboundedType"] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Unbounded"

    def __reduce__(self):
        return (_UnboundedType, ())


Unbounded = _UnboundedType()


@dataclass(frozen=True)
class HomogeneousElement:
    degree: int
    coords: Tuple[FpScalar, ...]

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)


class ActionTable:
    """Anything exposing the action of ``x`` and ``y`` degree by degree."""

    char: PrimeChar
    maxdeg: int

    def dim(self, i: int) -> int:  # pragma: no cover - interface
        raise NotImplementedError

    def action(self, i: int, g: str) -> Matrix:  # pragma: no cover - interface
        raise NotImplementedError


def degree_one_action(char: PrimeChar, g: str) -> Matrix:
    """``[x, g]`` and ``[y, g]`` as a 1x2 matrix, with ``e_2 = [y, x]``."""
    if g == "x":
        return [[0, 1]]
    return [[char.reduce(-1), 0]]


def apply_letters(table: ActionTable, elem: HomogeneousElement, letters: Sequence[str]) -> HomogeneousElement:
    char = table.char
    deg, v = elem.degree, list(elem.coords)
    for g in letters:
        if deg + 1 > table.maxdeg:
            raise ValueError(f"degree {deg + 1} exceeds the truncation degree {table.maxdeg}")
        v = linalg.mat_vec(char, table.action(deg, g), v)
        deg += 1
    return HomogeneousElement(deg, tuple(v))


def eval_word(table: ActionTable, word: LeftNormedWord) -> HomogeneousElement:
    """Coordinates of a left-normed word in the component basis."""
    if word.degree > table.maxdeg:
        raise ValueError(f"word degree {word.degree} exceeds the truncation degree {table.maxdeg}")
    start = HomogeneousElement(1, GENERATOR_COORDS[word.letters[0]])
    return apply_letters(table, start, word.letters[1:])


def eval_sum(table: ActionTable, s: FormalSum) -> Optional[HomogeneousElement]:
    """Evaluate a formal sum; ``None`` for the empty sum."""
    acc = None
    deg = None
    for coef, word in s.terms:
        e = eval_word(table, word)
        if acc is None:
            acc = [0] * len(e.coords)
            deg = e.degree
        linalg.axpy(table.char, acc, coef, e.coords)
    if acc is None:
        return None
    return HomogeneousElement(deg, tuple(acc))
