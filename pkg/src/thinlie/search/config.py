"""Search configuration and branch statistics."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

from ..arith import PrimeChar, as_char

KINDS = ("maxclass", "thin")

# Free parameters tried in characteristic zero, where they cannot be exhausted.
RATIONAL_SAMPLES: Tuple[Fraction, ...] = (Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2))


@dataclass(frozen=True)
class SearchConfig:
    char: PrimeChar
    maxdeg: int
    kind: str
    lookahead: int = 0
    normalize: bool = True
    jobs: int = 1
    split_depth: int = 0  # 0 picks a default when jobs > 1
    # thin only: stop a branch once its second diamond k is known and the
    # table reaches degree 2k + 3 + lookahead (see thin_search.certificate_depth)
    certificate_cut: bool = False
    # thin only: explore just the branches whose second diamond sits in this degree
    second_diamond: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "char", as_char(self.char))
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if self.maxdeg < 6:
            raise ValueError("maxdeg must be at least 6")
        if self.lookahead < 0:
            raise ValueError("lookahead must be non-negative")
        if self.jobs < 1:
            raise ValueError("jobs must be positive")
        if self.second_diamond is not None and (self.kind != "thin" or self.second_diamond < 3):
            raise ValueError("second_diamond needs kind = 'thin' and a degree >= 3")

    @property
    def exhaustive(self) -> bool:
        """Characteristic zero samples free parameters instead of exhausting them."""
        return self.char.finite

    def echo(self) -> Dict[str, object]:
        return {
            "p": self.char.p,
            "degree": self.maxdeg,
            "kind": self.kind,
            "lookahead": self.lookahead,
            "normalize": self.normalize,
            "certificate_cut": self.certificate_cut,
            "second_diamond": self.second_diamond,
        }


@dataclass
class SearchStats:
    """Node counts by degree; ``dead`` counts branches with no consistent extension."""

    nodes: Counter = field(default_factory=Counter)
    dead: Counter = field(default_factory=Counter)
    pruned_covering: Counter = field(default_factory=Counter)
    emitted: int = 0
    sampled: bool = False

    def merge(self, other: "SearchStats") -> "SearchStats":
        self.nodes.update(other.nodes)
        self.dead.update(other.dead)
        self.pruned_covering.update(other.pruned_covering)
        self.emitted += other.emitted
        self.sampled = self.sampled or other.sampled
        return self

    def as_dict(self) -> Dict[str, object]:
        return {
            "emitted": self.emitted,
            "nodes_by_degree": {str(k): v for k, v in sorted(self.nodes.items())},
            "dead_by_degree": {str(k): v for k, v in sorted(self.dead.items())},
            "covering_pruned_by_degree": {str(k): v for k, v in sorted(self.pruned_covering.items())},
            "exhaustive": not self.sampled,
        }
