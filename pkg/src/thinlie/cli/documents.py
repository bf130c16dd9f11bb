"""JSON documents: one algebra or report per line.

Scalars are decimal strings (``"3"``, ``"-1/2"``) so that documents do not
depend on the characteristic or on integer width.  Parsing is strict:
unknown or missing fields, non-canonical residues and shape errors raise
:class:`DocumentError`.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Union

from ..arith import FpScalar, PrimeChar, as_char
from ..lie_engine.elements import Unbounded
from ..lie_engine.maxclass import MaxClassTable, point_to_pair
from ..lie_engine.thin import ThinTable

SCHEMA_VERSION = 1

Table = Union[MaxClassTable, ThinTable]

_ALGEBRA_KEYS = {
    "maxclass": {"schema", "type", "kind", "char", "maxdeg", "centralizers"},
    "thin": {"schema", "type", "kind", "char", "maxdeg", "dims", "actions"},
}
_SCALAR = re.compile(r"-?\d+(/\d+)?")


class DocumentError(ValueError):
    pass


def scalar_to_str(v: FpScalar) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return str(v)


def scalar_from_str(s: Any, char: PrimeChar) -> FpScalar:
    if not isinstance(s, str) or not _SCALAR.fullmatch(s):
        raise DocumentError(f"scalar must be a decimal string, got {s!r}")
    if char.p:
        if "/" in s:
            raise DocumentError(f"fractions are not residues mod {char.p}: {s!r}")
        v = int(s)
        if not 0 <= v < char.p:
            raise DocumentError(f"residue {s} is not canonical mod {char.p}")
        return v
    v = Fraction(s)
    if v.denominator == 0:  # pragma: no cover - Fraction raises first
        raise DocumentError(f"bad fraction {s!r}")
    return v if v.denominator != 1 else Fraction(v.numerator)


def jsonable(v: Any) -> Any:
    """Profiles and reports to plain JSON values; scalars become strings."""
    if v is Unbounded:
        return "Unbounded"
    if isinstance(v, Fraction):
        return scalar_to_str(v)
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    return v


def dumps(doc: Dict[str, Any]) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


# -- algebras ------------------------------------------------------------------

def algebra_document(table: Table) -> Dict[str, Any]:
    char = table.char
    doc: Dict[str, Any] = {"schema": SCHEMA_VERSION, "type": "algebra", "char": char.p, "maxdeg": table.maxdeg}
    if isinstance(table, MaxClassTable):
        doc["kind"] = "maxclass"
        doc["centralizers"] = [[scalar_to_str(c) for c in pt] for pt in table.centralizers().points]
    elif isinstance(table, ThinTable):
        doc["kind"] = "thin"
        doc["dims"] = list(table.dims)
        doc["actions"] = [[[[scalar_to_str(c) for c in row] for row in m] for m in pair] for pair in table.actions]
    else:
        raise TypeError(f"cannot serialize {type(table).__name__}")
    return doc


def _int_field(doc: Dict[str, Any], key: str) -> int:
    v = doc[key]
    if not isinstance(v, int) or isinstance(v, bool):
        raise DocumentError(f"{key} must be an integer")
    return v


def parse_algebra(doc: Any) -> Table:
    if not isinstance(doc, dict):
        raise DocumentError("algebra document must be a JSON object")
    kind = doc.get("kind")
    if kind not in _ALGEBRA_KEYS:
        raise DocumentError(f"unknown kind {kind!r}")
    keys = set(doc)
    if keys != _ALGEBRA_KEYS[kind]:
        extra, missing = sorted(keys - _ALGEBRA_KEYS[kind]), sorted(_ALGEBRA_KEYS[kind] - keys)
        raise DocumentError(f"unexpected fields {extra}, missing fields {missing}")
    if doc["schema"] != SCHEMA_VERSION:
        raise DocumentError(f"unsupported schema version {doc['schema']!r}")
    if doc["type"] != "algebra":
        raise DocumentError(f"expected an algebra document, got type {doc['type']!r}")
    try:
        char = as_char(_int_field(doc, "char"))
    except ValueError as exc:
        raise DocumentError(str(exc)) from None
    maxdeg = _int_field(doc, "maxdeg")
    try:
        if kind == "maxclass":
            pts = doc["centralizers"]
            if not isinstance(pts, list) or len(pts) != maxdeg - 2:
                raise DocumentError(f"expected {maxdeg - 2} centralizers")
            pairs = []
            for pt in pts:
                if not isinstance(pt, list) or len(pt) != 2:
                    raise DocumentError("a centralizer is a pair of scalars")
                s, t = (scalar_from_str(c, char) for c in pt)
                pair = point_to_pair(char, (s, t))
                pairs.append(pair)
            table: Table = MaxClassTable(char, maxdeg, tuple(pairs))
            if [list(p) for p in table.centralizers().points] != [[scalar_from_str(c, char) for c in pt] for pt in pts]:
                raise DocumentError("centralizers are not in canonical form")
            return table
        dims = doc["dims"]
        if not isinstance(dims, list) or len(dims) != maxdeg or not all(isinstance(d, int) for d in dims):
            raise DocumentError(f"expected {maxdeg} integer dimensions")
        acts = doc["actions"]
        if not isinstance(acts, list):
            raise DocumentError("actions must be a list")
        parsed = []
        for pair in acts:
            if not isinstance(pair, list) or len(pair) != 2:
                raise DocumentError("each degree carries the matrices of x and y")
            mats = []
            for m in pair:
                if not isinstance(m, list) or not all(isinstance(r, list) for r in m):
                    raise DocumentError("a matrix is a list of rows")
                mats.append(tuple(tuple(scalar_from_str(c, char) for c in r) for r in m))
            parsed.append(tuple(mats))
        return ThinTable(char, maxdeg, tuple(dims), tuple(parsed))
    except DocumentError:
        raise
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def loads_algebras(text: str) -> List[Table]:
    out = []
    for n, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            doc = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"line {n}: {exc}") from None
        try:
            out.append(parse_algebra(doc))
        except DocumentError as exc:
            raise DocumentError(f"line {n}: {exc}") from None
    return out


# -- reports ---------------------------------------------------------------------

@dataclass
class ReportDocument:
    command: str
    config: Dict[str, Any]
    results: Any
    violations: List[str] = field(default_factory=list)
    duration: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def as_dict(self) -> Dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "type": "report",
            "command": self.command,
            "config": jsonable(self.config),
            "results": jsonable(self.results),
            "violations": list(self.violations),
            "pass": self.passed,
            "duration_seconds": round(self.duration, 3),
        }

    def dumps(self) -> str:
        return dumps(self.as_dict())
