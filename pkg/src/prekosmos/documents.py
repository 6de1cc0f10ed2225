"""JSON input documents: schema checks, reference resolution and construction of library objects."""
from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

import jsonschema

from . import rep as P
from . import roster as R
from . import torsors as T
from .errors import ParseError, ShapeMismatch
from .hopf import (FinGroupObj, GroupMor, RatHopfObj, make_two_cell, validate_comm_alg, validate_group,
                   validate_group_mor, validate_hopf)

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")

_int_rows = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}
_rat = {"type": "string", "pattern": _RATIONAL.pattern}
_rat_row = {"type": "array", "items": _rat}
_rat_rows = {"type": "array", "items": _rat_row}
_ref = {"type": ["string", "object"]}
_size = {"type": "integer", "minimum": 0}


def _schema(kind: str, props: dict, required: list[str]) -> dict:
    return {"type": "object", "properties": {"kind": {"const": kind}, **props},
            "required": ["kind", *required]}


SCHEMAS = {
    "finset-group": _schema("finset-group", {"order": {"type": "integer", "minimum": 1}, "mul": _int_rows,
                                             "unit": {"type": "integer"},
                                             "inv": {"type": "array", "items": {"type": "integer"}},
                                             "labels": {"type": "array", "items": {"type": "string"}},
                                             "name": {"type": "string"}},
                            ["order", "mul", "unit", "inv"]),
    "rat-hopf": _schema("rat-hopf", {"dim": {"type": "integer", "minimum": 1}, "mul": _rat_rows, "unit": _rat_row,
                                     "comul": _rat_rows, "counit": _rat_row, "antipode": _rat_rows,
                                     "labels": {"type": "array", "items": {"type": "string"}},
                                     "name": {"type": "string"}},
                        ["dim", "mul", "unit", "comul", "counit", "antipode"]),
    "comm-alg": _schema("comm-alg", {"dim": _size, "mul": _rat_rows, "unit": _rat_row, "name": {"type": "string"}},
                        ["dim", "mul", "unit"]),
    "gal-rep": _schema("gal-rep", {"group": _ref, "size": _size, "action": _int_rows, "name": {"type": "string"}},
                       ["group", "size", "action"]),
    "gro-rep": _schema("gro-rep", {"group": _ref, "size": _size, "coaction": _rat_rows, "name": {"type": "string"}},
                       ["group", "size", "coaction"]),
    "gal-torsor": _schema("gal-torsor", {"group": _ref, "size": {"type": "integer", "minimum": 1},
                                         "action": _int_rows, "name": {"type": "string"}},
                          ["group", "size", "action"]),
    "gro-torsor": _schema("gro-torsor", {"group": _ref, "dim": _size, "mul": _rat_rows, "unit": _rat_row,
                                         "coaction": _rat_rows, "name": {"type": "string"}},
                          ["group", "dim", "mul", "unit", "coaction"]),
    "group-mor": _schema("group-mor", {"source": _ref, "target": _ref,
                                       "map": {"type": "array", "items": {"type": ["integer", "array"]}},
                                       "name": {"type": "string"}},
                         ["source", "target", "map"]),
    "two-cell": _schema("two-cell", {"first": _ref, "second": _ref, "point": {"type": ["integer", "array"]},
                                     "name": {"type": "string"}},
                        ["first", "second", "point"]),
    "roster": _schema("roster", {"entries": {"type": "array", "items": _ref}}, ["entries"]),
}

KINDS = tuple(k for k in SCHEMAS if k != "roster")


def builtin_objects() -> dict:
    """Named objects usable as string references without a file."""
    out = {}
    for g in R.galois_roster():
        out[g.name] = lambda g=g: g
    for h in R.grothendieck_roster():
        out[h.name] = lambda h=h: h
    out["O(Z/2)[1,t]"] = R.oz2_grouplike
    return out


@dataclass
class Loaded:
    kind: str
    value: object
    document: dict
    name: str


def _rats(rows):
    return [[Fraction(v) for v in row] for row in rows]


def _column(values):
    return [[Fraction(v)] for v in values]


class Loader:
    """Resolve and build documents; the same file or inline document always yields the same object."""

    def __init__(self):
        self._cache: dict[str, Loaded] = {}
        self._builtins = builtin_objects()
        self.digests: dict[str, str] = {}

    # -- reading

    def read(self, path: str | Path) -> dict:
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from exc
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}") from exc

    def load_path(self, path: str | Path) -> Loaded:
        path = Path(path).resolve()
        key = f"file:{path}"
        if key not in self._cache:
            doc = self.read(path)
            self.digests[str(path.name)] = _digest(doc)
            self._cache[key] = self._build(doc, path.parent, default_name=path.stem)
        return self._cache[key]

    def load_ref(self, ref, base: Path) -> Loaded:
        if isinstance(ref, dict):
            key = "inline:" + _canonical(ref)
            if key not in self._cache:
                self._cache[key] = self._build(ref, base)
            return self._cache[key]
        if ref in self._builtins:
            key = f"builtin:{ref}"
            if key not in self._cache:
                obj = self._builtins[ref]()
                kind = "finset-group" if isinstance(obj, FinGroupObj) else "rat-hopf"
                self._cache[key] = Loaded(kind, obj, {"builtin": ref}, ref)
            return self._cache[key]
        return self.load_path(base / ref)

    # -- building

    def _build(self, doc, base: Path, default_name: str = "") -> Loaded:
        if not isinstance(doc, dict) or "kind" not in doc:
            raise ParseError("an input document must be an object with a \"kind\" field")
        kind = doc["kind"]
        if kind not in SCHEMAS:
            raise ParseError(f"unknown kind {kind!r}; expected one of {', '.join(SCHEMAS)}")
        try:
            jsonschema.validate(doc, SCHEMAS[kind])
        except jsonschema.ValidationError as exc:
            where = "/".join(str(p) for p in exc.absolute_path) or "document"
            raise ParseError(f"{kind}: schema violation at {where}: {exc.message}") from exc
        name = doc.get("name") or default_name or kind
        try:
            value = getattr(self, "_" + kind.replace("-", "_"))(doc, base, name)
        except (ShapeMismatch, ZeroDivisionError, ValueError) as exc:
            raise ParseError(f"{kind}: {exc}") from exc
        return Loaded(kind, value, doc, name)

    def _group(self, ref, base) -> FinGroupObj | RatHopfObj:
        g = self.load_ref(ref, base)
        if g.kind not in ("finset-group", "rat-hopf"):
            raise ParseError(f"reference names a {g.kind}, expected a group or Hopf algebra")
        return g.value

    def _finset_group(self, doc, base, name):
        if len(doc["mul"]) != doc["order"]:
            raise ShapeMismatch(f"order {doc['order']} but {len(doc['mul'])} table rows")
        return validate_group(doc["mul"], doc["unit"], doc["inv"], doc.get("labels"), name)

    def _rat_hopf(self, doc, base, name):
        return validate_hopf(doc["dim"], _rats(doc["mul"]), _column(doc["unit"]), _rats(doc["comul"]),
                             [[Fraction(v) for v in doc["counit"]]], _rats(doc["antipode"]), name, doc.get("labels"))

    def _comm_alg(self, doc, base, name):
        return validate_comm_alg(doc["dim"], _rats(doc["mul"]), _column(doc["unit"]), name)

    def _gal_rep(self, doc, base, name):
        pi = self._group(doc["group"], base)
        if not isinstance(pi, FinGroupObj):
            raise ParseError("gal-rep needs a finset-group")
        return P.validate_gal_rep(pi, doc["size"], doc["action"], name)

    def _gro_rep(self, doc, base, name):
        pi = self._group(doc["group"], base)
        if not isinstance(pi, RatHopfObj):
            raise ParseError("gro-rep needs a rat-hopf")
        return P.validate_gro_rep(pi, doc["size"], _rats(doc["coaction"]), name)

    def _gal_torsor(self, doc, base, name):
        pi = self._group(doc["group"], base)
        if not isinstance(pi, FinGroupObj):
            raise ParseError("gal-torsor needs a finset-group")
        return T.validate_right_torsor(pi, doc["size"], doc["action"], name)

    def _gro_torsor(self, doc, base, name):
        pi = self._group(doc["group"], base)
        if not isinstance(pi, RatHopfObj):
            raise ParseError("gro-torsor needs a rat-hopf")
        alg = validate_comm_alg(doc["dim"], _rats(doc["mul"]), _column(doc["unit"]), f"{name} algebra")
        return T.validate_left_torsor(pi, alg, _rats(doc["coaction"]), name)

    def _group_mor(self, doc, base, name):
        src, dst = self._group(doc["source"], base), self._group(doc["target"], base)
        if type(src) is not type(dst):
            raise ParseError("source and target live on different sides")
        f = doc["map"]
        if isinstance(src, RatHopfObj):
            if not all(isinstance(row, list) for row in f):
                raise ParseError("a Hopf morphism map is a matrix of rational strings")
            if any(not isinstance(v, str) or not _RATIONAL.match(v) for row in f for v in row):
                raise ParseError("matrix entries must be rationals written as \"p/q\" or \"n\"")
            f = _rats(f)
        elif not all(isinstance(v, int) for v in f):
            raise ParseError("a group morphism map is a list of element indices")
        return validate_group_mor(src, dst, f)

    def _two_cell(self, doc, base, name):
        f1, f2 = self.load_ref(doc["first"], base), self.load_ref(doc["second"], base)
        if f1.kind != "group-mor" or f2.kind != "group-mor":
            raise ParseError("a two-cell relates two group-mor documents")
        theta = doc["point"]
        if isinstance(f1.value.dst, RatHopfObj):
            if not isinstance(theta, list) or any(not isinstance(v, str) or not _RATIONAL.match(v) for v in theta):
                raise ParseError("a point of a Hopf algebra is a row of rational strings")
            theta = [[Fraction(v) for v in theta]]
        elif not isinstance(theta, int):
            raise ParseError("a point of a finite group is an element index")
        return make_two_cell(theta, f1.value, f2.value)

    def _roster(self, doc, base, name):
        return list(doc["entries"])


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def _digest(obj) -> str:
    return hashlib.sha256(_canonical(obj).encode()).hexdigest()


def data_path(name: str) -> Path:
    """Path of a bundled example document."""
    return Path(str(resources.files("prekosmos") / "data" / name))


def side_of(obj) -> str:
    if isinstance(obj, (FinGroupObj, P.GalRep, T.GalTorsor)):
        return "galois"
    if isinstance(obj, GroupMor):
        return side_of(obj.src)
    return "grothendieck"


__all__ = ["Loader", "Loaded", "SCHEMAS", "KINDS", "builtin_objects", "data_path", "side_of"]
