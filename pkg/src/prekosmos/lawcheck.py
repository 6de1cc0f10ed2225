"""Exact equation checking with first-failure witnesses, and isomorphism certification."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from . import kosmos as K
from .errors import NotBijective, NotInvertible, ShapeMismatch
from .kosmos import FinMap, Mor, RatMap


@dataclass(frozen=True)
class Witness:
    """Smallest failing domain index (or basis vector) with both sides' values there."""

    index: int
    lhs: Any
    rhs: Any

    def to_dict(self) -> dict:
        return {"index": self.index, "lhs": self.lhs, "rhs": self.rhs}


@dataclass(frozen=True, eq=False)
class Equation:
    name: str
    lhs: Mor
    rhs: Mor
    anchor: str = ""


@dataclass(frozen=True)
class Report:
    name: str
    passed: bool
    witness: Witness | None = None
    anchor: str = ""
    note: str = ""
    data: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.passed != (self.witness is None):
            raise ValueError("a witness is present exactly when the check failed")

    def to_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.anchor:
            out["anchor"] = self.anchor
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        if self.note:
            out["note"] = self.note
        if self.data:
            out["data"] = self.data
        return out

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"[{status}] {self.name}"
        if self.witness is not None:
            w = self.witness
            text += f" (at {w.index}: {w.lhs} vs {w.rhs})"
        return text


def failure(name: str, reason: str, anchor: str = "") -> Report:
    """A failed report whose witness is a message rather than an index."""
    return Report(name, False, Witness(-1, reason, None), anchor=anchor)


def _column_strings(m: RatMap, j: int) -> list[str]:
    return [K.rat_str(v) for v in m.column(j)]


def outcome(name: str, ok: bool, reason: str = "", data: dict | None = None) -> Report:
    """A pass/fail report for a non-equational check; ``reason`` explains a failure."""
    if ok:
        return Report(name, True, data=data or {})
    return Report(name, False, Witness(-1, reason or "check failed", None), data=data or {})


def check_equation(eq: Equation) -> Report:
    lhs, rhs = eq.lhs, eq.rhs
    if K.equals(lhs, rhs):
        return Report(eq.name, True, anchor=eq.anchor)
    if isinstance(lhs, FinMap):
        i = next(i for i, (a, b) in enumerate(zip(lhs.table, rhs.table)) if a != b)
        w = Witness(i, lhs(i), rhs(i))
    else:
        j = K._first_bad_column(lhs, rhs)
        w = Witness(j, _column_strings(lhs, j), _column_strings(rhs, j))
    return Report(eq.name, False, w, anchor=eq.anchor)


def check(name: str, lhs: Mor, rhs: Mor, anchor: str = "") -> Report:
    return check_equation(Equation(name, lhs, rhs, anchor))


def certify_iso(f: Mor) -> Mor:
    """Return the inverse of ``f``, or raise with a collision / rank witness."""
    if isinstance(f, FinMap):
        if f.dom.size != f.cod.size:
            raise NotBijective(f"{f.dom.size} elements cannot biject onto {f.cod.size}",
                               witness=("size", f.dom.size, f.cod.size))
        inv = [None] * f.cod.size
        for i, t in enumerate(f.table):
            if inv[t] is not None:
                raise NotBijective(f"elements {inv[t]} and {i} collide at {t}", witness=(inv[t], i))
            inv[t] = i
        return FinMap(f.cod, f.dom, tuple(inv))
    n = f.dom.dim
    if n != f.cod.dim:
        raise NotInvertible(f"{f.cod.dim}x{n} matrix is not square", witness=("shape", f.cod.dim, n))
    if n == 0:
        return RatMap(f.cod, f.dom, DomainMatrix.zeros((0, 0), QQ))
    # one sparse row reduction of [f | I] gives both the rank and the inverse
    sparse = f.dm.to_sparse()
    aug = sparse.hstack(DomainMatrix.eye(n, QQ).to_sparse())
    red, pivots = aug.rref()
    r = sum(1 for p in pivots if p < n)
    if r < n:
        raise NotInvertible(f"rank {r} < {n}", witness=("rank", r, n))
    out = RatMap(f.cod, f.dom, red[:, n:])
    if not (K.equals(K.compose(out, f), K.identity(f.dom)) and K.equals(K.compose(f, out), K.identity(f.cod))):
        raise NotInvertible("inverse failed exact verification")
    return out


def is_iso(f: Mor) -> bool:
    try:
        certify_iso(f)
    except (NotBijective, NotInvertible):
        return False
    return True


def iso_report(name: str, f: Mor, anchor: str = "") -> tuple[Report, Mor | None]:
    """Certify ``f``; on failure the witness records the collision or rank data."""
    try:
        inv = certify_iso(f)
    except (NotBijective, NotInvertible) as exc:
        w = exc.witness
        return Report(name, False, Witness(-1, str(w), "invertible"), anchor=anchor), None
    return Report(name, True, anchor=anchor), inv


def all_passed(reports) -> bool:
    return all(r.passed for r in reports)


def require_same_shape(f: Mor, g: Mor) -> None:
    if K.size(f.dom) != K.size(g.dom) or K.size(f.cod) != K.size(g.cod):
        raise ShapeMismatch("shapes differ")
