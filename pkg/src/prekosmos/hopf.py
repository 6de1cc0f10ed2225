"""Group objects: finite groups in finite sets and commutative Hopf algebras over Q.

Finite groups are Hopf monoids in the cartesian category of finite sets: the
comultiplication is forced to be the diagonal and the counit the terminal map.
On the linear side a group object of affine schemes is a commutative Hopf
algebra; morphisms and points are stored in the algebra direction.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence, Union

from . import kosmos as K
from .errors import AxiomFailure, InvalidPoint, NotComposable, ShapeMismatch
from .kosmos import KAPPA_FIN, KAPPA_RAT, FinMap, FinObj, RatMap, RatObj
from .lawcheck import Report, check, failure


# ---------------------------------------------------------------------------
# finite groups


@dataclass(frozen=True, eq=False)
class FinGroupObj:
    carrier: FinObj
    mul: FinMap
    unit: int
    inv: FinMap
    name: str = ""

    @property
    def order(self) -> int:
        return self.carrier.size

    def m(self, a: int, b: int) -> int:
        return self.mul.table[a * self.carrier.size + b]

    def i(self, a: int) -> int:
        return self.inv.table[a]

    @property
    def unit_map(self) -> FinMap:
        return K.point(self.carrier, self.unit)

    @property
    def antipode(self) -> FinMap:
        return self.inv

    @property
    def comul(self) -> FinMap:
        return K.diagonal(self.carrier)

    @property
    def counit(self) -> FinMap:
        return K.terminal(self.carrier)

    def table(self) -> list[list[int]]:
        n = self.order
        return [[self.m(a, b) for b in range(n)] for a in range(n)]

    def __repr__(self) -> str:
        return f"FinGroupObj({self.name or self.order})"


def group_axiom_reports(carrier: FinObj, mul: FinMap, unit_map: FinMap, inv: FinMap) -> list[Report]:
    """The Hopf-monoid axioms, each as a literal composite equation."""
    I = K.identity(carrier)
    delta, e = K.diagonal(carrier), K.terminal(carrier)
    ue = K.compose(unit_map, e)
    s = K.symmetry(carrier, carrier)
    return [
        check("associativity", K.compose(mul, K.tensor_map(mul, I)), K.compose(mul, K.tensor_map(I, mul))),
        check("left unit", K.compose(mul, K.tensor_map(unit_map, I)), I),
        check("right unit", K.compose(mul, K.tensor_map(I, unit_map)), I),
        check("left antipode", K.compose(mul, K.tensor_map(inv, I), delta), ue),
        check("right antipode", K.compose(mul, K.tensor_map(I, inv), delta), ue),
        check("comultiplication is multiplicative",
              K.compose(delta, mul),
              K.compose(K.tensor_map(mul, mul), K.tensor_map(I, s, I), K.tensor_map(delta, delta))),
    ]


def validate_group(table: Sequence[Sequence[int]], unit: int, inv: Sequence[int],
                   labels: Sequence[str] | None = None, name: str = "") -> FinGroupObj:
    n = len(table)
    if n < 1:
        raise ShapeMismatch("a group carrier must be nonempty")
    if any(len(row) != n for row in table) or len(inv) != n:
        raise ShapeMismatch("multiplication table must be square and match the inverse table")
    if not 0 <= unit < n:
        raise ShapeMismatch(f"unit {unit} outside carrier")
    carrier = FinObj(n, labels)
    pp = K.tensor_obj(carrier, carrier)
    mul = FinMap(pp, carrier, tuple(v for row in table for v in row))
    inv_map = FinMap(carrier, carrier, tuple(inv))
    reports = group_axiom_reports(carrier, mul, K.point(carrier, unit), inv_map)
    bad = [r for r in reports if not r.passed]
    if bad:
        raise AxiomFailure(f"group axioms fail: {', '.join(r.name for r in bad)}", bad)
    return FinGroupObj(carrier, mul, unit, inv_map, name)


# ---------------------------------------------------------------------------
# commutative algebras and Hopf algebras over Q


@dataclass(frozen=True, eq=False)
class CommAlgObj:
    carrier: RatObj
    mul: RatMap
    unit: RatMap
    name: str = ""

    @property
    def dim(self) -> int:
        return self.carrier.dim


@dataclass(frozen=True, eq=False)
class RatHopfObj:
    carrier: RatObj
    mul: RatMap
    unit: RatMap
    comul: RatMap
    counit: RatMap
    antipode: RatMap
    name: str = ""

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def algebra(self) -> CommAlgObj:
        return CommAlgObj(self.carrier, self.mul, self.unit, self.name)

    def __repr__(self) -> str:
        return f"RatHopfObj({self.name or self.dim})"


def algebra_axiom_reports(carrier: RatObj, mul: RatMap, unit: RatMap) -> list[Report]:
    I = K.identity(carrier)
    return [
        check("associativity", K.compose(mul, K.tensor_map(mul, I)), K.compose(mul, K.tensor_map(I, mul))),
        check("commutativity", K.compose(mul, K.symmetry(carrier, carrier)), mul),
        check("left unit", K.compose(mul, K.tensor_map(unit, I)), I),
        check("right unit", K.compose(mul, K.tensor_map(I, unit)), I),
    ]


def hopf_axiom_reports(carrier: RatObj, mul: RatMap, unit: RatMap, comul: RatMap,
                       counit: RatMap, antipode: RatMap) -> list[Report]:
    I = K.identity(carrier)
    s = K.symmetry(carrier, carrier)
    ue = K.compose(unit, counit)
    reports = algebra_axiom_reports(carrier, mul, unit)
    reports += [
        check("coassociativity", K.compose(K.tensor_map(comul, I), comul), K.compose(K.tensor_map(I, comul), comul)),
        check("left counit", K.compose(K.tensor_map(counit, I), comul), I),
        check("right counit", K.compose(K.tensor_map(I, counit), comul), I),
        check("comultiplication is multiplicative",
              K.compose(comul, mul),
              K.compose(K.tensor_map(mul, mul), K.tensor_map(I, s, I), K.tensor_map(comul, comul))),
        check("counit is multiplicative", K.compose(counit, mul), K.tensor_map(counit, counit)),
        check("comultiplication is unital", K.compose(comul, unit), K.tensor_map(unit, unit)),
        check("counit is unital", K.compose(counit, unit), K.identity(KAPPA_RAT)),
        check("left antipode", K.compose(mul, K.tensor_map(antipode, I), comul), ue),
        check("right antipode", K.compose(mul, K.tensor_map(I, antipode), comul), ue),
    ]
    return reports


def _as_map(value, dom: RatObj, cod: RatObj) -> RatMap:
    if isinstance(value, RatMap):
        if value.dom.dim != dom.dim or value.cod.dim != cod.dim:
            raise ShapeMismatch(f"expected a {cod.dim}x{dom.dim} matrix")
        return RatMap(dom, cod, value.dm)
    return K.rat_map(dom, cod, value)


def validate_comm_alg(dim: int, mul, unit, name: str = "", labels=None) -> CommAlgObj:
    carrier = RatObj(dim, labels)
    mul = _as_map(mul, K.tensor_obj(carrier, carrier), carrier)
    unit = _as_map(unit, KAPPA_RAT, carrier)
    reports = algebra_axiom_reports(carrier, mul, unit)
    bad = [r for r in reports if not r.passed]
    if bad:
        raise AxiomFailure(f"algebra axioms fail: {', '.join(r.name for r in bad)}", bad)
    return CommAlgObj(carrier, mul, unit, name)


def validate_hopf(dim: int, mul, unit, comul, counit, antipode, name: str = "", labels=None) -> RatHopfObj:
    if dim < 1:
        raise ShapeMismatch("a Hopf algebra carrier must be nonzero")
    carrier = RatObj(dim, labels)
    pp = K.tensor_obj(carrier, carrier)
    maps = (
        _as_map(mul, pp, carrier),
        _as_map(unit, KAPPA_RAT, carrier),
        _as_map(comul, carrier, pp),
        _as_map(counit, carrier, KAPPA_RAT),
        _as_map(antipode, carrier, carrier),
    )
    reports = hopf_axiom_reports(carrier, *maps)
    bad = [r for r in reports if not r.passed]
    if bad:
        raise AxiomFailure(f"Hopf axioms fail: {', '.join(r.name for r in bad)}", bad)
    return RatHopfObj(carrier, *maps, name=name)


def is_algebra_morphism(f: RatMap, src: CommAlgObj, dst: CommAlgObj) -> list[Report]:
    return [
        check("preserves multiplication", K.compose(f, src.mul), K.compose(dst.mul, K.tensor_map(f, f))),
        check("preserves unit", K.compose(f, src.unit), dst.unit),
    ]


KAPPA_ALG = CommAlgObj(KAPPA_RAT, K.identity(KAPPA_RAT), K.identity(KAPPA_RAT), "kappa")


# ---------------------------------------------------------------------------
# morphisms of group objects


GroupObj = Union[FinGroupObj, RatHopfObj]


@dataclass(frozen=True, eq=False)
class GroupMor:
    """``src -> dst``; on the linear side ``map`` is the algebra map ``dst -> src``."""

    src: GroupObj
    dst: GroupObj
    map: FinMap | RatMap

    def same_as(self, other: GroupMor) -> bool:
        return self.src is other.src and self.dst is other.dst and K.equals(self.map, other.map)


def group_mor_reports(src: GroupObj, dst: GroupObj, f) -> list[Report]:
    if isinstance(src, FinGroupObj):
        return [
            check("preserves product", K.compose(f, src.mul), K.compose(dst.mul, K.tensor_map(f, f))),
            check("preserves unit", K.compose(f, src.unit_map), dst.unit_map),
        ]
    return [
        check("algebra map preserves product", K.compose(f, dst.mul), K.compose(src.mul, K.tensor_map(f, f))),
        check("algebra map preserves unit", K.compose(f, dst.unit), src.unit),
        check("algebra map preserves coproduct", K.compose(K.tensor_map(f, f), dst.comul), K.compose(src.comul, f)),
        check("algebra map preserves counit", K.compose(src.counit, f), dst.counit),
    ]


def validate_group_mor(src: GroupObj, dst: GroupObj, f) -> GroupMor:
    if isinstance(src, FinGroupObj):
        if not isinstance(f, FinMap):
            f = K.fin_map(src.carrier, dst.carrier, f)
        f = FinMap(src.carrier, dst.carrier, f.table)
    else:
        f = _as_map(f, dst.carrier, src.carrier)
    bad = [r for r in group_mor_reports(src, dst, f) if not r.passed]
    if bad:
        raise AxiomFailure("not a morphism of group objects", bad)
    return GroupMor(src, dst, f)


def identity_mor(pi: GroupObj) -> GroupMor:
    return GroupMor(pi, pi, K.identity(pi.carrier))


def compose_mor(f: GroupMor, g: GroupMor) -> GroupMor:
    """``f o g`` for ``g: a -> b``, ``f: b -> c``."""
    if g.dst is not f.src:
        raise NotComposable("group morphisms do not compose")
    if isinstance(f.map, FinMap):
        return GroupMor(g.src, f.dst, K.compose(f.map, g.map))
    return GroupMor(g.src, f.dst, K.compose(g.map, f.map))


# ---------------------------------------------------------------------------
# convolution


def convolution(f, g, pi: GroupObj, b: CommAlgObj | None = None):
    """Finite sets: ``mul o (f (x) g) o diag`` for ``f, g: c -> pi``.
    Linear side: ``mul_b o (f (x) g) o comul_pi`` for ``f, g: pi -> b``."""
    if isinstance(f, FinMap):
        if f.dom.size != g.dom.size:
            raise ShapeMismatch("convolution factors must share a domain")
        return K.compose(pi.mul, K.tensor_map(f, g), K.diagonal(f.dom))
    b = b or KAPPA_ALG
    return K.compose(b.mul, K.tensor_map(f, g), pi.comul)


def convolution_unit(c_or_pi, pi: GroupObj, b: CommAlgObj | None = None):
    if isinstance(pi, FinGroupObj):
        return K.compose(pi.unit_map, K.terminal(c_or_pi))
    b = b or KAPPA_ALG
    return K.compose(b.unit, pi.counit)


def hom_group(c: FinObj, pi: FinGroupObj) -> FinGroupObj:
    """All functions ``c -> pi`` under pointwise product, in lexicographic order."""
    funcs = list(itertools.product(range(pi.order), repeat=c.size))
    index = {f: k for k, f in enumerate(funcs)}
    table = [[index[tuple(pi.m(a, b) for a, b in zip(f, g))] for g in funcs] for f in funcs]
    unit = index[(pi.unit,) * c.size]
    inv = [index[tuple(pi.i(a) for a in f)] for f in funcs]
    labels = [",".join(map(str, f)) or "()" for f in funcs]
    return validate_group(table, unit, inv, labels, name=f"Hom({c.size},{pi.name or pi.order})")


def hom_index(f: FinMap, pi: FinGroupObj) -> int:
    """Position of a function ``c -> pi`` in ``hom_group``'s enumeration."""
    k = 0
    for v in f.table:
        k = k * pi.order + v
    return k


# ---------------------------------------------------------------------------
# points, inner automorphisms and 2-cells


def check_point(theta, pi: GroupObj):
    if isinstance(pi, FinGroupObj):
        if not isinstance(theta, int) or not 0 <= theta < pi.order:
            raise InvalidPoint(f"{theta!r} is not an element of the group", witness=theta)
        return theta
    theta = _as_map(theta, pi.carrier, KAPPA_RAT)
    bad = [r for r in is_algebra_morphism(theta, pi.algebra, KAPPA_ALG) if not r.passed]
    if bad:
        raise InvalidPoint("not an algebra morphism to the base field", witness=bad[0].witness)
    return theta


def inner_auto(theta, pi: GroupObj) -> GroupMor:
    theta = check_point(theta, pi)
    I = K.identity(pi.carrier)
    if isinstance(pi, FinGroupObj):
        t = K.point(pi.carrier, theta)
        sigma = K.compose(pi.mul, K.tensor_map(pi.mul, pi.antipode), K.tensor_map(t, I, t))
        return validate_group_mor(pi, pi, sigma)
    sigma = K.compose(K.tensor_map(theta, I, theta), K.tensor_map(I, I, pi.antipode),
                      K.tensor_map(pi.comul, I), pi.comul)
    return validate_group_mor(pi, pi, sigma)


@dataclass(frozen=True, eq=False)
class TwoCell:
    theta: object
    f1: GroupMor
    f2: GroupMor


def _point_as_map(theta, f: GroupMor):
    """The point as a morphism comparable to ``f.map``."""
    if isinstance(f.dst, FinGroupObj):
        return K.compose(K.point(f.dst.carrier, theta), K.terminal(f.src.carrier))
    return K.compose(f.src.unit, theta)


def two_cell_sides(theta, f1: GroupMor, f2: GroupMor):
    t = _point_as_map(theta, f1)
    if isinstance(f1.dst, FinGroupObj):
        return convolution(t, f1.map, f1.dst), convolution(f2.map, t, f1.dst)
    return convolution(t, f1.map, f1.dst, f1.src.algebra), convolution(f2.map, t, f1.dst, f1.src.algebra)


def check_two_cell(theta, f1: GroupMor, f2: GroupMor) -> Report:
    if f1.src is not f2.src or f1.dst is not f2.dst:
        return failure("2-cell relation", "morphisms are not parallel")
    try:
        theta = check_point(theta, f1.dst)
    except InvalidPoint as exc:
        return failure("2-cell relation", str(exc))
    lhs, rhs = two_cell_sides(theta, f1, f2)
    return check("2-cell relation theta*f1 = f2*theta", lhs, rhs)


def make_two_cell(theta, f1: GroupMor, f2: GroupMor) -> TwoCell:
    r = check_two_cell(theta, f1, f2)
    if not r.passed:
        raise AxiomFailure("not a 2-cell", [r])
    return TwoCell(check_point(theta, f1.dst), f1, f2)


def point_product(a, b, pi: GroupObj):
    """``a * b`` of points: the group product, or convolution into the base field."""
    if isinstance(pi, FinGroupObj):
        return pi.m(a, b)
    return convolution(a, b, pi)


def point_inverse(a, pi: GroupObj):
    if isinstance(pi, FinGroupObj):
        return pi.i(a)
    return K.compose(a, pi.antipode)


def compose_two_cells(c1: TwoCell, c2: TwoCell) -> TwoCell:
    """Vertical composite ``theta2 * theta1: f1 => f3``."""
    if not c1.f2.same_as(c2.f1):
        raise NotComposable("target of the first 2-cell is not the source of the second")
    return make_two_cell(point_product(c2.theta, c1.theta, c1.f1.dst), c1.f1, c2.f2)


def _apply_mor_to_point(f: GroupMor, theta):
    """Push a point of ``f.src`` forward along ``f``."""
    if isinstance(f.map, FinMap):
        return f.map(theta)
    return K.compose(theta, f.map)


def horizontal_compose(c: TwoCell, cp: TwoCell) -> TwoCell:
    """``c: f1 => f2`` between ``pi' -> pi`` and ``cp: f1' => f2'`` between ``pi'' -> pi'``."""
    if cp.f1.dst is not c.f1.src:
        raise NotComposable("2-cells are not horizontally composable")
    pi = c.f1.dst
    first = point_product(c.theta, _apply_mor_to_point(c.f1, cp.theta), pi)
    second = point_product(_apply_mor_to_point(c.f2, cp.theta), c.theta, pi)
    same = first == second if isinstance(pi, FinGroupObj) else K.equals(first, second)
    if not same:
        raise AxiomFailure("horizontal composition formulas disagree",
                           [failure("horizontal composite", f"{first} vs {second}")])
    return make_two_cell(first, compose_mor(c.f1, cp.f1), compose_mor(c.f2, cp.f2))
