"""Representation categories: actions of finite groups, comodules over Hopf algebras.

Also the free/forgetful and trivial/(co)invariant adjunctions, the projection
formula and the fusion operator, each built from the literal composites and
certified exactly.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence, Union

from . import kosmos as K
from .errors import AxiomFailure, CarrierTooLarge, GroupMismatch, ShapeMismatch
from .hopf import FinGroupObj, RatHopfObj
from .kosmos import KAPPA_FIN, KAPPA_RAT, CoeqResult, EqResult, FinMap, FinObj, RatMap, RatObj
from .lawcheck import Report, check, iso_report

HOM_ENUMERATION_LIMIT = 10**6


@dataclass(frozen=True, eq=False)
class GalRep:
    group: FinGroupObj
    carrier: FinObj
    action: FinMap
    name: str = ""

    def act(self, g: int, i: int) -> int:
        return self.action.table[g * self.carrier.size + i]

    def __repr__(self) -> str:
        return f"GalRep({self.name or self.carrier.size})"


@dataclass(frozen=True, eq=False)
class GroRep:
    hopf: RatHopfObj
    carrier: RatObj
    coaction: RatMap
    name: str = ""

    def __repr__(self) -> str:
        return f"GroRep({self.name or self.carrier.dim})"


Rep = Union[GalRep, GroRep]


@dataclass(frozen=True, eq=False)
class RepMor:
    src: Rep
    dst: Rep
    map: FinMap | RatMap
    name: str = ""


def group_of(X: Rep):
    return X.group if isinstance(X, GalRep) else X.hopf


def _same_group(X: Rep, Y: Rep):
    if group_of(X) is not group_of(Y):
        raise GroupMismatch("representations over different group objects")
    return group_of(X)


# ---------------------------------------------------------------------------
# structure morphisms


def pi_tensor(pi: FinGroupObj, x: FinObj, y: FinObj) -> FinMap:
    """``pi (x) x (x) y -> pi (x) x (x) pi (x) y``, ``(g, a, b) -> (g, a, g, b)``."""
    I = K.identity
    return K.compose(K.tensor_map(I(pi.carrier), K.symmetry(pi.carrier, x), I(y)),
                     K.tensor_map(pi.comul, I(x), I(y)))


def tensor_pi(pi: RatHopfObj, x: RatObj, y: RatObj) -> RatMap:
    """``x (x) pi (x) y (x) pi -> x (x) y (x) pi``: swap the middle, multiply the ends."""
    I = K.identity
    return K.compose(K.tensor_map(I(x), I(y), pi.mul),
                     K.tensor_map(I(x), K.symmetry(pi.carrier, y), I(pi.carrier)))


# ---------------------------------------------------------------------------
# validation


def gal_rep_reports(pi: FinGroupObj, x: FinObj, action: FinMap) -> list[Report]:
    Ix, Ip = K.identity(x), K.identity(pi.carrier)
    return [
        check("action associativity", K.compose(action, K.tensor_map(pi.mul, Ix)),
              K.compose(action, K.tensor_map(Ip, action))),
        check("action unit", K.compose(action, K.tensor_map(pi.unit_map, Ix)), Ix),
    ]


def gro_rep_reports(pi: RatHopfObj, x: RatObj, coaction: RatMap) -> list[Report]:
    Ix, Ip = K.identity(x), K.identity(pi.carrier)
    return [
        check("coaction coassociativity", K.compose(K.tensor_map(coaction, Ip), coaction),
              K.compose(K.tensor_map(Ix, pi.comul), coaction)),
        check("coaction counit", K.compose(K.tensor_map(Ix, pi.counit), coaction), Ix),
    ]


def validate_gal_rep(pi: FinGroupObj, size: int | FinObj, action, name: str = "") -> GalRep:
    """``action`` is a FinMap ``pi (x) x -> x`` or rows ``action[g][i]``."""
    x = size if isinstance(size, FinObj) else FinObj(size)
    dom = K.tensor_obj(pi.carrier, x)
    if isinstance(action, FinMap):
        action = FinMap(dom, x, action.table)
    else:
        if len(action) != pi.order or any(len(row) != x.size for row in action):
            raise ShapeMismatch("action table must have one row of length |x| per group element")
        action = FinMap(dom, x, tuple(v for row in action for v in row))
    bad = [r for r in gal_rep_reports(pi, x, action) if not r.passed]
    if bad:
        raise AxiomFailure("not a representation", bad)
    return GalRep(pi, x, action, name)


def validate_gro_rep(pi: RatHopfObj, dim: int | RatObj, coaction, name: str = "") -> GroRep:
    x = dim if isinstance(dim, RatObj) else RatObj(dim)
    cod = K.tensor_obj(x, pi.carrier)
    if isinstance(coaction, RatMap):
        if coaction.dom.dim != x.dim or coaction.cod.dim != cod.dim:
            raise ShapeMismatch("coaction has the wrong shape")
        coaction = RatMap(x, cod, coaction.dm)
    else:
        coaction = K.rat_map(x, cod, coaction)
    bad = [r for r in gro_rep_reports(pi, x, coaction) if not r.passed]
    if bad:
        raise AxiomFailure("not a comodule", bad)
    return GroRep(pi, x, coaction, name)


def rep_mor_report(X: Rep, Y: Rep, f) -> Report:
    if isinstance(X, GalRep):
        return check("equivariance", K.compose(f, X.action),
                     K.compose(Y.action, K.tensor_map(K.identity(X.group.carrier), f)))
    return check("coequivariance", K.compose(K.tensor_map(f, K.identity(X.hopf.carrier)), X.coaction),
                 K.compose(Y.coaction, f))


def validate_rep_mor(X: Rep, Y: Rep, f, name: str = "") -> RepMor:
    _same_group(X, Y)
    r = rep_mor_report(X, Y, f)
    if not r.passed:
        raise AxiomFailure("not a morphism of representations", [r])
    return RepMor(X, Y, f, name)


# ---------------------------------------------------------------------------
# monoidal structure


def rep_tensor(X: Rep, Y: Rep) -> Rep:
    pi = _same_group(X, Y)
    carrier = K.tensor_obj(X.carrier, Y.carrier)
    name = f"{X.name}*{Y.name}" if X.name and Y.name else ""
    if isinstance(X, GalRep):
        action = K.compose(K.tensor_map(X.action, Y.action), pi_tensor(pi, X.carrier, Y.carrier))
        return GalRep(pi, carrier, FinMap(K.tensor_obj(pi.carrier, carrier), carrier, action.table), name)
    coaction = K.compose(tensor_pi(pi, X.carrier, Y.carrier), K.tensor_map(X.coaction, Y.coaction))
    return GroRep(pi, carrier, RatMap(carrier, K.tensor_obj(carrier, pi.carrier), coaction.dm), name)


def rep_tensor_map(f: RepMor, g: RepMor) -> RepMor:
    return RepMor(rep_tensor(f.src, g.src), rep_tensor(f.dst, g.dst), K.tensor_map(f.map, g.map))


def trivial(pi, z: FinObj | RatObj | int, name: str = "") -> Rep:
    if isinstance(pi, FinGroupObj):
        z = z if isinstance(z, FinObj) else FinObj(z)
        return GalRep(pi, z, K.tensor_map(pi.counit, K.identity(z)), name or f"triv{z.size}")
    z = z if isinstance(z, RatObj) else RatObj(z)
    return GroRep(pi, z, K.tensor_map(K.identity(z), pi.unit), name or f"triv{z.dim}")


def rep_unit(pi) -> Rep:
    return trivial(pi, KAPPA_FIN if isinstance(pi, FinGroupObj) else KAPPA_RAT, "unit")


# ---------------------------------------------------------------------------
# fibre adjunctions


def free(pi: FinGroupObj, x: FinObj | int, name: str = "") -> GalRep:
    """``pi (x) x`` with ``pi`` multiplying the left factor."""
    x = x if isinstance(x, FinObj) else FinObj(x)
    carrier = K.tensor_obj(pi.carrier, x)
    return GalRep(pi, carrier, K.tensor_map(pi.mul, K.identity(x)), name or f"free{x.size}")


def free_unit(pi: FinGroupObj, x: FinObj) -> FinMap:
    """``x -> pi (x) x``, ``a -> (e, a)``."""
    return K.tensor_map(pi.unit_map, K.identity(x))


def free_counit(X: GalRep) -> RepMor:
    return RepMor(free(X.group, X.carrier), X, X.action)


def free_map(pi: FinGroupObj, f: FinMap) -> RepMor:
    return RepMor(free(pi, f.dom), free(pi, f.cod), K.tensor_map(K.identity(pi.carrier), f))


def cofree(pi: RatHopfObj, v: RatObj | int, name: str = "") -> GroRep:
    """``v (x) pi`` with coaction ``id (x) comul``."""
    v = v if isinstance(v, RatObj) else RatObj(v)
    carrier = K.tensor_obj(v, pi.carrier)
    return GroRep(pi, carrier, K.tensor_map(K.identity(v), pi.comul), name or f"cofree{v.dim}")


def cofree_unit(X: GroRep) -> RepMor:
    return RepMor(X, cofree(X.hopf, X.carrier), X.coaction)


def cofree_counit(pi: RatHopfObj, v: RatObj) -> RatMap:
    """``v (x) pi -> v``, ``a (x) f -> e(f) a``."""
    return K.tensor_map(K.identity(v), pi.counit)


def cofree_map(pi: RatHopfObj, f: RatMap) -> RepMor:
    return RepMor(cofree(pi, f.dom), cofree(pi, f.cod), K.tensor_map(f, K.identity(pi.carrier)))


def fibre_triangle_reports(X: Rep) -> list[Report]:
    """Both triangle identities of the free/forgetful (or forgetful/cofree) adjunction."""
    pi = group_of(X)
    x = X.carrier
    if isinstance(X, GalRep):
        return [
            check("counit o free(unit) = id", K.compose(free_counit(free(pi, x)).map, free_map(pi, free_unit(pi, x)).map),
                  K.identity(free(pi, x).carrier)),
            check("forget(counit) o unit = id", K.compose(X.action, free_unit(pi, x)), K.identity(x)),
        ]
    return [
        check("cofree(counit) o unit = id", K.compose(cofree_map(pi, cofree_counit(pi, x)).map, cofree_unit(cofree(pi, x)).map),
              K.identity(cofree(pi, x).carrier)),
        check("counit o forget(unit) = id", K.compose(cofree_counit(pi, x), X.coaction), K.identity(x)),
    ]


# ---------------------------------------------------------------------------
# coinvariants and invariants


def coinvariants(X: GalRep) -> CoeqResult:
    pi, x = X.group, X.carrier
    Ix = K.identity(x)
    return K.reflexive_coequalizer(X.action, K.tensor_map(pi.counit, Ix), K.tensor_map(pi.unit_map, Ix))


def invariants(X: GroRep) -> EqResult:
    pi, x = X.hopf, X.carrier
    Ix = K.identity(x)
    return K.coreflexive_equalizer(X.coaction, K.tensor_map(Ix, pi.unit), K.tensor_map(Ix, pi.counit))


def trivial_triangle_reports(X: Rep) -> list[Report]:
    """Triangle identities for coinvariants -| trivial (finite sets) or trivial -| invariants."""
    pi = group_of(X)
    if isinstance(X, GalRep):
        cq = coinvariants(X)
        z = cq.obj
        tz = trivial(pi, z)
        unit_X = cq.proj
        cq_tz = coinvariants(tz)
        counit_z = K.coeq_factor(cq_tz, K.identity(z))
        coinv_of_unit = K.coeq_factor(cq, K.compose(coinvariants(trivial(pi, z)).proj, unit_X))
        return [
            check("unit is equivariant", K.compose(unit_X, X.action), K.compose(tz.action, K.tensor_map(K.identity(pi.carrier), unit_X))),
            check("counit o coinv(unit) = id", K.compose(counit_z, coinv_of_unit), K.identity(z)),
            check("triv(counit) o unit = id", K.compose(counit_z, cq_tz.proj), K.identity(z)),
        ]
    eq = invariants(X)
    z = eq.obj
    tz = trivial(pi, z)
    counit_X = eq.incl
    eq_tz = invariants(tz)
    unit_z = K.eq_factor(eq_tz, K.identity(z))
    inv_of_counit = K.eq_factor(eq, K.compose(counit_X, invariants(tz).incl))
    return [
        check("counit is coequivariant", K.compose(K.tensor_map(counit_X, K.identity(pi.carrier)), tz.coaction),
              K.compose(X.coaction, counit_X)),
        check("inv(counit) o unit = id", K.compose(inv_of_counit, unit_z), K.identity(z)),
        check("counit o triv(unit) = id", K.compose(eq_tz.incl, unit_z), K.identity(z)),
    ]


# ---------------------------------------------------------------------------
# morphisms between representations


def hom_rep(X: Rep, Y: Rep) -> list[RepMor]:
    """Galois side: every equivariant function.  Linear side: a basis of intertwiners."""
    _same_group(X, Y)
    if isinstance(X, GalRep):
        m, n, order = X.carrier.size, Y.carrier.size, X.group.order
        if n**m > HOM_ENUMERATION_LIMIT:
            raise CarrierTooLarge(f"{n}^{m} candidate functions exceed {HOM_ENUMERATION_LIMIT}")
        out = []
        for table in itertools.product(range(n), repeat=m):
            if all(table[X.act(g, i)] == Y.act(g, table[i]) for g in range(order) for i in range(m)):
                out.append(RepMor(X, Y, FinMap(X.carrier, Y.carrier, table)))
        return out
    return _intertwiner_basis(X, Y)


def _intertwiner_basis(X: GroRep, Y: GroRep) -> list[RepMor]:
    mx, my, n = X.carrier.dim, Y.carrier.dim, X.hopf.dim
    rho_x = {(i, j): v for i, j, v in X.coaction.nonzero()}
    rho_y = {(i, j): v for i, j, v in Y.coaction.nonzero()}
    variables = my * mx
    rows: dict[int, dict[int, object]] = {}
    # constraint row (a'*n + k, b): sum_a rho_y[a'n+k, a] F[a, b] - sum_c F[a', c] rho_x[c n + k, b]
    for (r, a), v in rho_y.items():
        for b in range(mx):
            row = rows.setdefault(r * mx + b, {})
            key = a * mx + b
            row[key] = row.get(key, 0) + v
    for (r, b), v in rho_x.items():
        c, k = divmod(r, n)
        for ap in range(my):
            row = rows.setdefault((ap * n + k) * mx + b, {})
            key = ap * mx + c
            row[key] = row.get(key, 0) - v
    constraint = K.rat_map_dod(variables, my * n * mx, rows)
    basis, _ = K.kernel(constraint)
    out = []
    for j in range(basis.dom.dim):
        col = basis.column(j)
        f = K.rat_map(X.carrier, Y.carrier, [[col[a * mx + b] for b in range(mx)] for a in range(my)])
        out.append(RepMor(X, Y, f))
    return out


# ---------------------------------------------------------------------------
# projection formula and fusion operator


def projection_formula(z, X: Rep, with_antipode: bool = True):
    """The projection-formula morphism and its displayed inverse.

    Galois side: ``pi (x) z (x) x`` with ``(g, c, a) -> (g, c, g a)``.
    Linear side: ``x (x) z (x) pi`` with ``a (x) c (x) f -> a_0 (x) c (x) a_1 f``.
    ``with_antipode=False`` drops the antipode from the inverse (negative control).
    """
    pi = group_of(X)
    x = X.carrier
    Ip, Iz, Ix = K.identity(pi.carrier), K.identity(z), K.identity(x)
    if isinstance(X, GalRep):
        pt = pi_tensor(pi, z, x)
        phi = K.compose(K.tensor_map(Ip, Iz, X.action), pt)
        s = pi.antipode if with_antipode else Ip
        inv = K.compose(K.tensor_map(Ip, Iz, X.action), K.tensor_map(Ip, Iz, s, Ix), pt)
        return phi, inv
    tp = tensor_pi(pi, x, z)
    phi = K.compose(tp, K.tensor_map(X.coaction, Iz, Ip))
    s = pi.antipode if with_antipode else Ip
    twisted = K.compose(K.tensor_map(Ix, s), X.coaction)
    inv = K.compose(tp, K.tensor_map(twisted, Iz, Ip))
    return phi, inv


def projection_formula_check(z, X: Rep, with_antipode: bool = True) -> tuple[list[Report], object]:
    pi = group_of(X)
    phi, inv = projection_formula(z, X, with_antipode)
    label = "" if with_antipode else " (no antipode)"
    I = K.identity(phi.dom)
    if isinstance(X, GalRep):
        src = rep_tensor(free(pi, z), X)
        dst = free(pi, K.tensor_obj(z, X.carrier))
        equivariance = rep_mor_report(dst, src, phi)
    else:
        src = rep_tensor(X, cofree(pi, z))
        dst = cofree(pi, K.tensor_obj(X.carrier, z))
        equivariance = rep_mor_report(src, dst, phi)
    iso, certified = iso_report("projection formula is invertible", phi)
    reports = [
        Report("projection formula is a morphism of representations", equivariance.passed, equivariance.witness),
        iso,
        check("displayed inverse o phi = id" + label, K.compose(inv, phi), I),
        check("phi o displayed inverse = id" + label, K.compose(phi, inv), I),
    ]
    return reports, certified


def fusion(pi, x, y, with_antipode: bool = True):
    """Fusion operator and its displayed inverse.

    Galois side on ``pi (x) x (x) pi (x) y``: ``(g, a, h, b) -> (g, a, g h, b)``.
    Linear side on ``x (x) pi (x) y (x) pi``: ``a (x) f (x) b (x) h -> a (x) f h_1 (x) b (x) h_2``.
    """
    Ip = K.identity(pi.carrier)
    Ix, Iy = K.identity(x), K.identity(y)
    s = pi.antipode if with_antipode else Ip
    if isinstance(pi, FinGroupObj):
        pt = pi_tensor(pi, x, K.tensor_obj(pi.carrier, y))
        chi = K.compose(K.tensor_map(Ip, Ix, pi.mul, Iy), pt)
        inv = K.compose(K.tensor_map(Ip, Ix, pi.mul, Iy), K.tensor_map(Ip, Ix, s, Ip, Iy), pt)
        return chi, inv
    spread = K.compose(K.tensor_map(Ix, Ip, K.symmetry(y, pi.carrier), Ip), K.tensor_map(Ix, Ip, Iy, pi.comul))
    chi = K.compose(K.tensor_map(Ix, pi.mul, Iy, Ip), spread)
    inv = K.compose(K.tensor_map(Ix, pi.mul, Iy, Ip), K.tensor_map(Ix, Ip, s, Iy, Ip), spread)
    return chi, inv


def fusion_check(pi, x, y, with_antipode: bool = True) -> tuple[list[Report], object]:
    chi, inv = fusion(pi, x, y, with_antipode)
    label = "" if with_antipode else " (no antipode)"
    I = K.identity(chi.dom)
    iso, certified = iso_report("fusion operator is invertible", chi)
    return [
        iso,
        check("displayed inverse o chi = id" + label, K.compose(inv, chi), I),
        check("chi o displayed inverse = id" + label, K.compose(chi, inv), I),
    ], certified


# ---------------------------------------------------------------------------
# probes


@dataclass(frozen=True, eq=False)
class ProbeSet:
    """A finite diagram of representations standing in for the whole category."""

    reps: tuple
    morphisms: tuple

    def pairs(self):
        return [(X, Y) for X in self.reps for Y in self.reps if K.size(X.carrier) * K.size(Y.carrier) <= 36]


def regular(pi) -> Rep:
    if isinstance(pi, FinGroupObj):
        return free(pi, KAPPA_FIN, "regular")
    return cofree(pi, KAPPA_RAT, "regular")


def cosets(pi: FinGroupObj) -> tuple[GalRep, FinMap]:
    """Left cosets of the subgroup generated by the first non-identity element."""
    reg = regular(pi)
    g = next((a for a in range(pi.order) if a != pi.unit), pi.unit)
    sub, a = [pi.unit], g
    while a != pi.unit:
        sub.append(a)
        a = pi.m(a, g)
    h = FinObj(len(sub))
    right = K.fin_map(K.tensor_obj(pi.carrier, h), pi.carrier, lambda k: pi.m(k // h.size, sub[k % h.size]))
    first = K.tensor_map(K.identity(pi.carrier), K.terminal(h))
    section = K.fin_map(pi.carrier, K.tensor_obj(pi.carrier, h), lambda k: k * h.size)
    q = K.reflexive_coequalizer(right, first, section)
    action = K.compose(q.proj, pi.mul, K.tensor_map(K.identity(reg.carrier), _section(q.proj)))
    rep = validate_gal_rep(pi, q.obj, action, "cosets")
    return rep, q.proj


def _section(q: FinMap) -> FinMap:
    seen = {}
    for a, c in enumerate(q.table):
        seen.setdefault(c, a)
    return FinMap(q.cod, q.dom, tuple(seen[c] for c in range(q.cod.size)))


def default_probes(pi, limit: int = 5) -> ProbeSet:
    """unit, a trivial pair, the regular representation, one quotient/sub, one tensor square."""
    reg = regular(pi)
    unit = rep_unit(pi)
    if isinstance(pi, FinGroupObj):
        triv = trivial(pi, 2)
        quot, q = cosets(pi)
        square = rep_tensor(reg, reg)
        morphisms = [
            RepMor(triv, unit, K.terminal(triv.carrier), "collapse"),
            RepMor(reg, quot, q, "coset projection"),
            RepMor(square, reg, K.tensor_map(K.identity(pi.carrier), pi.counit), "first projection"),
            RepMor(reg, square, pi.comul, "diagonal"),
            RepMor(reg, reg, K.fin_map(pi.carrier, pi.carrier, lambda a: pi.m(a, pi.order - 1)), "right translation"),
            RepMor(unit, triv, K.point(triv.carrier, 1), "point"),
        ]
        reps = [unit, triv, reg, quot, square]
    else:
        triv = trivial(pi, 2)
        inv = invariants(reg)
        line = GroRep(pi, inv.obj, _restrict_coaction(reg, inv), "invariant line")
        square = rep_tensor(reg, reg)
        morphisms = [
            RepMor(triv, unit, K.rat_map(2, 1, [[1, 1]]), "sum"),
            RepMor(line, reg, inv.incl, "inclusion"),
            RepMor(square, reg, pi.mul, "multiplication"),
            RepMor(unit, reg, pi.unit, "unit"),
            RepMor(unit, triv, K.rat_map(1, 2, [[1], [0]]), "first vector"),
        ]
        reps = [unit, triv, reg, line, square]
    reps = reps[:limit]
    kept = tuple(m for m in morphisms if any(m.src is r for r in reps) and any(m.dst is r for r in reps))
    for m in kept:
        validate_rep_mor(m.src, m.dst, m.map, m.name)
    return ProbeSet(tuple(reps), kept)


def _restrict_coaction(X: GroRep, sub: EqResult) -> RatMap:
    """Coaction on a subspace that is a subcomodule, by factoring through ``incl (x) id``."""
    incl_pi = K.tensor_map(sub.incl, K.identity(X.hopf.carrier))
    return K.factor_through_injection(incl_pi, K.compose(X.coaction, sub.incl))
