"""Recover the group object from the fibre adjunction, and probe its Aut presheaf.

Every structure map is evaluated as the literal composite of adjunction data
(units, counits, the comonoidal/lax structure of the induced endofunctor); the
fact that they collapse to the original group under strict reindexing is what
the checks certify.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import kosmos as K
from . import rep as P
from .errors import ReconstructionMismatch, RoundTripFailure
from .hopf import (CommAlgObj, FinGroupObj, GroupMor, RatHopfObj, convolution, hom_group, hom_index,
                   is_algebra_morphism, validate_group, validate_group_mor, validate_hopf)
from .kosmos import KAPPA_FIN, KAPPA_RAT, FinMap, FinObj, RatMap, RatObj
from .lawcheck import Report, all_passed, certify_iso, check, failure, iso_report


# ---------------------------------------------------------------------------
# fibre data and probe transformations


@dataclass(frozen=True, eq=False)
class FiberData:
    group: object
    probes: P.ProbeSet
    units: dict
    counits: dict
    reports: tuple


def fiber_data(pi, probes: P.ProbeSet) -> FiberData:
    units, counits, reports = {}, {}, []
    for X in probes.reps:
        if isinstance(X, P.GalRep):
            units[X.name] = P.free_unit(pi, X.carrier)
            counits[X.name] = P.free_counit(X).map
        else:
            units[X.name] = P.cofree_unit(X).map
            counits[X.name] = P.cofree_counit(pi, X.carrier)
        reports += [Report(f"{X.name}: {r.name}", r.passed, r.witness) for r in P.fibre_triangle_reports(X)]
    return FiberData(pi, probes, units, counits, tuple(reports))


@dataclass(frozen=True, eq=False)
class NatProbe:
    """Components of a transformation on a probe diagram.

    ``galois``: component at ``X`` is ``c (x) x -> x`` in the coKleisli category of ``c (x) -``.
    ``grothendieck``: component at ``X`` is ``x -> x (x) b`` in the Kleisli category of ``- (x) b``.
    """

    components: dict
    flavor: str
    reports: tuple = field(default_factory=tuple)


# ---------------------------------------------------------------------------
# the reflection and coreflection isomorphisms


def reflection_hatar(pi: FinGroupObj, x: FinObj) -> FinMap:
    """``pi (x) x -> (pi (x) kappa) (x) x`` for the comonad ``forget o free``.

    Composite: unit reindexing, then the comonoidal structure at ``(kappa, x)``,
    then forgetting the group on the second factor.
    """
    Ip, Ix = K.identity(pi.carrier), K.identity(x)
    reindex = K.identity(K.tensor_obj(pi.carrier, KAPPA_FIN, x))
    comonoidal = P.pi_tensor(pi, KAPPA_FIN, x)
    forget = K.tensor_map(Ip, pi.counit, Ix)
    return K.compose(forget, comonoidal, reindex)


def coreflection_tahar(pi: RatHopfObj, x: RatObj) -> RatMap:
    """``x (x) (kappa (x) pi) -> x (x) pi`` for the monad ``forget o cofree``.

    Composite: the monad unit on ``x``, the lax structure at ``(x, kappa)``, then unit reindexing.
    """
    Ix, Ip = K.identity(x), K.identity(pi.carrier)
    monad_unit = K.tensor_map(Ix, pi.unit, Ip)
    lax = P.tensor_pi(pi, x, KAPPA_RAT)
    reindex = K.identity(K.tensor_obj(x, KAPPA_RAT, pi.carrier))
    return K.compose(reindex, lax, monad_unit)


def hatar_reports(pi, maps) -> list[Report]:
    """Invertibility and naturality of hatar/tahar over the given morphisms of the base."""
    comp = reflection_hatar if isinstance(pi, FinGroupObj) else coreflection_tahar
    reports = []
    objs = {}
    for f in maps:
        objs.setdefault(K.size(f.dom), f.dom)
        objs.setdefault(K.size(f.cod), f.cod)
    for n, x in sorted(objs.items()):
        reports.append(iso_report(f"component at size {n} is invertible", comp(pi, x))[0])
    Ip = K.identity(pi.carrier)
    for k, f in enumerate(maps):
        if isinstance(pi, FinGroupObj):
            lhs = K.compose(comp(pi, f.cod), K.tensor_map(Ip, f))
            rhs = K.compose(K.tensor_map(Ip, f), comp(pi, f.dom))
        else:
            lhs = K.compose(comp(pi, f.cod), K.tensor_map(f, Ip))
            rhs = K.compose(K.tensor_map(f, Ip), comp(pi, f.dom))
        reports.append(check(f"naturality along map {k}", lhs, rhs))
    return reports


# ---------------------------------------------------------------------------
# universal elements and their (co)Kleisli inverses


def universal_element(X: P.Rep):
    """Galois: ``action o hatar^-1``.  Linear side: ``tahar^-1 o coaction``."""
    if isinstance(X, P.GalRep):
        return K.compose(X.action, certify_iso(reflection_hatar(X.group, X.carrier)))
    return K.compose(certify_iso(coreflection_tahar(X.hopf, X.carrier)), X.coaction)


def cokleisli_inverse(pi: FinGroupObj, xi: FinMap) -> FinMap:
    """Inverse of ``xi: pi (x) x -> x`` in the coKleisli category of ``pi (x) -``.

    Lift to ``(id (x) xi)(diag (x) id)``, invert that bijection, then forget the group.
    """
    x = xi.cod
    lift = K.compose(K.tensor_map(K.identity(pi.carrier), xi), K.tensor_map(pi.comul, K.identity(x)))
    return K.compose(K.tensor_map(pi.counit, K.identity(x)), certify_iso(lift))


def kleisli_inverse(pi: RatHopfObj, xi: RatMap) -> RatMap:
    """Inverse of ``xi: x -> x (x) pi`` in the Kleisli category of ``- (x) pi``."""
    x = xi.dom
    lift = K.compose(K.tensor_map(K.identity(x), pi.mul), K.tensor_map(xi, K.identity(pi.carrier)))
    return K.compose(certify_iso(lift), K.tensor_map(K.identity(x), pi.unit))


# ---------------------------------------------------------------------------
# reconstruction


@dataclass(frozen=True, eq=False)
class Reconstruction:
    original: object
    rec: object
    witness: GroupMor
    witness_inverse: object
    reports: tuple

    @property
    def passed(self) -> bool:
        return all_passed(self.reports)


def _witness_reports(pi, rec, w, w_inv) -> list[Report]:
    I = K.identity(pi.carrier)
    return [
        check("witness inverse o witness = id", K.compose(w_inv, w), I),
        check("witness o witness inverse = id", K.compose(w, w_inv), K.identity(rec.carrier)),
    ]


def reconstruct_galois(pi: FinGroupObj) -> Reconstruction:
    regular = P.regular(pi)
    carrier = regular.carrier
    # product: counit at the regular representation after undoing hatar at its carrier
    mul = K.compose(P.free_counit(regular).map, certify_iso(reflection_hatar(pi, carrier)))
    unit = P.free_unit(pi, KAPPA_FIN)
    # antipode: coKleisli inverse of the universal element at the regular representation, at the unit
    xi_inv = cokleisli_inverse(pi, universal_element(regular))
    antipode = K.compose(xi_inv, K.tensor_map(K.identity(pi.carrier), unit))
    n = carrier.size
    table = [[mul.table[a * n + b] for b in range(n)] for a in range(n)]
    rec = validate_group(table, unit.table[0], list(antipode.table), list(pi.carrier.labels or []) or None,
                         name=f"rec({pi.name})")
    # canonical map pi -> pi (x) kappa
    w_map = K.identity(carrier)
    witness = validate_group_mor(pi, rec, w_map)
    w_inv = certify_iso(w_map)
    reports = _witness_reports(pi, rec, w_map, w_inv)
    reports.append(check("reconstructed antipode is the transported antipode",
                         K.compose(rec.antipode, w_map), K.compose(w_map, pi.antipode)))
    reports.append(check("reconstructed product is the transported product",
                         K.compose(rec.mul, K.tensor_map(w_map, w_map)), K.compose(w_map, pi.mul)))
    if not all_passed(reports):
        raise ReconstructionMismatch("reconstructed group differs from the original", witness=reports)
    return Reconstruction(pi, rec, witness, w_inv, tuple(reports))


def reconstruct_grothendieck(pi: RatHopfObj) -> Reconstruction:
    regular = P.regular(pi)
    kappa = P.rep_unit(pi)
    carrier = regular.carrier
    comul = K.compose(certify_iso(coreflection_tahar(pi, carrier)), P.cofree_unit(regular).map)
    counit = P.cofree_counit(pi, KAPPA_RAT)
    # lax monoidal structure of cofree at (kappa, kappa), and its unit
    mul = P.tensor_pi(pi, KAPPA_RAT, KAPPA_RAT)
    unit = P.cofree_unit(kappa).map
    # antipode: Kleisli inverse of the universal element at the regular comodule, then the counit
    xi_inv = kleisli_inverse(pi, universal_element(regular))
    antipode = K.compose(K.tensor_map(counit, K.identity(pi.carrier)), xi_inv)
    n = carrier.dim
    rec = validate_hopf(n, mul.matrix, unit.matrix, comul.matrix, counit.matrix, antipode.matrix,
                        f"rec({pi.name})", list(pi.carrier.labels) if pi.carrier.labels else None)
    w_map = K.identity(rec.carrier)
    witness = validate_group_mor(pi, rec, w_map)
    w_inv = certify_iso(w_map)
    reports = _witness_reports(pi, rec, w_map, w_inv)
    reports.append(check("reconstructed antipode is the transported antipode",
                         K.compose(w_map, rec.antipode), K.compose(pi.antipode, w_map)))
    reports.append(check("reconstructed coproduct is the transported coproduct",
                         K.compose(K.tensor_map(w_map, w_map), rec.comul), K.compose(pi.comul, w_map)))
    if not all_passed(reports):
        raise ReconstructionMismatch("reconstructed Hopf algebra differs from the original", witness=reports)
    return Reconstruction(pi, rec, witness, w_inv, tuple(reports))


def reconstruct(pi) -> Reconstruction:
    return reconstruct_galois(pi) if isinstance(pi, FinGroupObj) else reconstruct_grothendieck(pi)


# ---------------------------------------------------------------------------
# comparison functor


def comparison_functor(recon: Reconstruction, probes: P.ProbeSet) -> tuple[dict, list[Report]]:
    """Send each probe to its carrier with the universal element as (co)action of the rebuilt group."""
    pi, rec = recon.original, recon.rec
    w = recon.witness.map
    out, reports = {}, []
    for X in probes.reps:
        xi = universal_element(X)
        if isinstance(X, P.GalRep):
            # act through the inverse witness so the structure lives over the rebuilt group
            action = K.compose(xi, K.tensor_map(recon.witness_inverse, K.identity(X.carrier)))
            rep_reports = P.gal_rep_reports(rec, X.carrier, action)
            Y = P.GalRep(rec, X.carrier, action, X.name)
            transported = K.compose(action, K.tensor_map(w, K.identity(X.carrier)))
            reports.append(check(f"{X.name}: transport equals the original action", transported, X.action))
        else:
            coaction = K.compose(K.tensor_map(K.identity(X.carrier), w), xi)
            rep_reports = P.gro_rep_reports(rec, X.carrier, coaction)
            Y = P.GroRep(rec, X.carrier, coaction, X.name)
            transported = K.compose(K.tensor_map(K.identity(X.carrier), recon.witness_inverse), coaction)
            reports.append(check(f"{X.name}: transport equals the original coaction", transported, X.coaction))
        reports += [Report(f"{X.name}: {r.name}", r.passed, r.witness) for r in rep_reports]
        out[X.name] = Y
    for X, Z in probes.pairs():
        image = P.rep_tensor(out[X.name], out[Z.name])
        direct = universal_element(P.rep_tensor(X, Z))
        if isinstance(X, P.GalRep):
            direct = K.compose(direct, K.tensor_map(recon.witness_inverse, K.identity(image.carrier)))
            reports.append(check(f"tensor compatibility at ({X.name}, {Z.name})", direct, image.action))
        else:
            direct = K.compose(K.tensor_map(K.identity(image.carrier), w), direct)
            reports.append(check(f"tensor compatibility at ({X.name}, {Z.name})", direct, image.coaction))
    for m in probes.morphisms:
        r = P.rep_mor_report(out[m.src.name], out[m.dst.name], m.map)
        reports.append(Report(f"functor on {m.name}", r.passed, r.witness))
    return out, reports


# ---------------------------------------------------------------------------
# Aut presheaf


def _galois_components(pi: FinGroupObj, g: FinMap, probes: P.ProbeSet) -> dict:
    return {X.name: K.compose(X.action, K.tensor_map(g, K.identity(X.carrier))) for X in probes.reps}


def _galois_nat_reports(pi: FinGroupObj, g: FinMap, comps: dict, probes: P.ProbeSet) -> list[Report]:
    c = g.dom
    reps = {X.name: X for X in probes.reps}
    Ic = K.identity(c)
    out = []
    for m in probes.morphisms:
        out.append(check(f"naturality along {m.name}", K.compose(m.map, comps[m.src.name]),
                         K.compose(comps[m.dst.name], K.tensor_map(Ic, m.map))))
    for X, Y in probes.pairs():
        XY = P.rep_tensor(X, Y)
        direct = K.compose(XY.action, K.tensor_map(g, K.identity(XY.carrier)))
        spread = K.compose(K.tensor_map(Ic, K.symmetry(c, X.carrier), K.identity(Y.carrier)),
                           K.tensor_map(K.diagonal(c), K.identity(X.carrier), K.identity(Y.carrier)))
        out.append(check(f"tensor condition at ({X.name}, {Y.name})", direct,
                         K.compose(K.tensor_map(comps[X.name], comps[Y.name]), spread)))
    unit = reps.get("unit")
    if unit is not None:
        out.append(check("unit condition", comps["unit"], K.tensor_map(K.terminal(c), K.identity(KAPPA_FIN))))
    return out


def _recover_point(pi, comps: dict, probes: P.ProbeSet, c) -> FinMap:
    """``theta_regular o (id (x) unit)``: read the element off the regular component."""
    return K.compose(comps["regular"], K.tensor_map(K.identity(c), P.free_unit(pi, KAPPA_FIN)))


def aut_presheaf_check(pi, c, morphisms=None, probes: P.ProbeSet | None = None) -> Report:
    """Galois: every function ``c -> pi`` gives a monoidal transformation that round-trips.

    Linear side: ``c`` is a commutative algebra ``b`` and ``morphisms`` the algebra maps
    ``pi -> b`` to test.
    """
    probes = probes or P.default_probes(pi)
    if isinstance(pi, FinGroupObj):
        return _aut_galois(pi, c, probes)
    return _aut_grothendieck(pi, c, morphisms or [], probes)


def _aut_galois(pi: FinGroupObj, c: FinObj, probes: P.ProbeSet) -> Report:
    name = f"Aut presheaf at a {c.size}-set"
    funcs = [FinMap(c, pi.carrier, t) for t in itertools.product(range(pi.order), repeat=c.size)]
    families, recovered, all_comps = [], [], []
    for g in funcs:
        comps = _galois_components(pi, g, probes)
        bad = [r for r in _galois_nat_reports(pi, g, comps, probes) if not r.passed]
        if bad:
            return Report(name, False, bad[0].witness, note=bad[0].name)
        back = _recover_point(pi, comps, probes, c)
        if not K.equals(back, g):
            raise RoundTripFailure(f"function {g.table} does not round-trip", witness=(g.table, back.table))
        families.append(tuple(comps[X.name].table for X in probes.reps))
        recovered.append(back)
        all_comps.append(comps)
    if len(funcs) != pi.order ** c.size:
        return failure(name, f"{len(funcs)} transformations, expected {pi.order ** c.size}")
    if len(set(families)) != len(families):
        return failure(name, "two functions give the same transformation")
    H = hom_group(c, pi)
    for g, h in itertools.product(range(len(funcs)), repeat=2):
        for X in probes.reps:
            tg, th = all_comps[g][X.name], all_comps[h][X.name]
            lifted = K.compose(K.tensor_map(K.identity(c), th), K.tensor_map(K.diagonal(c), K.identity(X.carrier)))
            composite = K.compose(tg, lifted)
            if not K.equals(composite, all_comps[H.m(g, h)][X.name]):
                return failure(name, f"composition of {g} and {h} at {X.name} disagrees with the pointwise product")
        if hom_index(recovered[g], pi) != g:
            return failure(name, f"function {g} is out of enumeration order")
    return Report(name, True, data={"transformations": len(funcs)})


def _gro_components(g: RatMap, probes: P.ProbeSet) -> dict:
    return {X.name: K.compose(K.tensor_map(K.identity(X.carrier), g), X.coaction) for X in probes.reps}


def _aut_grothendieck(pi: RatHopfObj, b: CommAlgObj, morphisms, probes: P.ProbeSet) -> Report:
    name = f"Aut presheaf at {b.name or 'an algebra'}"
    Ib = K.identity(b.carrier)
    comps_all = []
    for k, g in enumerate(morphisms):
        if not all_passed(is_algebra_morphism(g, pi.algebra, b)):
            return failure(name, f"input {k} is not an algebra morphism")
        comps = _gro_components(g, probes)
        for m in probes.morphisms:
            r = check(f"naturality along {m.name}", K.compose(K.tensor_map(m.map, Ib), comps[m.src.name]),
                      K.compose(comps[m.dst.name], m.map))
            if not r.passed:
                return Report(name, False, r.witness, note=r.name)
        for X, Y in probes.pairs():
            XY = P.rep_tensor(X, Y)
            direct = K.compose(K.tensor_map(K.identity(XY.carrier), g), XY.coaction)
            combine = K.compose(K.tensor_map(K.identity(X.carrier), K.identity(Y.carrier), b.mul),
                                K.tensor_map(K.identity(X.carrier), K.symmetry(b.carrier, Y.carrier), Ib))
            r = check(f"tensor condition at ({X.name}, {Y.name})", direct,
                      K.compose(combine, K.tensor_map(comps[X.name], comps[Y.name])))
            if not r.passed:
                return Report(name, False, r.witness, note=r.name)
        r = check("unit condition", comps["unit"], b.unit)
        if not r.passed:
            return Report(name, False, r.witness, note=r.name)
        back = K.compose(K.tensor_map(pi.counit, Ib), comps["regular"])
        if not K.equals(back, g):
            raise RoundTripFailure(f"algebra morphism {k} does not round-trip", witness=k)
        comps_all.append(comps)
    for i, j in itertools.combinations(range(len(morphisms)), 2):
        if all(K.equals(comps_all[i][X.name], comps_all[j][X.name]) for X in probes.reps):
            return failure(name, f"inputs {i} and {j} give the same transformation")
    for i, j in itertools.product(range(len(morphisms)), repeat=2):
        prod = convolution(morphisms[i], morphisms[j], pi, b)
        target = _gro_components(prod, probes)
        for X in probes.reps:
            lifted = K.compose(K.tensor_map(K.identity(X.carrier), b.mul),
                               K.tensor_map(comps_all[i][X.name], Ib), comps_all[j][X.name])
            if not K.equals(lifted, target[X.name]):
                return failure(name, f"composition of {i} and {j} at {X.name} disagrees with convolution")
    return Report(name, True, data={"transformations": len(morphisms)})
