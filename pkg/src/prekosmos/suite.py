"""The acceptance suite: ten criteria, each a summary Report with its detail reports."""
from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import kosmos as K
from . import reconstruction as C
from . import rep as P
from . import roster as R
from . import torsors as T
from .errors import AxiomFailure, PrekosmosError
from .hopf import (FinGroupObj, RatHopfObj, identity_mor, inner_auto, make_two_cell, validate_group,
                   validate_group_mor, validate_hopf)
from .kosmos import FinObj, RatObj
from .lawcheck import Report, all_passed, failure, outcome

VERSION = "0.1.0"


@dataclass
class CriterionResult:
    number: int
    title: str
    summary: Report
    details: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.summary.passed,
                "summary": self.summary.to_dict(), "details": [r.to_dict() for r in self.details]}


def _summarize(title: str, details: list[Report], data: dict | None = None) -> Report:
    bad = [r for r in details if not r.passed]
    if bad:
        return Report(title, False, bad[0].witness, note=f"{len(bad)} failing: {bad[0].name}")
    return Report(title, True, data=data or {"checks": len(details)})


def _tag(prefix: str, reports) -> list[Report]:
    return [Report(f"{prefix}: {r.name}", r.passed, r.witness, r.anchor, r.note, r.data) for r in reports]


def _guard(prefix: str, fn, *args):
    """Run a check; an unexpected library error becomes a failed report instead of aborting the suite."""
    try:
        return fn(*args)
    except PrekosmosError as exc:
        return [failure(prefix, f"{type(exc).__name__}: {exc}")]


# ---------------------------------------------------------------------------
# seeded broken inputs


def broken_group_table() -> list[list[int]]:
    """Z/3 with one product entry changed."""
    table = [[(a + b) % 3 for b in range(3)] for a in range(3)]
    table[1][1] = 0
    return table


def first_assoc_failure(table) -> tuple[int, int, int] | None:
    n = len(table)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    return a, b, c
    return None


def broken_hopf_data() -> dict:
    """Functions on Z/2 with ``e0 * e0 = e0 + e1``."""
    return {"dim": 2, "mul": [[1, 0, 0, 0], [1, 0, 0, 1]], "unit": [[1], [1]],
            "comul": [[1, 0], [0, 1], [0, 1], [1, 0]],
            "counit": [[1, 0]], "antipode": [[1, 0], [0, 1]]}


def first_bad_assoc_column(mul) -> int | None:
    """Smallest index ``i*n*n + j*n + k`` of basis triples where the product is not associative."""
    n = len(mul)
    prod = lambda u, v: [sum(Fraction(mul[r][a * n + b]) * u[a] * v[b] for a in range(n) for b in range(n))
                         for r in range(n)]
    basis = [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if prod(prod(basis[i], basis[j]), basis[k]) != prod(basis[i], prod(basis[j], basis[k])):
                    return (i * n + j) * n + k
    return None


# ---------------------------------------------------------------------------
# criteria


def criterion_1(galois, grothendieck, rejected) -> CriterionResult:
    details = []
    for pi in galois + grothendieck:
        details.append(Report(f"{pi.name} validates", True))
    for name, reason in rejected:
        details.append(failure(f"{name} validates", reason))
    table = broken_group_table()
    expected = first_assoc_failure(table)
    try:
        validate_group(table, 0, [0, 2, 1], name="broken Z/3")
        details.append(failure("broken group table is rejected", "validation passed"))
    except AxiomFailure as exc:
        first = exc.reports[0]
        n = len(table)
        got = divmod(first.witness.index, n * n)
        got = (got[0],) + divmod(got[1], n)
        details.append(outcome("broken group table is rejected at the first non-associative triple",
                               first.name == "associativity" and got == expected,
                               f"{first.name} at {got}, expected {expected}", {"triple": list(got)}))
    data = broken_hopf_data()
    expected = first_bad_assoc_column(data["mul"])
    try:
        validate_hopf(**data, name="broken O(Z/2)")
        details.append(failure("broken Hopf data is rejected", "validation passed"))
    except AxiomFailure as exc:
        first = exc.reports[0]
        ok = first.name == "associativity" and first.witness.index == expected
        details.append(outcome("broken Hopf data is rejected at the first non-associative basis triple", ok,
                               f"{first.name} at {first.witness.index}, expected {expected}",
                               {"column": first.witness.index}))
    return CriterionResult(1, "Hopf validation", _summarize("Hopf validation", details), details)


def criterion_2(groups, probe_limit) -> CriterionResult:
    details = []
    for pi in groups:
        def run(pi=pi):
            rc = C.reconstruct(pi)
            out = _tag(f"{pi.name}", rc.reports)
            probes = P.default_probes(pi, probe_limit)
            out += _tag(f"{pi.name} hatar", C.hatar_reports(pi, [m.map for m in probes.morphisms]))
            table_eq = K.equals(rc.rec.mul, K.compose(rc.witness.map, pi.mul,
                                                      K.tensor_map(rc.witness_inverse, rc.witness_inverse))) \
                if isinstance(pi, FinGroupObj) else \
                K.equals(rc.rec.mul, K.compose(rc.witness_inverse, pi.mul, K.tensor_map(rc.witness.map, rc.witness.map)))
            out.append(outcome(f"{pi.name}: structure tables equal after relabeling", table_eq, "tables differ"))
            return out
        details += _guard(f"{pi.name} reconstruction", run)
    return CriterionResult(2, "Reconstruction", _summarize("Reconstruction", details), details)


def criterion_3(groups, probe_limit) -> CriterionResult:
    details = []
    for pi in groups:
        def run(pi=pi):
            rc = C.reconstruct(pi)
            _, reps = C.comparison_functor(rc, P.default_probes(pi, probe_limit))
            return _tag(pi.name, reps)
        details += _guard(f"{pi.name} comparison functor", run)
    return CriterionResult(3, "Comparison functor", _summarize("Comparison functor", details), details)


def criterion_4(probe_limit) -> CriterionResult:
    details = []
    for pi, c in ((R.cyclic(2), 1), (R.cyclic(2), 2), (R.cyclic(3), 3)):
        probes = P.default_probes(pi, probe_limit)
        rep = _guard(f"{pi.name} at {c}", lambda: [C.aut_presheaf_check(pi, FinObj(c), None, probes)])
        details += _tag(pi.name, rep)
    return CriterionResult(4, "Aut presheaf", _summarize("Aut presheaf", details), details)


def sign_comodule(pi: RatHopfObj) -> P.GroRep:
    """The one-dimensional comodule ``x -> x (x) (e0 - e1)`` over functions on Z/2."""
    return P.validate_gro_rep(pi, 1, [[1], [-1]], "sign")


def criterion_5(galois, grothendieck) -> CriterionResult:
    details = []
    for pi in galois:
        for n in range(1, 5):
            x = FinObj(n)
            cq = P.coinvariants(P.free(pi, x))
            canonical = K.compose(cq.proj, P.free_unit(pi, x))
            ok = K.is_surjective(canonical) and cq.obj.size == n
            details.append(outcome(f"{pi.name}: coinvariants of free({n}) is {n} via the unit", ok, f"size {cq.obj.size}"))
    for pi in grothendieck:
        for n in range(1, 5):
            v = RatObj(n)
            eq = P.invariants(P.cofree(pi, v))
            canonical = K.eq_factor(eq, K.tensor_map(K.identity(v), pi.unit))
            ok = eq.obj.dim == n and K.rank(canonical) == n
            details.append(outcome(f"{pi.name}: invariants of cofree({n}) is {n} via the unit", ok, f"dim {eq.obj.dim}"))
    O2 = R.function_algebra(R.cyclic(2))
    dim = P.invariants(sign_comodule(O2)).obj.dim
    details.append(outcome("invariants of the sign comodule vanish", dim == 0, f"dim {dim}"))
    return CriterionResult(5, "Coinvariants and invariants", _summarize("Coinvariants and invariants", details), details)


def criterion_6(groups, probe_limit) -> CriterionResult:
    details = []
    for pi in groups:
        probes = P.default_probes(pi, probe_limit)
        seen = set()
        for X, Y in probes.pairs():
            z = Y.carrier
            reps, _ = P.projection_formula_check(z, X)
            details += _tag(f"{pi.name} projection ({K.size(z)}, {X.name})", reps)
            key = (K.size(X.carrier), K.size(Y.carrier))
            if key not in seen:
                seen.add(key)
                reps, _ = P.fusion_check(pi, X.carrier, Y.carrier)
                details += _tag(f"{pi.name} fusion {key}", reps)
    # negative controls: the inverse without the antipode must fail on a nontrivial group
    for pi in (R.cyclic(3), R.function_algebra(R.cyclic(3))):
        one = FinObj(1) if isinstance(pi, FinGroupObj) else RatObj(1)
        reps, _ = P.projection_formula_check(one, P.regular(pi), with_antipode=False)
        failed = not all_passed(reps)
        details.append(outcome(f"{pi.name}: projection inverse without antipode is rejected", failed, "negative control passed"))
        reps, _ = P.fusion_check(pi, one, one, with_antipode=False)
        failed = not all_passed(reps)
        details.append(outcome(f"{pi.name}: fusion inverse without antipode is rejected", failed, "negative control passed"))
    return CriterionResult(6, "Projection formula and fusion", _summarize("Projection formula and fusion", details),
                           details)


def sqrt2_torsor() -> T.GroTorsor:
    return T.validate_left_torsor(R.oz2_grouplike(), R.quadratic_algebra(2), R.sqrt2_coaction(), "sqrt2")


def torsor_cases(groups) -> list:
    out = []
    for pi in groups:
        try:
            out.append(T.regular_torsor(pi))
        except PrekosmosError:
            continue
    out.append(sqrt2_torsor())
    return out


def criterion_7(torsors, probe_limit) -> tuple[CriterionResult, dict]:
    details, twisted = [], {}
    for t in torsors:
        def run(t=t):
            pi = t.group if isinstance(t, T.GalTorsor) else t.hopf
            out = _tag(t.name, T.torsor_law_reports(t))
            tg = T.twist_group(t)
            twisted[t.name] = tg
            out += _tag(t.name, tg.reports)
            probes = P.default_probes(pi, probe_limit)
            tf = T.twist_fiber(t, probes, tg)
            out += _tag(f"{t.name} fibre", tf.reports)
            summary, reps = T.twisted_equiv_check(t, probes, tg)
            out += _tag(t.name, reps)
            return out
        details += _guard(f"{t.name} torsor", run)
    return CriterionResult(7, "Torsor laws", _summarize("Torsor laws", details), details), twisted


def criterion_8(torsors) -> CriterionResult:
    details = []
    for t in torsors:
        def run(t=t):
            summary, reps, _ = T.fib_tors_roundtrip(t)
            return [summary] + _tag(t.name, reps)
        details += _guard(f"{t.name} round trip", run)
    n_sqrt2 = len(T.rational_points_dim2(R.quadratic_algebra(2)))
    n_split = len(T.rational_points_dim2(R.split_algebra()))
    details.append(outcome("Q[x]/(x^2-2) has no rational points", n_sqrt2 == 0, f"{n_sqrt2} points"))
    details.append(outcome("QxQ has two rational points", n_split == 2, f"{n_split} points"))
    return CriterionResult(8, "Fibre functor / torsor round trip", _summarize("Fibre functor / torsor round trip", details),
                           details)


def z4_to_z2():
    Z4, Z2 = R.cyclic(4), R.cyclic(2)
    return validate_group_mor(Z4, Z2, lambda a: a % 2)


def oz2_into_oz4():
    """Pullback of functions along Z/4 -> Z/2: the algebra inclusion O(Z/2) -> O(Z/4)."""
    O2, O4 = R.function_algebra(R.cyclic(2)), R.function_algebra(R.cyclic(4))
    return validate_group_mor(O4, O2, K.rat_map(2, 4, [[int(a % 2 == b) for b in range(2)] for a in range(4)]))


def oz4_onto_oz2():
    """Restriction of functions along Z/2 -> Z/4, ``a -> 2a``."""
    O2, O4 = R.function_algebra(R.cyclic(2)), R.function_algebra(R.cyclic(4))
    return validate_group_mor(O2, O4, K.rat_map(4, 2, [[int(2 * b == a) for a in range(4)] for b in range(2)]))


def criterion_9(probe_limit) -> CriterionResult:
    details = []
    q = z4_to_z2()
    details += _tag("Z/4 -> Z/2", T.induced_triangle_reports(
        q, P.default_probes(q.src, probe_limit).reps, P.default_probes(q.dst, probe_limit).reps))
    size = T.induced_f_lower(q, P.regular(q.src)).limit.obj.size
    details.append(outcome("induced regular Z/4 set has 2 elements", size == 2, f"{size} elements"))
    inc = oz2_into_oz4()
    details += _tag("O(Z/2) -> O(Z/4)", T.induced_triangle_reports(
        inc, P.default_probes(inc.src, probe_limit).reps, P.default_probes(inc.dst, probe_limit).reps))
    res = oz4_onto_oz2()
    details += _tag("O(Z/4) -> O(Z/2)", T.induced_triangle_reports(
        res, P.default_probes(res.src, probe_limit).reps, P.default_probes(res.dst, probe_limit).reps))
    dim = T.induced_f_star(res, P.regular(res.src)).limit.obj.dim
    details.append(outcome("coinduced regular O(Z/2) comodule has dimension 4", dim == 4, f"dim {dim}"))
    S3 = R.symmetric3()
    transposition = 2
    cell = make_two_cell(transposition, identity_mor(S3), inner_auto(transposition, S3))
    details += _tag("S3 transposition", T.two_cell_nat(cell, P.default_probes(S3, probe_limit)).reports)
    O2g = R.oz2_grouplike()
    sign = K.rat_map(2, 1, [[1, -1]])
    cell = make_two_cell(sign, identity_mor(O2g), identity_mor(O2g))
    details += _tag("O(Z/2) sign character", T.two_cell_nat(cell, P.default_probes(O2g, probe_limit)).reports)
    return CriterionResult(9, "Induced functors", _summarize("Induced functors", details), details)


# ---------------------------------------------------------------------------
# running and serializing


@dataclass
class SuiteResult:
    criteria: list
    inputs: dict
    warnings: list
    seed: str | None = None

    @property
    def passed(self) -> bool:
        return all(c.summary.passed for c in self.criteria)

    def to_dict(self) -> dict:
        out = {"tool": "prekosmos", "version": VERSION, "inputs": self.inputs,
               "criteria": [c.to_dict() for c in self.criteria], "warnings": self.warnings,
               "passed": self.passed}
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def digest(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()


def group_document(pi) -> dict:
    """Canonical document for a roster entry, used for input digests."""
    if isinstance(pi, FinGroupObj):
        return {"kind": "finset-group", "order": pi.order, "mul": pi.table(), "unit": pi.unit,
                "inv": list(pi.inv.table)}
    s = lambda m: [[K.rat_str(v) for v in row] for row in m.matrix]
    return {"kind": "rat-hopf", "dim": pi.dim, "mul": s(pi.mul), "unit": [K.rat_str(r[0]) for r in pi.unit.matrix],
            "comul": s(pi.comul), "counit": [K.rat_str(v) for v in pi.counit.matrix[0]], "antipode": s(pi.antipode)}


def default_roster() -> tuple[list, list]:
    return R.galois_roster(), R.grothendieck_roster()


def run_suite(galois=None, grothendieck=None, side: str = "both", probe_limit: int = 5, max_order: int = 8,
              rejected=(), seed: str | None = None, only=None) -> SuiteResult:
    """Run the criteria (all, or the numbers in ``only``) over the given rosters."""
    if galois is None and grothendieck is None:
        galois, grothendieck = default_roster()
    galois, grothendieck = list(galois or []), list(grothendieck or [])
    warnings = []
    if side == "galois":
        grothendieck = []
    elif side == "grothendieck":
        galois = []
    kept_g = [g for g in galois if g.order <= max_order]
    kept_h = [h for h in grothendieck if h.dim <= max_order]
    for skipped in [g for g in galois if g not in kept_g] + [h for h in grothendieck if h not in kept_h]:
        warnings.append(f"{skipped.name} exceeds --max-order {max_order}; skipped")
    if not kept_g and not kept_h:
        warnings.append("empty roster: criteria over roster members pass vacuously")
    if seed is not None:
        rng = random.Random(seed)
        rng.shuffle(kept_g)
        rng.shuffle(kept_h)
    groups = kept_g + kept_h
    inputs = {g.name: digest(group_document(g)) for g in groups}
    wanted = set(only or range(1, 11))
    args = (kept_g, kept_h, groups, side, probe_limit, list(rejected), wanted)
    criteria = _run_criteria(*args)
    if 10 in wanted:
        criteria.append(criterion_10(criteria, lambda: _run_criteria(*args), inputs, warnings))
    return SuiteResult(criteria, inputs, warnings, seed)


def criterion_10(previous, rerun, inputs, warnings) -> CriterionResult:
    """Run the criteria a second time and compare canonical bytes with the first run."""
    body = lambda crit: canonical_json({"inputs": inputs, "criteria": [c.to_dict() for c in crit],
                                        "warnings": warnings})
    first, second = body(previous), body(rerun())
    details = [outcome("repeated run is byte-identical", first == second, "canonical reports differ",
                       {"sha256": hashlib.sha256(first.encode()).hexdigest()})]
    return CriterionResult(10, "Determinism", _summarize("Determinism", details), details)


def _run_criteria(kept_g, kept_h, groups, side, probe_limit, rejected, wanted) -> list:
    include_galois = side in ("both", "galois")
    include_gro = side in ("both", "grothendieck")
    criteria = []
    if 1 in wanted:
        criteria.append(criterion_1(kept_g, kept_h, rejected))
    if 2 in wanted:
        criteria.append(criterion_2(groups, probe_limit))
    if 3 in wanted:
        criteria.append(criterion_3(groups, probe_limit))
    if 4 in wanted and include_galois:
        criteria.append(criterion_4(probe_limit))
    if 5 in wanted:
        criteria.append(criterion_5(kept_g, kept_h))
    if 6 in wanted:
        criteria.append(criterion_6(groups, probe_limit))
    torsors = None
    if 7 in wanted or 8 in wanted:
        torsors = [t for t in torsor_cases(groups)
                   if (isinstance(t, T.GalTorsor) and include_galois) or (isinstance(t, T.GroTorsor) and include_gro)]
    if 7 in wanted:
        criteria.append(criterion_7(torsors, probe_limit)[0])
    if 8 in wanted:
        criteria.append(criterion_8(torsors))
    if 9 in wanted:
        criteria.append(criterion_9(probe_limit))
    return criteria
