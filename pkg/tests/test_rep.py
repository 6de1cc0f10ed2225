import itertools

import pytest

import oracles as O
from prekosmos import kosmos as K
from prekosmos import rep as P
from prekosmos import roster as R
from prekosmos.errors import AxiomFailure, CarrierTooLarge
from prekosmos.lawcheck import all_passed, certify_iso


Z2 = R.cyclic(2)
OZ2 = R.oz2_grouplike()


def sign_set():
    return P.validate_gal_rep(Z2, 2, [[0, 1], [1, 0]], "sign set")


def sign_comodule():
    # grouplike basis {1, t}: v -> v (x) t
    return P.validate_gro_rep(OZ2, 1, [[0], [1]], "sign")


def test_action_law_failure_is_reported():
    with pytest.raises(AxiomFailure):
        P.validate_gal_rep(R.cyclic(2), 2, [[1, 0], [1, 0]])


def test_sign_set_squared_has_two_orbits_on_four_points():
    X = P.rep_tensor(sign_set(), sign_set())
    assert X.carrier.size == 4
    assert O.orbits(4, range(2), X.act) == 2
    assert P.coinvariants(X).obj.size == 2


def test_sign_comodule_squared_is_trivial():
    S = sign_comodule()
    SS = P.rep_tensor(S, S)
    triv = P.trivial(OZ2, 1)
    assert K.equals(SS.coaction, triv.coaction)
    assert P.invariants(SS).obj.dim == 1


def test_trivial_reps():
    g = P.trivial(R.cyclic(2), 3)
    assert all(g.act(a, i) == i for a in range(2) for i in range(3))
    h = R.function_algebra(R.cyclic(3))
    t = P.trivial(h, 2)
    assert K.equals(t.coaction, K.tensor_map(K.identity(t.carrier), h.unit))


@pytest.mark.parametrize("pi", [R.cyclic(2), R.cyclic(3), R.symmetric3()], ids=lambda g: g.name)
def test_free_adjunction_triangles(pi):
    assert all_passed(P.fibre_triangle_reports(P.free(pi, 2)))
    assert all_passed(P.trivial_triangle_reports(P.regular(pi)))


@pytest.mark.parametrize("h", [R.oz2_grouplike(), R.function_algebra(R.cyclic(3))], ids=lambda h: h.name)
def test_cofree_adjunction_triangles(h):
    assert all_passed(P.fibre_triangle_reports(P.cofree(h, 2)))
    assert all_passed(P.trivial_triangle_reports(P.regular(h)))


def test_coinvariant_examples():
    z3 = R.cyclic(3)
    assert P.coinvariants(P.regular(z3)).obj.size == 1
    swap01 = P.validate_gal_rep(R.cyclic(2), 3, [[0, 1, 2], [1, 0, 2]])
    res = P.coinvariants(swap01)
    assert res.obj.size == 2
    assert res.proj.table[0] == res.proj.table[1] != res.proj.table[2]
    assert P.coinvariants(P.trivial(z3, 4)).obj.size == 4


@pytest.mark.parametrize("pi", R.galois_roster(), ids=lambda g: g.name)
def test_coinvariants_match_burnside(pi):
    for X in [P.regular(pi), P.rep_tensor(P.regular(pi), P.regular(pi)), P.cosets(pi)[0]]:
        n = X.carrier.size
        assert P.coinvariants(X).obj.size == O.burnside(pi.order, n, X.act)


def test_invariant_examples():
    h = R.function_algebra(R.cyclic(2))
    assert P.invariants(P.trivial(h, 2)).obj.dim == 2
    sign = P.validate_gro_rep(h, 1, [[1], [-1]], "sign")
    assert P.invariants(sign).obj.dim == 0
    reg = P.invariants(P.regular(h))
    assert reg.obj.dim == 1
    # spanned by e0 + e1
    col = reg.incl.column(0)
    assert col[0] == col[1] != 0


@pytest.mark.parametrize("h", R.grothendieck_roster() + [R.oz2_grouplike()], ids=lambda h: h.name)
def test_invariants_match_rank_oracle(h):
    unit = [r[0] for r in h.unit.matrix]
    for X in [P.regular(h), P.cofree(h, 2), P.trivial(h, 2)]:
        rows = [list(r) for r in X.coaction.matrix]
        assert P.invariants(X).obj.dim == O.invariant_dim(rows, unit)


def test_hom_counts():
    z2 = R.cyclic(2)
    assert len(P.hom_rep(P.rep_unit(z2), P.rep_unit(z2))) == 1
    reg = P.regular(z2)
    homs = P.hom_rep(reg, reg)
    assert len(homs) == 2
    assert len(homs) == O.equivariant_maps(2, 2, 2, reg.act, reg.act)
    h = OZ2
    assert len(P.hom_rep(sign_comodule(), P.trivial(h, 1))) == 0
    assert len(P.hom_rep(P.rep_unit(h), P.rep_unit(h))) == 1


@pytest.mark.parametrize("pi", [R.cyclic(3), R.klein(), R.symmetric3()], ids=lambda g: g.name)
def test_hom_counts_against_brute_force(pi):
    reps = [P.regular(pi), P.cosets(pi)[0], P.trivial(pi, 2)]
    for X, Y in itertools.product(reps, repeat=2):
        n, m = X.carrier.size, Y.carrier.size
        if m ** n > 50000:
            continue
        assert len(P.hom_rep(X, Y)) == O.equivariant_maps(pi.order, n, m, X.act, Y.act)


def test_hom_enumeration_limit():
    big = P.trivial(R.cyclic(2), 12)
    with pytest.raises(CarrierTooLarge):
        P.hom_rep(big, big)


def test_projection_formula_on_regular_z2():
    z2 = R.cyclic(2)
    X = P.regular(z2)
    z = K.FinObj(2)
    phi, inv = P.projection_formula(z, X)
    assert phi.dom.size == 8
    # (g, c, a) -> (g, c, g a), computed directly
    expected = tuple((g * 2 + c) * 2 + X.act(g, a) for g in range(2) for c in range(2) for a in range(2))
    assert phi.table == expected
    reports, certified = P.projection_formula_check(z, X)
    assert all_passed(reports)
    assert K.equals(certified, inv)


def test_projection_formula_on_sign_comodule():
    z = K.RatObj(1)
    phi, inv = P.projection_formula(z, sign_comodule())
    assert phi.dom.dim == 2
    assert K.equals(certify_iso(phi), inv)


def test_fusion_sizes_and_inverses():
    chi, inv = P.fusion(R.cyclic(3), K.FinObj(1), K.FinObj(1))
    assert chi.dom.size == 9 and K.equals(certify_iso(chi), inv)
    chi, inv = P.fusion(R.oz2_grouplike(), K.RatObj(1), K.RatObj(1))
    assert chi.dom.dim == 4
    expected = O.gauss_inverse([list(r) for r in chi.matrix])
    assert [list(r) for r in inv.matrix] == expected


def test_inverses_without_antipode_fail_for_nontrivial_groups():
    reports, _ = P.projection_formula_check(K.FinObj(1), P.regular(R.cyclic(3)), with_antipode=False)
    assert not all_passed(reports)
    reports, _ = P.fusion_check(R.function_algebra(R.cyclic(3)), K.RatObj(1), K.RatObj(1), with_antipode=False)
    assert not all_passed(reports)


def test_default_probe_morphisms_are_equivariant():
    for pi in R.galois_roster() + R.grothendieck_roster():
        probes = P.default_probes(pi)
        for m in probes.morphisms:
            assert P.rep_mor_report(m.src, m.dst, m.map).passed
        assert len(probes.reps) == 5


def test_coaction_counit_failure():
    h = R.function_algebra(R.cyclic(2))
    with pytest.raises(AxiomFailure) as exc:
        P.validate_gro_rep(h, 1, [["1/2"], ["1/2"]])
    assert "coaction counit" in {r.name for r in exc.value.reports}
