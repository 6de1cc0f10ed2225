from fractions import Fraction

import pytest

import oracles as O
from prekosmos import kosmos as K
from prekosmos import rep as P
from prekosmos import roster as R
from prekosmos import suite as S
from prekosmos import torsors as T
from prekosmos.errors import ActionLawFailure, NotDimTwo, NotTorsorMorphism, TauNotIso
from prekosmos.hopf import identity_mor, inner_auto, make_two_cell, validate_comm_alg
from prekosmos.lawcheck import all_passed, certify_iso


def sqrt2():
    return T.validate_left_torsor(R.oz2_grouplike(), R.quadratic_algebra(2), R.sqrt2_coaction(), "sqrt2")


def hopf_character_table(h):
    d = S.group_document(h)
    return O.hopf_character_group(d["mul"], d["unit"], d["comul"], d["counit"])


# ---------------------------------------------------------------------------
# torsor validation


@pytest.mark.parametrize("pi", R.galois_roster() + R.grothendieck_roster(), ids=lambda g: g.name)
def test_regular_torsors_satisfy_all_laws(pi):
    t = T.regular_torsor(pi)
    assert all_passed(T.torsor_law_reports(t))


def test_regular_shear_map_has_the_displayed_inverse():
    z3 = R.cyclic(3)
    t = T.regular_torsor(z3)
    # tau(a, g) = (a, a g); its inverse sends (a, b) to (a, a^-1 b)
    expected = tuple(a * 3 + z3.m(z3.i(a), b) for a in range(3) for b in range(3))
    assert t.tau_inv.table == expected


def test_constant_action_is_rejected():
    with pytest.raises(ActionLawFailure):
        T.validate_right_torsor(R.cyclic(2), 2, [[0, 0], [0, 0]])


def test_non_free_action_is_rejected():
    # trivial action of Z/2 on a point is an action but not a torsor
    with pytest.raises(TauNotIso):
        T.validate_right_torsor(R.cyclic(2), 1, [[0, 0]])


def test_sqrt2_torsor_shear_map_against_gauss_jordan():
    t = sqrt2()
    rows = [list(r) for r in t.tau.matrix]
    assert len(rows) == 4
    assert [list(r) for r in t.tau_inv.matrix] == O.gauss_inverse(rows)
    assert all_passed(T.torsor_law_reports(t))


def test_non_torsor_comodule_algebra():
    # trivial coaction on QxQ: a comodule algebra whose shear map is singular
    a = R.split_algebra()
    h = R.oz2_grouplike()
    trivial = K.compose(K.tensor_map(h.unit, K.identity(a.carrier)), K.identity(a.carrier))
    with pytest.raises(TauNotIso):
        T.validate_left_torsor(h, a, trivial)


# ---------------------------------------------------------------------------
# twisted groups


@pytest.mark.parametrize("pi", R.galois_roster(), ids=lambda g: g.name)
def test_twisted_group_of_regular_torsor_is_isomorphic(pi):
    tg = T.twist_group(T.regular_torsor(pi))
    assert all_passed(tg.reports)
    g = tg.group
    assert O.is_group(g.table(), g.unit, list(g.inv.table))
    assert O.isomorphic(g.table(), pi.table())


def test_twisted_z4_and_s3_orders():
    assert T.twist_group(T.regular_torsor(R.cyclic(4))).group.order == 4
    g = T.twist_group(T.regular_torsor(R.symmetric3())).group
    assert g.order == 6
    # nonabelian, as S3 must be
    t = g.table()
    assert any(t[a][b] != t[b][a] for a in range(6) for b in range(6))


@pytest.mark.parametrize("pi", R.grothendieck_roster(), ids=lambda h: h.name)
def test_twisted_hopf_of_regular_torsor_has_same_character_group(pi):
    tg = T.twist_group(T.regular_torsor(pi))
    assert all_passed(tg.reports)
    _, twisted, _ = hopf_character_table(tg.group)
    _, original, _ = hopf_character_table(pi)
    assert tg.group.dim == pi.dim
    assert O.isomorphic(twisted, original)


def test_twisted_hopf_of_sqrt2_is_oz2():
    tg = T.twist_group(sqrt2())
    assert all_passed(tg.reports) and tg.iso is not None
    chars, table, _ = hopf_character_table(tg.group)
    assert len(chars) == 2 and O.isomorphic(table, R.cyclic(2).table())


# ---------------------------------------------------------------------------
# twisted fibre functor and equivalence


def test_twisted_fiber_of_sqrt2_on_sign_is_one_dimensional():
    h = R.oz2_grouplike()
    t = T.validate_left_torsor(h, R.quadratic_algebra(2), R.sqrt2_coaction(), "sqrt2")
    sign = P.validate_gro_rep(h, 1, [[0], [1]], "sign")
    b = T.bitorsor(T.twist_group(t))
    assert K.size(T.twist_rep(b, sign).limit.obj) == 1


@pytest.mark.parametrize("t", [T.regular_torsor(R.cyclic(2)), T.regular_torsor(R.symmetric3()), sqrt2(),
                               T.regular_torsor(R.function_algebra(R.cyclic(3)))], ids=lambda t: t.name)
def test_twisted_fiber_and_equivalence(t):
    tf = T.twist_fiber(t)
    assert all_passed(tf.reports)
    summary, reports = T.twisted_equiv_check(t)
    assert summary.passed and all_passed(reports)


def test_twisted_fiber_preserves_carrier_sizes_for_regular_torsor():
    t = T.regular_torsor(R.symmetric3())
    sizes = T.twist_fiber(t).carrier_sizes()
    assert sizes == {"unit": 1, "triv2": 2, "regular": 6, "cosets": 3, "regular*regular": 36}


def test_torsor_morphism_translation_gives_nontrivial_components():
    z2 = R.cyclic(2)
    t = T.regular_torsor(z2)
    translate = K.fin_map(2, 2, [1, 0])
    nat = T.torsor_iso_to_nat(t, t, translate)
    assert all_passed(nat.reports)
    assert not K.equals(nat.components["regular"], K.identity(K.FinObj(2)))
    ident = T.torsor_iso_to_nat(t, t, K.identity(t.carrier))
    assert all(K.equals(c, K.identity(c.dom)) for c in ident.components.values())


def test_torsor_morphism_must_commute_with_action():
    z3 = R.cyclic(3)
    t = T.regular_torsor(z3)
    with pytest.raises(NotTorsorMorphism):
        T.torsor_iso_to_nat(t, t, K.fin_map(3, 3, [0, 2, 1]))


# ---------------------------------------------------------------------------
# round trip and points


@pytest.mark.parametrize("t", [T.regular_torsor(g) for g in R.galois_roster()]
                         + [T.regular_torsor(h) for h in R.grothendieck_roster()] + [sqrt2()], ids=lambda t: t.name)
def test_roundtrip(t):
    summary, reports, f = T.fib_tors_roundtrip(t)
    assert summary.passed and all_passed(reports)
    certify_iso(f)


def test_roundtrip_on_z2_is_a_two_point_bijection():
    _, _, f = T.fib_tors_roundtrip(T.regular_torsor(R.cyclic(2)))
    assert f.dom.size == 2 and sorted(f.table) == [0, 1]


def test_rational_points():
    assert len(T.rational_points_dim2(R.split_algebra())) == 2
    assert len(T.rational_points_dim2(R.quadratic_algebra(2))) == 0
    assert len(T.rational_points_dim2(R.quadratic_algebra(0))) == 1
    assert len(T.rational_points_dim2(R.quadratic_algebra("9/4"))) == 2
    with pytest.raises(NotDimTwo):
        T.rational_points_dim2(R.function_algebra(R.cyclic(3)).algebra)


@pytest.mark.parametrize("c", [2, 3, 4, 0, -1, "1/4", "2/9", 8])
def test_rational_points_match_square_test(c):
    c = Fraction(c)
    # x^2 = c has rational roots iff c is the square of a rational
    roots = {r for r in (Fraction(p, q) for q in range(1, 10) for p in range(-30, 31)) if r * r == c}
    points = T.rational_points_dim2(R.quadratic_algebra(c))
    assert len(points) == len(roots)
    for chi in points:
        assert chi.matrix[0][0] == 1 and chi.matrix[0][1] in roots


# ---------------------------------------------------------------------------
# induced functors and 2-cells


def test_f_lower_of_regular_z4_along_quotient_has_two_elements():
    f = S.z4_to_z2()
    ind = T.induced_f_lower(f, P.regular(f.src))
    assert ind.rep.carrier.size == 2
    # oracle: orbits of Z/4 on pairs (g, z) in Z/2 x Z/4 under h.(g, z) = (g + f(h), z - h)
    act = lambda h, i: ((i // 4 + h) % 2) * 4 + (i % 4 - h) % 4
    assert O.orbits(8, range(4), act) == 2


def test_induced_triangles_for_quotient():
    f = S.z4_to_z2()
    lower = P.default_probes(f.src).reps
    upper = P.default_probes(f.dst).reps
    assert all_passed(T.induced_triangle_reports(f, lower, upper))


def test_coinduced_dimension_and_triangles():
    f = S.oz4_onto_oz2()
    ind = T.induced_f_star(f, P.regular(f.src))
    assert ind.rep.carrier.dim == 4
    assert all_passed(T.induced_triangle_reports(f, P.default_probes(f.src).reps, P.default_probes(f.dst).reps))
    g = S.oz2_into_oz4()
    assert all_passed(T.induced_triangle_reports(g, P.default_probes(g.src).reps, P.default_probes(g.dst).reps))


def test_two_cell_unit_gives_identity_components():
    s3 = R.symmetric3()
    ident = identity_mor(s3)
    nat = T.two_cell_nat(make_two_cell(s3.unit, ident, ident), P.default_probes(s3))
    assert all_passed(nat.reports)
    assert all(K.equals(c, K.identity(c.dom)) for c in nat.components.values())


def test_two_cell_transposition_gives_nontrivial_permutations():
    s3 = R.symmetric3()
    cell = make_two_cell(2, identity_mor(s3), inner_auto(2, s3))
    nat = T.two_cell_nat(cell, P.default_probes(s3))
    assert all_passed(nat.reports)
    reg = nat.components["regular"]
    assert sorted(reg.table) == list(range(6)) and list(reg.table) != list(range(6))


def test_two_cell_sign_character_gives_signed_components():
    h = R.oz2_grouplike()
    cell = make_two_cell([[1, -1]], identity_mor(h), identity_mor(h))
    probes = P.default_probes(h)
    nat = T.two_cell_nat(cell, probes)
    assert all_passed(nat.reports)
    sign = P.validate_gro_rep(h, 1, [[0], [1]], "sign")
    nat = T.two_cell_nat(cell, P.ProbeSet((sign,), ()))
    assert [list(r) for r in nat.components["sign"].matrix] == [[-1]]


def test_comm_alg_validation_rejects_nonassociative():
    with pytest.raises(Exception):
        validate_comm_alg(2, [[1, 0, 0, 0], [1, 0, 0, 1]], [[1], [1]])
