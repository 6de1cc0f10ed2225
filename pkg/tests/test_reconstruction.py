import pytest

import oracles as O
from prekosmos import kosmos as K
from prekosmos import reconstruction as C
from prekosmos import rep as P
from prekosmos import roster as R
from prekosmos.hopf import KAPPA_ALG
from prekosmos.lawcheck import all_passed, is_iso

GROUPS = R.galois_roster()
HOPFS = R.grothendieck_roster()


@pytest.mark.parametrize("pi", GROUPS, ids=lambda g: g.name)
def test_galois_reconstruction_matches_table(pi):
    rec = C.reconstruct(pi)
    assert rec.passed
    # the witness is the identity, so the rebuilt table must equal the original entrywise
    assert list(rec.witness.map.table) == list(range(pi.order))
    assert rec.rec.table() == pi.table()
    assert O.is_group(rec.rec.table(), rec.rec.unit, list(rec.rec.inv.table))
    assert O.isomorphic(rec.rec.table(), pi.table())


@pytest.mark.parametrize("pi", HOPFS + [R.oz2_grouplike()], ids=lambda h: h.name)
def test_grothendieck_reconstruction_matches_constants(pi):
    rec = C.reconstruct(pi)
    assert rec.passed
    for name in ("mul", "unit", "comul", "counit", "antipode"):
        assert K.equals(getattr(rec.rec, name), getattr(pi, name)), name
    from prekosmos.suite import group_document
    d = group_document(rec.rec)
    _, table, _ = O.hopf_character_group(d["mul"], d["unit"], d["comul"], d["counit"])
    _, original, _ = O.hopf_character_group(*(group_document(pi)[k] for k in ("mul", "unit", "comul", "counit")))
    assert O.isomorphic(table, original)


def test_hatar_on_unit_is_identity_and_permutation_on_z3():
    z3 = R.cyclic(3)
    assert K.equals(C.reflection_hatar(z3, K.FinObj(1)), K.identity(z3.carrier))
    h = C.reflection_hatar(z3, K.FinObj(2))
    assert h.dom.size == 6 and sorted(h.table) == list(range(6))


def test_tahar_on_oz2_is_identity():
    h = R.function_algebra(R.cyclic(2))
    t = C.coreflection_tahar(h, K.RatObj(1))
    assert K.equals(t, K.identity(t.dom))


@pytest.mark.parametrize("pi", [R.cyclic(3), R.function_algebra(R.cyclic(2))], ids=lambda g: g.name)
def test_hatar_natural_over_probes(pi):
    probes = P.default_probes(pi)
    assert all_passed(C.hatar_reports(pi, [m.map for m in probes.morphisms]))


@pytest.mark.parametrize("pi", GROUPS + HOPFS, ids=lambda g: g.name)
def test_comparison_functor(pi):
    rec = C.reconstruct(pi)
    images, reports = C.comparison_functor(rec, P.default_probes(pi))
    assert all_passed(reports)
    assert len(images) == 5


def test_comparison_functor_on_regular_z2_is_regular():
    z2 = R.cyclic(2)
    rec = C.reconstruct(z2)
    images, _ = C.comparison_functor(rec, P.default_probes(z2))
    reg = images["regular"]
    assert [reg.act(g, a) for g in range(2) for a in range(2)] == [0, 1, 1, 0]


def test_universal_element_inverses():
    z3 = R.cyclic(3)
    xi = C.universal_element(P.regular(z3))
    inv = C.cokleisli_inverse(z3, xi)
    # coKleisli composite: inv o (id (x) xi) o (diag (x) id) is the projection pi (x) x -> x
    composite = K.compose(inv, K.tensor_map(K.identity(z3.carrier), xi),
                          K.tensor_map(K.diagonal(z3.carrier), K.identity(z3.carrier)))
    expected = K.tensor_map(z3.counit, K.identity(z3.carrier))
    assert K.equals(composite, expected)


@pytest.mark.parametrize("pi,c,count", [(R.cyclic(2), 1, 2), (R.cyclic(2), 2, 4), (R.cyclic(3), 3, 27)])
def test_aut_presheaf_counts(pi, c, count):
    r = C.aut_presheaf_check(pi, K.FinObj(c))
    assert r.passed and r.data["transformations"] == count == pi.order ** c


def test_aut_component_of_nontrivial_element_is_translation():
    z2 = R.cyclic(2)
    probes = P.default_probes(z2)
    comps = C._galois_components(z2, K.point(z2.carrier, 1), probes)
    assert list(comps["regular"].table) == [1, 0]


def test_aut_presheaf_grothendieck_identity_and_characters():
    h = R.function_algebra(R.cyclic(2))
    r = C.aut_presheaf_check(h, h.algebra, [K.identity(h.carrier)])
    assert r.passed
    chars = [K.rat_map(2, 1, [[1, 0]]), K.rat_map(2, 1, [[0, 1]])]
    r = C.aut_presheaf_check(h, KAPPA_ALG, chars)
    assert r.passed and r.data["transformations"] == 2


def test_aut_presheaf_rejects_non_algebra_map():
    h = R.function_algebra(R.cyclic(2))
    r = C.aut_presheaf_check(h, KAPPA_ALG, [K.rat_map(2, 1, [[1, 1]])])
    assert not r.passed


def test_reconstruction_witness_is_iso():
    for pi in GROUPS + HOPFS:
        assert is_iso(C.reconstruct(pi).witness.map)
