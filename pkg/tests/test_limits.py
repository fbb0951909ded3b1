import pytest

from pathcheck.enumeration import enumerate_maps
from pathcheck.groupoids import (CompositionError, GroupoidMap,
                                 check_functor, constant_map, identity_map)
from pathcheck.limits import (CommutingSquare, is_pullback, is_weak_pullback,
                              product, pullback, pullback_comparison,
                              to_terminal)


def test_product_carrier_is_a_groupoid(WIg, B2):
    prod = product(WIg, B2)
    prod.gpd.validate()
    assert prod.gpd.n_objects == 2
    assert prod.gpd.n_morphisms == 8
    assert check_functor(prod.proj1)
    assert check_functor(prod.proj2)


def test_product_pairing(one, WIg, B2):
    prod = product(WIg, B2)
    u = constant_map(one, WIg, "1", name="u")
    v = constant_map(one, B2, "*", name="v")
    h = prod.pair(u, v)
    assert check_functor(h)
    assert h.then(prod.proj1).same_mapping(u)
    assert h.then(prod.proj2).same_mapping(v)


def test_product_universal_property_exhaustively(one, WIg, B2):
    # the pairing is the only map whose projections are u and v
    prod = product(WIg, B2)
    u = constant_map(one, WIg, "0", name="u")
    v = constant_map(one, B2, "*", name="v")
    h = prod.pair(u, v)
    matching = [k for k in enumerate_maps(one, prod.gpd)
                if k.then(prod.proj1).same_mapping(u)
                and k.then(prod.proj2).same_mapping(v)]
    assert len(matching) == 1
    assert matching[0].same_mapping(h)


def test_pullback_of_point_inclusion(one, D2, WIg):
    incl = GroupoidMap("incl", D2, WIg, {"a": "0", "b": "1"},
                       {D2.id("a"): "id0", D2.id("b"): "id1"})
    pick0 = constant_map(one, WIg, "0", name="pick0")
    pb = pullback(incl, pick0)
    assert pb.apex.objects == (("a", "*"),)
    assert pb.apex.n_morphisms == 1
    assert pb.proj1.obj_map == {("a", "*"): "a"}


def test_pullback_mediation_and_cone_check(one, D2, WIg):
    incl = GroupoidMap("incl", D2, WIg, {"a": "0", "b": "1"},
                       {D2.id("a"): "id0", D2.id("b"): "id1"})
    pick0 = constant_map(one, WIg, "0", name="pick0")
    pb = pullback(incl, pick0)
    u = constant_map(one, D2, "a", name="u")
    v = identity_map(one)
    med = pb.mediate(u, v)
    assert med.then(pb.proj1).same_mapping(u)
    bad = constant_map(one, D2, "b", name="bad")
    with pytest.raises(CompositionError):
        pb.mediate(bad, v)


def test_commuting_square_rejects_non_commuting(one, WIg):
    end0 = constant_map(one, WIg, "0", name="e0")
    end1 = constant_map(one, WIg, "1", name="e1")
    with pytest.raises(CompositionError, match="does not commute"):
        CommutingSquare(top=end0, left=end1,
                        right=identity_map(WIg), bottom=identity_map(WIg))


def test_chosen_pullback_square_is_a_pullback(one, D2, WIg):
    incl = GroupoidMap("incl", D2, WIg, {"a": "0", "b": "1"},
                       {D2.id("a"): "id0", D2.id("b"): "id1"})
    pick0 = constant_map(one, WIg, "0", name="pick0")
    verdict = is_pullback(pullback(incl, pick0).as_square())
    assert verdict
    assert verdict.witness.is_iso()


def test_non_pullback_square_detected(one, WIg):
    # corner too small: one point over a two-object fibre product
    sq = CommutingSquare(top=identity_map(one),
                         left=constant_map(one, WIg, "0", name="e0"),
                         right=identity_map(one),
                         bottom=to_terminal(WIg, one))
    verdict = is_pullback(sq)
    assert not verdict
    assert "1/2" in verdict.reason
    assert is_weak_pullback(sq) is None


def test_weak_pullback_section_on_genuine_pullback(one, D2, WIg):
    incl = GroupoidMap("incl", D2, WIg, {"a": "0", "b": "1"},
                       {D2.id("a"): "id0", D2.id("b"): "id1"})
    pick0 = constant_map(one, WIg, "0", name="pick0")
    sq = pullback(incl, pick0).as_square()
    section = is_weak_pullback(sq)
    assert section is not None
    comparison = pullback_comparison(sq)
    composite = section.then(comparison)
    assert composite.same_mapping(identity_map(comparison.cod))


def test_pullback_cospan_mismatch(one, WIg, B2):
    with pytest.raises(CompositionError, match="cospan"):
        pullback(constant_map(one, WIg, "0"), constant_map(one, B2, "*"))
