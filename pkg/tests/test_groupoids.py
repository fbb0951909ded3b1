import pytest
from hypothesis import given, strategies as st

from pathcheck.groupoids import (CompositionError, FinGroupoid,
                                 GroupoidMap, ModelError, bz2,
                                 check_functor, constant_map,
                                 discrete_groupoid, identity_map,
                                 terminal_groupoid, walking_iso_groupoid)
from pathcheck.names import name_from_json, name_to_json, namekey, sort_names


# -- presentation validation --------------------------------------------


def test_walking_iso_validates(WIg):
    assert WIg.n_objects == 2
    assert WIg.n_morphisms == 4
    assert WIg.id("0") == "id0"
    assert WIg.inv("fwd") == "bwd"
    assert WIg.then("fwd", "bwd") == "id0"
    assert WIg.then("bwd", "fwd") == "id1"


def test_non_associative_table_cites_triple():
    morphisms = {"e": ("x", "x"), "p": ("x", "x"), "q": ("x", "x")}
    table = {("e", "e"): "e", ("e", "p"): "p", ("p", "e"): "p",
             ("e", "q"): "q", ("q", "e"): "q",
             ("p", "p"): "q", ("p", "q"): "e", ("q", "p"): "e",
             ("q", "q"): "q"}
    with pytest.raises(ModelError, match=r"associativity.*'p', 'p', 'q'"):
        FinGroupoid("bad", ["x"], morphisms, table)


def _wi_presentation():
    w = walking_iso_groupoid()
    return dict(w.morphisms), dict(w.table)


def test_missing_composite_rejected():
    morphisms, table = _wi_presentation()
    del table[("fwd", "bwd")]
    # pass identity and inverse so derivation cannot mask the hole
    with pytest.raises(ModelError, match="missing composite"):
        FinGroupoid("bad", ["0", "1"], morphisms, table,
                    identity={"0": "id0", "1": "id1"},
                    inverse={"id0": "id0", "id1": "id1",
                             "fwd": "bwd", "bwd": "fwd"})


def test_spurious_composite_rejected():
    morphisms, table = _wi_presentation()
    table[("fwd", "fwd")] = "fwd"
    with pytest.raises(ModelError, match="spurious composite"):
        FinGroupoid("bad", ["0", "1"], morphisms, table)


def test_no_identity_candidate_rejected():
    morphisms = {"z": ("x", "x")}
    table = {("z", "z"): "z"}
    # z is a unit for itself, so it derives; drop neutrality instead
    g = FinGroupoid("ok", ["x"], morphisms, table)
    assert g.id("x") == "z"
    with pytest.raises(ModelError, match="identity candidates"):
        FinGroupoid("bad", ["x", "y"], {"z": ("x", "x")},
                    {("z", "z"): "z"})


def test_no_inverse_rejected():
    # idempotent z in a 2-element monoid has no inverse
    morphisms = {"e": ("x", "x"), "z": ("x", "x")}
    table = {("e", "e"): "e", ("e", "z"): "z", ("z", "e"): "z",
             ("z", "z"): "z"}
    with pytest.raises(ModelError, match="inverse candidates"):
        FinGroupoid("bad", ["x"], morphisms, table)


def test_stock_groupoids():
    one = terminal_groupoid()
    assert one.objects == ("*",) and one.n_morphisms == 1
    d3 = discrete_groupoid(["u", "v", "w"])
    assert d3.is_discrete() and d3.n_morphisms == 3
    b = bz2()
    assert b.n_objects == 1 and b.n_morphisms == 2
    assert b.then("s", "s") == "e" and b.inv("s") == "s"
    assert not b.is_discrete()
    w = walking_iso_groupoid()
    assert w.is_codiscrete() and not discrete_groupoid(["a", "b"]).is_codiscrete()


def test_components():
    d = discrete_groupoid(["a", "b", "c"])
    assert d.components() == (("a",), ("b",), ("c",))
    assert walking_iso_groupoid().components() == (("0", "1"),)


def test_hom_star_and_composition_errors(WIg):
    assert WIg.hom("0", "1") == ("fwd",)
    assert set(WIg.star("0")) == {"id0", "fwd"}
    with pytest.raises(CompositionError):
        WIg.then("fwd", "fwd")


def test_fingerprint_identity():
    a = walking_iso_groupoid()
    b = walking_iso_groupoid()
    assert a.fingerprint() == b.fingerprint()
    assert a.fingerprint() != bz2().fingerprint()


# -- functors ------------------------------------------------------------


def test_map_composition_and_iso(WIg):
    flip = GroupoidMap("flip", WIg, WIg, {"0": "1", "1": "0"},
                       {"id0": "id1", "id1": "id0",
                        "fwd": "bwd", "bwd": "fwd"})
    assert check_functor(flip)
    assert flip.is_iso()
    assert flip.then(flip).same_mapping(identity_map(WIg))
    assert flip.inverse().same_mapping(flip)


def test_map_mono(one, D2, WIg):
    pick = constant_map(one, D2, "a")
    assert pick.is_mono()
    crush = GroupoidMap("crush", WIg, one,
                        {"0": "*", "1": "*"},
                        {m: "id" for m in WIg.morphisms})
    assert not crush.is_mono()
    assert not crush.is_iso()


def test_check_functor_failures(WIg, B2):
    broken = GroupoidMap("broken", B2, B2, {"*": "*"},
                         {"e": "e", "s": "e"}, validate=False)
    # sends the involution to the unit but claims nothing false: this
    # one is a genuine functor, the collapse
    assert check_functor(broken)
    wrong_comp = GroupoidMap("wrong", WIg, WIg,
                             {"0": "0", "1": "1"},
                             {"id0": "id0", "id1": "id1",
                              "fwd": "fwd", "bwd": "id0"},
                             validate=False)
    assert not check_functor(wrong_comp)
    wrong_ends = GroupoidMap("ends", WIg, WIg,
                             {"0": "0", "1": "1"},
                             {"id0": "id0", "id1": "id1",
                              "fwd": "bwd", "bwd": "fwd"},
                             validate=False)
    assert not check_functor(wrong_ends)


def test_map_validate_flag(WIg):
    with pytest.raises(ModelError):
        GroupoidMap("bad", WIg, WIg, {"0": "0", "1": "1"},
                    {"id0": "id0", "id1": "id1",
                     "fwd": "fwd", "bwd": "id0"})


def test_then_domain_mismatch(one, D2, B2):
    pick = constant_map(one, D2, "a")
    other = constant_map(one, B2, "*")
    with pytest.raises(CompositionError):
        pick.then(other)


# -- the name order ------------------------------------------------------


names_strategy = st.recursive(
    st.integers(-5, 5) | st.text("abz01", max_size=3),
    lambda children: st.tuples(children, children),
    max_leaves=4)


@given(st.lists(names_strategy, max_size=8))
def test_sort_names_is_canonical(names):
    once = sort_names(names)
    assert sort_names(once) == once
    assert sort_names(reversed(list(names))) == once
    assert sorted(map(namekey, names)) == [namekey(n) for n in once]


@given(names_strategy)
def test_name_json_roundtrip(name):
    assert name_from_json(name_to_json(name)) == name


def test_bool_names_rejected():
    with pytest.raises(TypeError):
        namekey(True)
