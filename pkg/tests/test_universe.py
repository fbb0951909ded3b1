import pytest

from pathcheck.groupoids import (GroupoidMap, bz2, check_functor,
                                 constant_map, discrete_groupoid,
                                 identity_map)
from pathcheck.limits import product
from pathcheck.universe import (ClassifierUniverse, ClosureError,
                                PathTypeStructure, classify,
                                standard_set_universe)


# -- carrier shapes ------------------------------------------------------


def test_type_and_term_carriers(U0, U1, US):
    # types: one iso on empty and unit, two on the two-point fiber,
    # one on the loop fiber (only the identity is invertible there)
    assert (U0.ty.n_objects, U0.ty.n_morphisms) == (3, 4)
    assert (U1.ty.n_objects, U1.ty.n_morphisms) == (4, 5)
    assert (US.ty.n_objects, US.ty.n_morphisms) == (3, 4)
    # terms: one point per fiber object; morphisms follow the stars
    assert (U0.tm.n_objects, U0.tm.n_morphisms) == (3, 5)
    assert (U1.tm.n_objects, U1.tm.n_morphisms) == (4, 7)
    for U in (U0, U1, US):
        U.ty.validate()
        U.tm.validate()
        assert check_functor(U.proj)


def test_universe_laws_with_samples(U0, one, WIg):
    swap = GroupoidMap("sw", U0.types["pair"], U0.types["pair"],
                       {"0": "1", "1": "0"},
                       {("id", "0"): ("id", "1"), ("id", "1"): ("id", "0")})
    twist = GroupoidMap(
        "twist", WIg, U0.ty,
        {"0": "pair", "1": "pair"},
        {"id0": U0.ty.id("pair"), "id1": U0.ty.id("pair"),
         "fwd": U0.iso_name("pair", "pair", swap),
         "bwd": U0.iso_name("pair", "pair", swap)})
    e0 = constant_map(one, WIg, "0", name="e0")
    results = dict(U0.laws(samples=[(e0, twist)]))
    assert all(results.values()), results
    assert "pairing_square_e0_twist" in results
    assert "reindex_strict_e0_twist" in results


def test_extension_of_twisted_family(U0, WIg):
    swap = GroupoidMap("sw", U0.types["pair"], U0.types["pair"],
                       {"0": "1", "1": "0"},
                       {("id", "0"): ("id", "1"), ("id", "1"): ("id", "0")})
    twist = GroupoidMap(
        "twist", WIg, U0.ty,
        {"0": "pair", "1": "pair"},
        {"id0": U0.ty.id("pair"), "id1": U0.ty.id("pair"),
         "fwd": U0.iso_name("pair", "pair", swap),
         "bwd": U0.iso_name("pair", "pair", swap)})
    assert check_functor(twist)
    ext = U0.extend(twist)
    assert ext.apex.n_objects == 4
    assert ext.apex.n_morphisms == 8
    assert check_functor(ext.proj1)
    # the total space of the twist is connected two ways around
    assert len(ext.apex.components()) == 2


def test_fiber_inclusion_is_strict(U1):
    inc = U1.fiber_inclusion("loop2")
    assert check_functor(inc)
    assert inc.is_mono()
    assert inc.obj_map == {"*": ("loop2", "*")}


def test_term_section(U0, one):
    sigma = constant_map(one, U0.ty, "pair", name="sigma")
    a = constant_map(one, U0.tm, ("pair", "0"), name="a")
    sec = U0.term_section(sigma, a)
    ext = U0.extend(sigma)
    assert sec.then(ext.proj1).same_mapping(identity_map(one))
    assert sec.then(ext.proj2).same_mapping(a)
    bad = constant_map(one, U0.tm, ("unit", "0"), name="bad")
    with pytest.raises(AssertionError):
        U0.term_section(sigma, bad)


def test_classify_finds_loop_family(U1, U0, D2, B2):
    prod = product(D2, B2)
    witness = classify(U1, prod.proj1)
    assert witness is not None
    assert witness.sigma.obj_map == {"a": "loop2", "b": "loop2"}
    assert witness.verify(prod.proj1)
    # without the loop fiber there is nothing to classify with
    assert classify(U0, prod.proj1) is None


def test_classify_discrete_fibers(U0, D2, WIg):
    witness = classify(U0, identity_map(WIg))
    assert witness is not None
    assert set(witness.sigma.obj_map.values()) == {"unit"}
    assert witness.verify(identity_map(WIg))
    prod = product(WIg, D2)
    witness2 = classify(U0, prod.proj1)
    assert witness2 is not None
    assert set(witness2.sigma.obj_map.values()) == {"pair"}
    assert witness2.verify(prod.proj1)
    # a map without morphism lifts is not the display of any family
    incl = GroupoidMap("incl", D2, WIg, {"a": "0", "b": "1"},
                       {D2.id("a"): "id0", D2.id("b"): "id1"})
    assert classify(U0, incl) is None


# -- path types ----------------------------------------------------------


def test_path_type_closure_table(pts0, pts1):
    assert pts0.closure[("pair", "0", "1")][0] == "empty"
    assert pts0.closure[("pair", "0", "0")] == ("unit", {("id", "0"): "0"})
    assert pts1.closure[("loop2", "*", "*")] == ("pair", {"e": "0", "s": "1"})


def test_path_type_laws(pts0, pts1, ptsS):
    for pts in (pts0, pts1, ptsS):
        for label, verdict in pts.laws():
            assert verdict, (pts.universe.name, label, verdict.reason)


def test_closure_error_when_fiber_missing():
    bad = ClassifierUniverse("badU", {
        "unit": discrete_groupoid(["0"], "unit"),
        "loop2": bz2("loop2"),
    })
    from pathcheck.cylinder import walking_iso_interval
    with pytest.raises(ClosureError, match="size 2"):
        PathTypeStructure(bad, walking_iso_interval())


def test_path_term_roundtrip(pts1, one):
    U = pts1.universe
    a = constant_map(one, U.tm, ("loop2", "*"), name="a")
    ty = pts1.path_type(a, a)
    assert ty.obj_map == {"*": "pair"}
    # both path terms: the unit loop and the twist loop
    for label in ("0", "1"):
        t = constant_map(one, U.tm, ("pair", label), name=f"t{label}")
        h = pts1.unpath_term(t, a, a)
        assert h.cod == pts1.P.gpd
        assert check_functor(h)
        assert pts1.path_term(h).same_mapping(t)
        # endpoints recover the given terms
        assert h.then(pts1.P.eps0).same_mapping(a)
        assert h.then(pts1.P.eps1).same_mapping(a)


def test_refl_is_constant_path_term(pts1):
    assert pts1.refl.same_mapping(pts1.P.rho.then(pts1.point))


def test_set_closure_matches_equality(ptsS):
    # over the degenerate interval every path is constant, so the path
    # type of (x, y) is inhabited exactly when x equals y
    U = ptsS.universe
    for (t, x, y), (tyname, _bij) in ptsS.closure.items():
        expected = "unit" if x == y else "empty"
        assert tyname == expected
