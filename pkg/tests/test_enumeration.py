import itertools

import pytest
from hypothesis import given, settings, strategies as st

from pathcheck.enumeration import (FunctorGroupoid, SizeGuard, SizeGuardError,
                                   brute_force_maps, count_maps,
                                   enumerate_maps, functor_groupoid,
                                   groupoids_isomorphic,
                                   natural_transformations)
from pathcheck.groupoids import (GroupoidMap, bz2, check_functor,
                                 discrete_groupoid, identity_map,
                                 terminal_groupoid, walking_iso_groupoid)


def raw_functor_count(A, B):
    """Independent oracle: filter every assignment of objects and
    morphisms through the functor laws."""
    count = 0
    objs, mors = list(A.objects), list(A.morphisms)
    for ochoice in itertools.product(B.objects, repeat=len(objs)):
        omap = dict(zip(objs, ochoice))
        for mchoice in itertools.product(B.morphisms, repeat=len(mors)):
            mmap = dict(zip(mors, mchoice))
            cand = GroupoidMap("cand", A, B, omap, mmap, validate=False)
            if check_functor(cand):
                count += 1
    return count


@pytest.mark.parametrize("pair", [
    ("B2", "B2"), ("B2", "WIg"), ("WIg", "B2"),
    ("WIg", "WIg"), ("D2", "WIg"), ("one", "B2"),
])
def test_count_maps_against_raw_filter(request, pair):
    A = request.getfixturevalue(pair[0])
    B = request.getfixturevalue(pair[1])
    expected = raw_functor_count(A, B)
    assert count_maps(A, B) == expected
    listed = enumerate_maps(A, B)
    assert len(listed) == expected
    assert len(brute_force_maps(A, B)) == expected
    assert all(check_functor(f) for f in listed)


def test_frozen_counts(one, D2, B2, WIg):
    assert count_maps(B2, B2) == 2
    assert count_maps(B2, WIg) == 2
    assert count_maps(WIg, WIg) == 4
    assert count_maps(D2, WIg) == 4
    assert count_maps(one, WIg) == 2


def test_enumeration_is_deterministic(WIg):
    first = enumerate_maps(WIg, WIg)
    second = enumerate_maps(WIg, WIg)
    assert [f.name for f in first] == [f.name for f in second]
    assert all(a.same_mapping(b) for a, b in zip(first, second))
    mappings = [tuple(sorted(f.obj_map.items())) for f in first]
    assert len(set(mappings)) == len(mappings)


_SOURCES = {
    "point": terminal_groupoid("h1"),
    "two_points": discrete_groupoid(["a", "b"], name="hD2"),
    "one_loop": bz2("hB2"),
    "iso_pair": walking_iso_groupoid("hWI"),
}


@settings(max_examples=25, deadline=None)
@given(n=st.integers(0, 4), source=st.sampled_from(sorted(_SOURCES)))
def test_discrete_target_formula(n, source):
    # a map into a discrete groupoid factors through the components
    A = _SOURCES[source]
    target = discrete_groupoid([f"t{i}" for i in range(n)])
    assert count_maps(A, target) == n ** len(A.components())


def test_size_guard_on_domain(D2, WIg):
    tight = SizeGuard(max_objects=1, max_morphisms=1)
    with pytest.raises(SizeGuardError) as err:
        enumerate_maps(D2, WIg, guard=tight)
    assert err.value.required is not None
    assert err.value.allowed is not None
    assert err.value.required > err.value.allowed


def test_size_guard_on_results(one, WIg):
    tiny = SizeGuard(max_results=1)
    with pytest.raises(SizeGuardError):
        enumerate_maps(walking_iso_groupoid("fresh_wi"), walking_iso_groupoid("fresh_wi2"),
                       guard=tiny)


def test_brute_force_cost_bound(WIg):
    with pytest.raises(SizeGuardError):
        brute_force_maps(WIg, WIg, limit=10)


def test_isomorphism_search(WIg, D2, B2):
    found = groupoids_isomorphic(WIg, walking_iso_groupoid("other"))
    assert found is not None and found.is_iso()
    assert groupoids_isomorphic(WIg, D2) is None
    assert groupoids_isomorphic(B2, bz2("B")) is not None


def test_natural_transformations_oracle(one, B2, WIg):
    e0 = GroupoidMap("e0", one, WIg, {"*": "0"}, {"id": "id0"})
    e1 = GroupoidMap("e1", one, WIg, {"*": "1"}, {"id": "id1"})
    assert natural_transformations(one, WIg, e0, e1) == [{"*": "fwd"}]
    assert natural_transformations(one, WIg, e1, e0) == [{"*": "bwd"}]
    idb = identity_map(B2)
    # BZ2 is abelian so both loops are natural from id to id
    comps = natural_transformations(B2, B2, idb, idb)
    assert sorted(c["*"] for c in comps) == ["e", "s"]


def test_functor_groupoid_shapes(one, WIg):
    exp = functor_groupoid(one, WIg)
    assert exp.gpd.n_objects == 2
    assert exp.gpd.n_morphisms == 4
    assert exp.gpd.is_codiscrete()
    exp.gpd.validate()
    square = functor_groupoid(WIg, WIg)
    assert square.gpd.n_objects == 4
    assert square.gpd.n_morphisms == 16
    assert square.gpd.is_codiscrete()
    square.gpd.validate()


def test_functor_groupoid_lookup(one, WIg):
    exp = functor_groupoid(one, WIg)
    e0 = GroupoidMap("e0", one, WIg, {"*": "0"}, {"id": "id0"})
    name = exp.name_of(e0)
    assert exp.functors[name].same_mapping(e0)
    mname = exp.mor_name_of(name, name, {"*": "id0"})
    assert exp.gpd.src(mname) == name and exp.gpd.tgt(mname) == name
    with pytest.raises(KeyError):
        exp.mor_name_of(name, name, {"*": "fwd"})
