import pytest

from pathcheck.groupoids import (GroupoidMap, bz2, discrete_groupoid,
                                 identity_map, terminal_groupoid,
                                 walking_iso_groupoid)
from pathcheck.limits import to_terminal
from pathcheck.cylinder import trivial_interval, walking_iso_interval
from pathcheck.universe import (PathTypeStructure,
                                standard_groupoid_universe,
                                standard_set_universe)
from pathcheck.fibration import classifier_lift


@pytest.fixture(scope="session")
def WI():
    return walking_iso_interval()


@pytest.fixture(scope="session")
def TI():
    return trivial_interval()


@pytest.fixture(scope="session")
def one():
    return terminal_groupoid()


@pytest.fixture(scope="session")
def D2():
    return discrete_groupoid(["a", "b"], name="D2")


@pytest.fixture(scope="session")
def B2():
    return bz2()


@pytest.fixture(scope="session")
def WIg():
    return walking_iso_groupoid()


@pytest.fixture(scope="session")
def U0():
    return standard_groupoid_universe("gpds")


@pytest.fixture(scope="session")
def U1():
    return standard_groupoid_universe("gpds1", with_loop=True)


@pytest.fixture(scope="session")
def US():
    return standard_set_universe("sets")


@pytest.fixture(scope="session")
def pts0(U0, WI):
    return PathTypeStructure(U0, WI)


@pytest.fixture(scope="session")
def pts1(U1, WI):
    return PathTypeStructure(U1, WI)


@pytest.fixture(scope="session")
def ptsS(US, TI):
    return PathTypeStructure(US, TI)


@pytest.fixture(scope="session")
def L0(U0, WI):
    return classifier_lift(U0, WI)


@pytest.fixture(scope="session")
def L1(U1, WI):
    return classifier_lift(U1, WI)


@pytest.fixture(scope="session")
def LS(US, TI):
    return classifier_lift(US, TI)


@pytest.fixture(scope="session")
def corpus_maps(one, D2, B2, WIg):
    """Functors between groupoids of at most 4 objects, with the
    expected isofibration verdict worked out by hand: a map fails just
    if some codomain morphism has a source-lift but no morphism lift."""
    W = WIg
    maps = [
        # codomain morphisms starting at a hit object have no lift
        ("end0", GroupoidMap("end0", one, W, {"*": "0"},
                             {"id": "id0"}), False),
        ("end1", GroupoidMap("end1", one, W, {"*": "1"},
                             {"id": "id1"}), False),
        ("incl", GroupoidMap("incl", D2, W, {"a": "0", "b": "1"},
                             {D2.id("a"): "id0",
                              D2.id("b"): "id1"}), False),
        ("const_b", GroupoidMap("const_b", one, B2, {"*": "*"},
                                {"id": "e"}), False),
        # everything reachable lifts
        ("collapse_w", to_terminal(W), True),
        ("collapse_b", to_terminal(B2), True),
        ("collapse_d", to_terminal(D2), True),
        ("id_w", identity_map(W), True),
        ("flip", GroupoidMap("flip", W, W, {"0": "1", "1": "0"},
                             {"id0": "id1", "id1": "id0",
                              "fwd": "bwd", "bwd": "fwd"}), True),
        ("swap_d", GroupoidMap("swap_d", D2, D2, {"a": "b", "b": "a"},
                               {D2.id("a"): D2.id("b"),
                                D2.id("b"): D2.id("a")}), True),
        ("const_w", GroupoidMap("const_w", W, D2,
                                {"0": "a", "1": "a"},
                                {m: D2.id("a") for m in W.morphisms}),
         True),
    ]
    return maps
