import pytest

from pathcheck.enumeration import enumerate_maps
from pathcheck.groupoids import (ModelError, check_functor, constant_map,
                                 identity_map)
from pathcheck.identity import (IdIntroStructure, MotiveContext,
                                brute_force_eliminators, check_elim_laws,
                                check_substitution_laws,
                                check_substitution_stability,
                                eliminator_via_section, j_eliminator,
                                motive_context, restrict_motive_context)


@pytest.fixture(scope="module")
def main_instance(pts0, U0, U1, L1, WIg):
    """One motive context over the walking iso with a loop-typed motive,
    the smallest instance whose display structure can be perturbed."""
    family = constant_map(WIg, U0.ty, "unit", name="unitA")
    mc = motive_context(pts0, family)
    motive = constant_map(mc.gpd, U1.ty, "loop2", name="loopC")
    refl_case = constant_map(mc.ext1.apex, U1.tm, ("loop2", "*"), name="c")
    E = j_eliminator(mc, U1, L1, motive, refl_case)
    return mc, motive, refl_case, E


# -- formation and introduction ------------------------------------------


def test_intro_laws(pts0, U0, B2, one):
    intro = IdIntroStructure(pts0)
    a_term = constant_map(B2, U0.tm, ("pair", "0"), name="a0")
    f_sub = constant_map(one, B2, "*", name="pickB")
    results = dict(intro.laws([(f_sub, a_term)]))
    assert set(results) == {"refl_type", "refl_typed_a0",
                            "id_type_stable_pickB_a0",
                            "refl_stable_pickB_a0"}
    assert all(results.values()), results
    assert intro.id_type(a_term, a_term).obj_map == {"*": "unit"}


# -- motive contexts -----------------------------------------------------


def test_motive_context_laws_everywhere(pts0, U0, one, D2, B2, WIg):
    checked = 0
    for Gamma in (one, D2, WIg, B2):
        for family in enumerate_maps(Gamma, U0.ty):
            mc = motive_context(pts0, family)
            for label, verdict in mc.laws():
                assert verdict, (Gamma.name, family.name, label,
                                 verdict.reason)
            checked += 1
    assert checked == 20


def test_motive_context_shape(main_instance):
    mc, _motive, _refl_case, _E = main_instance
    assert mc.gpd.n_objects == 2
    assert mc.gpd.n_morphisms == 4
    # the two points are the refl instance and the twisted pair
    assert check_functor(mc.display)
    assert check_functor(mc.refl_map)
    assert mc.refl_map.then(mc.zero_end) \
        .same_mapping(identity_map(mc.ext1.apex))


def test_path_decoding(main_instance, U0):
    mc, _motive, _refl_case, _E = main_instance
    kinds = sorted(mc.path_of(m)[3] for m in mc.gpd.objects)
    # over the one-point fiber both context points carry the unique path
    assert kinds == [("id", "0"), ("id", "0")]
    for m in mc.gpd.objects:
        con = mc.connector(m)
        assert con in mc.gpd.morphisms


# -- the eliminator ------------------------------------------------------


def test_eliminator_laws(main_instance):
    _mc, _motive, _refl_case, E = main_instance
    for label, verdict in E.laws():
        assert verdict, (label, verdict.reason)


def test_eliminator_is_the_unique_candidate(main_instance, U1):
    mc, motive, refl_case, E = main_instance
    found = brute_force_eliminators(mc, U1, motive, refl_case)
    assert len(found) == 1
    assert found[0].same_mapping(E.eliminator)


def test_section_route_agrees(main_instance):
    _mc, _motive, _refl_case, E = main_instance
    assert eliminator_via_section(E).same_mapping(E.eliminator)


def test_perturbed_display_breaks_refl_triangle(main_instance, U1, L1):
    mc, motive, refl_case, E = main_instance
    Ep = j_eliminator(mc, U1, L1, motive, refl_case, perturb=True)
    results = dict(Ep.laws())
    assert results["eliminator_functor"]
    assert results["eliminator_type"]
    assert not results["refl_case_recovered"]
    assert not Ep.eliminator.same_mapping(E.eliminator)


def test_mistyped_refl_case_rejected(main_instance, U1, L1):
    mc, motive, _refl_case, _E = main_instance
    wrong = constant_map(mc.ext1.apex, U1.tm, ("unit", "0"), name="w")
    with pytest.raises(ModelError, match="does not have the motive"):
        j_eliminator(mc, U1, L1, motive, wrong)


# -- substitution --------------------------------------------------------


def test_restriction_commutes_with_display(main_instance, pts0, one, WIg):
    mc, _motive, _refl_case, _E = main_instance
    e0 = constant_map(one, WIg, "0", name="e0")
    sub, q1, q2, q3 = restrict_motive_context(mc, e0)
    assert sub.family.dom == one
    # the comparison maps commute with the displays, level by level
    assert q1.then(mc.ext1.proj1).same_mapping(sub.ext1.proj1.then(e0))
    assert q2.then(mc.ext2.proj1).same_mapping(sub.ext2.proj1.then(q1))
    assert q3.then(mc.ext3.proj1).same_mapping(sub.ext3.proj1.then(q2))
    assert q3.then(mc.display).same_mapping(sub.display.then(e0))
    # restriction respects the refl section
    assert q1.then(mc.refl_map).same_mapping(sub.refl_map.then(q3))


def test_substitution_stability_along_every_map(main_instance, L1,
                                                one, D2, B2, WIg):
    _mc, _motive, _refl_case, E = main_instance
    checked = 0
    for Delta in (one, D2, WIg, B2):
        for f in enumerate_maps(Delta, WIg):
            verdict = check_substitution_stability(E, L1, f)
            assert verdict, (Delta.name, f.name, verdict.reason)
            checked += 1
    assert checked == 12


def test_elim_laws_enumerated(pts0, U1, L1, one, D2, B2, WIg):
    expected = {one: 21, WIg: 106, B2: 38, D2: 441}
    for Gamma, count in expected.items():
        verdict = check_elim_laws(pts0, U1, L1, [Gamma])
        assert verdict, verdict.reason
        assert verdict.reason == (f"eliminator laws hold on {count} "
                                  f"enumerated instances")


def test_elim_laws_set_model(ptsS, US, LS, one, D2):
    verdict = check_elim_laws(ptsS, US, LS, [one, D2])
    assert verdict, verdict.reason
    assert "182 enumerated instances" in verdict.reason


def test_substitution_laws_enumerated(pts0, U1, L1, one, B2):
    verdict = check_substitution_laws(pts0, U1, L1, [one, B2])
    assert verdict, verdict.reason
    assert "156 (instance, map) pairs" in verdict.reason
