import pytest

from pathcheck.enumeration import enumerate_maps
from pathcheck.groupoids import (FinGroupoid, CompositionError, GroupoidMap,
                                 ModelError, constant_map, discrete_groupoid)
from pathcheck.fibration import LiftingStructure, classifier_lift
from pathcheck.universe import ClassifierUniverse, path_types_from_closure
from pathcheck.kan import (KanStructure, adjunction_transpose_check, boundary,
                           brute_force_box_fillers, check_kan,
                           check_kan_enumerative, check_kan_families,
                           check_path_power_identity, check_weak_orthogonality,
                           cube, cube_coords, cube_mor, cube_obj,
                           empty_subobject, enumerate_box_problems, face,
                           full_subobject, generated_subobject,
                           interval_boundary, interval_end, join,
                           left_merge_iso, leibniz_identities, merge_iso,
                           open_box, parameter_box, pullback_hom,
                           pushout_product, subobject_equal, verify_box_filler)


@pytest.fixture(scope="module")
def kans(pts0, pts1, ptsS, L0, L1, LS):
    return (KanStructure(pts0, L0), KanStructure(pts1, L1),
            KanStructure(ptsS, LS))


def endpoint_inclusion(WI):
    """Inclusion of the 1-end into the interval: lifts against nothing."""
    return GroupoidMap("d1", WI.one, WI.gpd, {"*": "1"},
                       {"id": WI.gpd.id("1")}, validate=False)


def mapping_data(f):
    return (tuple(sorted(f.obj_map.items(), key=repr)),
            tuple(sorted(f.mor_map.items(), key=repr)))


# -- cubes and their subshapes -------------------------------------------


def test_cube_carriers(WI, TI):
    assert (cube(WI, 0).n_objects, cube(WI, 0).n_morphisms) == (1, 1)
    assert (cube(WI, 1).n_objects, cube(WI, 1).n_morphisms) == (2, 4)
    assert (cube(WI, 2).n_objects, cube(WI, 2).n_morphisms) == (4, 16)
    assert (cube(WI, 3).n_objects, cube(WI, 3).n_morphisms) == (8, 64)
    for n in range(4):
        assert cube(TI, n).n_objects == 1


def test_cube_coordinate_roundtrip(WI):
    for n in (1, 2, 3):
        C = cube(WI, n)
        for c in C.objects:
            coords = cube_coords(n, c)
            assert len(coords) == n
            assert cube_obj(WI, n, coords) == c
        for m in C.morphisms:
            assert cube_mor(WI, n, cube_coords(n, m)) == m


def test_faces_are_codimension_one(WI):
    for k in (1, 2):
        for end in (0, 1):
            fc = face(WI, 2, k, end)
            assert fc.carrier.n_objects == 2
            assert fc.carrier.n_morphisms == 4
            e = "0" if end == 0 else "1"
            for c in fc.carrier.objects:
                assert cube_coords(2, c)[k - 1] == e
    with pytest.raises(AssertionError, match="out of range"):
        face(WI, 2, 3, 0)


def test_boundary_shapes(WI, TI):
    assert boundary(WI, 0).carrier.n_objects == 0
    bd1 = boundary(WI, 1)
    assert (bd1.carrier.n_objects, bd1.carrier.n_morphisms) == (2, 2)
    assert not bd1.is_full()
    # every zigzag between square corners is a composite of edges, so
    # closing the four edges recovers the whole square
    assert boundary(WI, 2).is_full()
    assert not interval_boundary(WI).is_full()
    assert interval_boundary(TI).is_full()
    ends = join([interval_end(WI, 0), interval_end(WI, 1)])
    assert subobject_equal(ends, interval_boundary(WI))


def test_open_box_shapes(WI, TI):
    bx = open_box(WI, 1)
    assert bx.carrier.n_objects == 1 and not bx.is_full()
    assert [cube_coords(1, c) for c in bx.carrier.objects] == [("0",)]
    assert [cube_coords(1, c)
            for c in open_box(WI, 1, retained_end=1).carrier.objects] \
        == [("1",)]
    assert open_box(WI, 2).is_full()
    assert open_box(TI, 1).is_full()
    with pytest.raises(AssertionError, match="dimension zero"):
        open_box(WI, 0)


def test_subobject_validation(WIg, WI):
    with pytest.raises(ModelError, match="not in the ambient"):
        from pathcheck.kan import Subobject
        Subobject(WIg, ["0"], ["nope"])
    # {id0, id1, fwd} is not closed under inverses and cannot be a carrier
    from pathcheck.kan import Subobject
    with pytest.raises(ModelError, match="inverse candidates"):
        Subobject(WIg, ["0", "1"], ["id0", "id1", "fwd"])
    assert full_subobject(WIg).is_full()
    assert empty_subobject(WIg).carrier.n_objects == 0
    gen = generated_subobject(WIg, [], ["fwd"])
    assert gen.is_full(), "one generator spans the walking iso"


def test_merge_isos(WI):
    m = merge_iso(WI, 1, 1)
    assert m.is_iso()
    for (a, b) in m.dom.objects:
        assert cube_coords(2, m.obj_map[(a, b)]) == \
            cube_coords(1, a) + cube_coords(1, b)
    lm = left_merge_iso(WI, 1)
    assert lm.is_iso()
    for (i, c) in lm.dom.objects:
        assert cube_coords(2, lm.obj_map[(i, c)]) == (i,) + cube_coords(1, c)


def test_shape_decompositions(WI, TI):
    expected = {"box1_is_bd0_times_end0", "box2_is_bd1_times_end0",
                "box3_is_bd2_times_end0", "bd1_is_bdI_times_bd0",
                "bd2_is_bdI_times_bd1", "bd1_times_bd1_is_bd2"}
    for interval in (WI, TI):
        results = leibniz_identities(interval, n_max=2)
        assert {name for name, _ in results} == expected
        for name, verdict in results:
            assert verdict, f"{interval.name}: {name}"


def test_pushout_product_carrier(WI):
    pp = pushout_product(interval_end(WI, 0), interval_end(WI, 1))
    # the two-point corner closes up to the full hom between its corners
    assert pp.carrier.n_objects == 3
    assert pp.carrier.n_morphisms == 9
    assert not pp.is_full()


# -- pullback-hom and the power of the path object -----------------------


def test_pullback_hom_is_a_pullback(WI, U0):
    from pathcheck.kan import power_map, restriction_map
    from pathcheck.limits import is_pullback
    bd = interval_boundary(WI)
    ph = pullback_hom(bd, U0.proj)
    assert is_pullback(ph.corner.as_square())
    assert ph.cmp.cod == ph.corner.apex
    assert ph.cmp.then(ph.corner.proj1).same_mapping(
        restriction_map(bd, U0.proj.dom))
    assert ph.cmp.then(ph.corner.proj2).same_mapping(
        power_map(bd.ambient, U0.proj))


def test_path_power_identity(WI, TI, B2, D2, WIg):
    for A in (B2, D2, WIg):
        v = check_path_power_identity(WI, A)
        assert v, f"{A.name}: {v.reason}"
        assert v.reason == ("power iso, corner comparison, and endpoint "
                            "square exact")
        alpha, mu = v.witness
        assert alpha.is_iso() and mu.is_iso()
    # with a one-point interval the corner only sees the diagonal
    v = check_path_power_identity(TI, D2)
    assert v
    _, mu = v.witness
    assert mu.is_mono() and not mu.is_iso()


# -- weak orthogonality and transposition --------------------------------


def test_weak_orthogonality_positive(WI, U1):
    _, box = parameter_box(WI, None, 1)
    v = check_weak_orthogonality(box.inclusion, U1.proj)
    assert v
    assert v.reason == "6 squares, all with diagonals"


def test_weak_orthogonality_negative(WI):
    _, box = parameter_box(WI, None, 1)
    d1 = endpoint_inclusion(WI)
    v = check_weak_orthogonality(box.inclusion, d1)
    assert not v
    u, w = v.witness
    # the witness square really has no diagonal
    diagonals = [d for d in enumerate_maps(box.inclusion.cod, d1.dom)
                 if box.inclusion.then(d).same_mapping(u)
                 and d.then(d1).same_mapping(w)]
    assert diagonals == []


def test_adjunction_transposition(WI, U0, U1):
    d1 = endpoint_inclusion(WI)
    triples = [
        (interval_boundary(WI), interval_end(WI, 0), U0.proj),
        (interval_end(WI, 0), interval_end(WI, 0), U1.proj),
        (interval_boundary(WI), interval_boundary(WI), U0.proj),
        (interval_end(WI, 0), interval_end(WI, 1), d1),
        (interval_boundary(WI), interval_end(WI, 0), d1),
    ]
    reasons = set()
    for a, b, c in triples:
        v = adjunction_transpose_check(a, b, c)
        assert v, f"({a.name}, {b.name}, {c.name}): {v.reason}"
        left, right = v.witness
        assert bool(left) == bool(right)
        reasons.add(v.reason)
    # the sample hits both outcomes, so agreement is not vacuous
    assert "both sides agree (lift)" in reasons
    assert "both sides agree (no lift)" in reasons


# -- box problems and fillers --------------------------------------------


def test_box_problem_counts(U0, U1, US, WI, TI):
    assert [len(enumerate_box_problems(U0.proj, WI, n))
            for n in (1, 2, 3)] == [5, 17, 257]
    assert [len(enumerate_box_problems(U1.proj, WI, n))
            for n in (1, 2, 3)] == [6, 25, 385]
    assert [len(enumerate_box_problems(US.proj, TI, n))
            for n in (1, 2, 3)] == [3, 3, 3]


def test_fill_deterministic_and_enumerated(kans, WI, U1):
    _, kan1, _ = kans
    for n in (1, 2):
        _, box = parameter_box(WI, None, n)
        y, x = enumerate_box_problems(U1.proj, WI, n)[0]
        h = kan1.fill(n, y, x)
        assert h.same_mapping(kan1.fill(n, y, x))
        fillers = brute_force_box_fillers(U1.proj, box, y, x)
        assert any(h.same_mapping(d) for d in fillers)
        assert verify_box_filler(U1.proj, box, y, x, h)


def test_fill_rejects_mismatched_data(kans, WI, U1, one):
    _, kan1, _ = kans
    probs = enumerate_box_problems(U1.proj, WI, 1)
    y0, x0 = probs[0]
    bad_x = constant_map(one, U1.ty, "unit", name="badx")
    with pytest.raises(CompositionError, match="cube carrier"):
        kan1.fill(1, y0, bad_x)
    bad_y = constant_map(one, U1.tm, ("unit", "0"), name="bady")
    with pytest.raises(CompositionError, match="map the box"):
        kan1.fill(1, bad_y, x0)
    mismatch = next((y, x) for y, _ in probs for _, x in probs
                    if not y.then(U1.proj).same_mapping(
                        parameter_box(WI, None, 1)[1].inclusion.then(x)))
    with pytest.raises(CompositionError, match="not a box problem"):
        kan1.fill(1, *mismatch)


def test_verify_box_filler_negatives(kans, WI, U1):
    _, kan1, _ = kans
    probs = enumerate_box_problems(U1.proj, WI, 1)
    _, box = parameter_box(WI, None, 1)
    by_base = {}
    for (y, x) in probs:
        by_base.setdefault(mapping_data(x), []).append((y, x))
    (y0, x0), (y1, _) = next(v for v in by_base.values() if len(v) > 1)[:2]
    h0 = kan1.fill(1, y0, x0)
    v = verify_box_filler(U1.proj, box, y1, x0, h0)
    assert not v and v.reason == "filler disagrees with the box data"
    by_start = {}
    for (y, x) in probs:
        by_start.setdefault(mapping_data(y), []).append((y, x))
    (ya, xa), (_, xb) = next(v for v in by_start.values() if len(v) > 1)[:2]
    ha = kan1.fill(1, ya, xa)
    v = verify_box_filler(U1.proj, box, ya, xb, ha)
    assert not v and v.reason == "filler does not sit over the base"


def test_display_filling(kans, WI, U1, B2, D2):
    _, kan1, _ = kans
    _, box = parameter_box(WI, None, 1)
    sigma = constant_map(B2, U1.ty, "loop2", name="loopB")
    ext = U1.extend(sigma)
    probs = enumerate_box_problems(ext.proj1, WI, 1)
    assert probs
    for y, x in probs:
        h = kan1.fill_display(sigma, 1, y, x)
        assert verify_box_filler(ext.proj1, box, y, x, h)
    # over a two-point base a box over one point cannot sit over the other
    tau = constant_map(D2, U1.ty, "unit", name="unitD")
    ext2 = U1.extend(tau)
    probs2 = enumerate_box_problems(ext2.proj1, WI, 1)
    mismatch = next((y, x) for y, _ in probs2 for _, x in probs2
                    if not y.then(ext2.proj1).same_mapping(
                        box.inclusion.then(x)))
    with pytest.raises(CompositionError, match="display"):
        kan1.fill_display(tau, 1, *mismatch)


# -- structure requirements ----------------------------------------------


def test_structure_rejections(pts1, L0, L1, WI, U1):
    with pytest.raises(ModelError, match="universe display"):
        KanStructure(pts1, L0)
    closure_backed = LiftingStructure(
        "fn", U1.proj, WI, lift_fn=lambda y, H, name=None: None)
    with pytest.raises(ModelError, match="entry table"):
        KanStructure(pts1, closure_backed)
    from pathcheck.fibration import perturb_lift
    perturbed = perturb_lift(L1)
    assert perturbed is not None and not perturbed.is_normal_table()
    with pytest.raises(ModelError, match="identity entries"):
        KanStructure(pts1, perturbed)


def klein_four_groupoid(name="v4"):
    elems = ["a", "b", "c", "e"]

    def mul(x, y):
        if x == "e":
            return y
        if y == "e":
            return x
        if x == y:
            return "e"
        return next(z for z in "abc" if z not in (x, y))

    return FinGroupoid(name, ["*"], {m: ("*", "*") for m in elems},
                       {(x, y): mul(x, y) for x in elems for y in elems})


def test_rejects_normal_but_non_composing_table(WI):
    # an order-3 automorphism of the Klein four-group admits transport
    # choices that fix identities yet compose wrongly; only the canonical
    # table gets through
    U = ClassifierUniverse("uv", {
        "empty": discrete_groupoid([], name="empty"),
        "unit": discrete_groupoid(["0"], name="unit"),
        "quad": discrete_groupoid(["0", "1", "2", "3"], name="quad"),
        "v4": klein_four_groupoid()})
    pts = path_types_from_closure(U, WI)
    L = classifier_lift(U, WI)
    KanStructure(pts, L)
    a = ("v4", "*")
    bent = None
    for (m, start), entry in L.table.items():
        if start != a or m == U.ty.id("v4"):
            continue
        for alt in U.tm.morphisms:
            if (alt != entry and U.tm.src(alt) == a
                    and U.proj.mor_map[alt] == m):
                table = dict(L.table)
                table[(m, start)] = alt
                cand = LiftingStructure("bent", U.proj, WI, table=table)
                if cand.is_normal_table() and not cand.is_functorial_table():
                    bent = cand
                    break
        if bent is not None:
            break
    assert bent is not None
    with pytest.raises(ModelError, match="strictly composing"):
        KanStructure(pts, bent)


# -- the filling theorems ------------------------------------------------


def test_box_filling_all_universes(kans):
    kan0, kan1, kanS = kans
    for kan, total in ((kan0, 279), (kan1, 416), (kanS, 9)):
        v = check_kan(kan, N=3, exhaustive_to=2)
        assert v
        assert v.reason == (f"filled and verified {total} box problems "
                            f"up to dimension 3")


def test_box_filling_parameterized(kans, one, D2):
    _, kan1, _ = kans
    v = check_kan(kan1, N=2, parameters=[one, D2], exhaustive_to=1)
    assert v
    assert v.reason == ("filled and verified 692 box problems up to "
                        "dimension 2")


def test_box_filling_families_over_point(kans, one):
    _, kan1, _ = kans
    v = check_kan_families(kan1, [one], N=2, exhaustive_to=1)
    assert v
    assert v.reason == ("filled and verified 15 display box problems up "
                        "to dimension 2")


def test_enumerative_controls(WI, U1):
    v = check_kan_enumerative(U1.proj, WI, N=2)
    assert v and v.reason == "31 box problems all fillable"
    d1 = endpoint_inclusion(WI)
    v = check_kan_enumerative(d1, WI, N=1)
    assert not v
    n, y, x = v.witness
    assert n == 1
    _, box = parameter_box(WI, None, 1)
    assert brute_force_box_fillers(d1, box, y, x) == []
