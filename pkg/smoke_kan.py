import time

t0 = time.time()

from pathcheck.groupoids import GroupoidMap, bz2, discrete_groupoid, walking_iso_groupoid
from pathcheck.cylinder import trivial_interval, walking_iso_interval
from pathcheck.enumeration import enumerate_maps
from pathcheck.fibration import classifier_lift
from pathcheck.universe import (path_types_from_closure,
                                standard_groupoid_universe,
                                standard_set_universe)
from pathcheck.kan import (KanStructure, adjunction_transpose_check, boundary,
                           brute_force_box_fillers, check_kan,
                           check_kan_enumerative, check_kan_families,
                           check_path_power_identity, check_weak_orthogonality,
                           cube, cube_coords, cube_obj, enumerate_box_problems,
                           interval_boundary, interval_end,
                           leibniz_identities, open_box, parameter_box,
                           pushout_product, pullback_hom, subobject_equal)

WI = walking_iso_interval()
TI = trivial_interval()

# -- cubes and shapes ---------------------------------------------------
c2 = cube(WI, 2)
assert c2.n_objects == 4 and c2.n_morphisms == 16
c3 = cube(WI, 3)
assert c3.n_objects == 8 and c3.n_morphisms == 64
for c in c2.objects:
    assert cube_obj(WI, 2, cube_coords(2, c)) == c
assert cube(TI, 3).n_objects == 1

bd1 = boundary(WI, 1)
assert bd1.carrier.n_objects == 2 and bd1.carrier.n_morphisms == 2
assert not bd1.is_full()
bd2 = boundary(WI, 2)
assert bd2.is_full(), "closure fills the square boundary"
bx1 = open_box(WI, 1)
assert bx1.carrier.n_objects == 1 and not bx1.is_full()
assert open_box(WI, 2).is_full()
assert open_box(TI, 1).is_full()
assert not interval_boundary(WI).is_full()
assert interval_boundary(TI).is_full()
print("cube shapes ok")

for iv, label in ((WI, "walking iso"), (TI, "trivial")):
    for name, v in leibniz_identities(iv, n_max=2):
        assert v, f"{label}: {name} failed"
print("shape identities ok for both intervals")

# -- path power identity ------------------------------------------------
for A in (bz2(), discrete_groupoid(["a", "b"], name="D2"),
          walking_iso_groupoid()):
    v = check_path_power_identity(WI, A)
    assert v, f"path power identity failed on {A.name}: {v.reason}"
v = check_path_power_identity(TI, discrete_groupoid(["a", "b"], name="D2"))
assert v, f"trivial-interval path power identity failed: {v.reason}"
print("path power identity ok")

# -- universes ----------------------------------------------------------
U0 = standard_groupoid_universe("gpds")
U1 = standard_groupoid_universe("gpds1", with_loop=True)
US = standard_set_universe("sets")
pts0 = path_types_from_closure(U0, WI)
pts1 = path_types_from_closure(U1, WI)
ptsS = path_types_from_closure(US, TI)
L0 = classifier_lift(U0, WI)
L1 = classifier_lift(U1, WI)
LS = classifier_lift(US, TI)

# -- weak orthogonality oracle agreement --------------------------------
Cn1, box1 = parameter_box(WI, None, 1)
v = check_weak_orthogonality(box1.inclusion, U1.proj)
assert v, f"box vs display: {v.reason}"
one = WI.one
d1 = GroupoidMap("d1", one, WI.gpd, {"*": "1"}, {"id": WI.gpd.id("1")},
                 validate=False)
v = check_weak_orthogonality(box1.inclusion, d1)
assert not v, "endpoint inclusion must fail box lifting"
print("orthogonality oracle ok", f"({time.time() - t0:.2f}s)")

# -- adjunction transposition ------------------------------------------
triples = [
    (interval_boundary(WI), interval_end(WI, 0), U0.proj),
    (interval_end(WI, 0), interval_end(WI, 0), U1.proj),
    (interval_boundary(WI), interval_boundary(WI), U0.proj),
    (interval_end(WI, 0), interval_end(WI, 1), d1),
    (interval_boundary(WI), interval_end(WI, 0), d1),
]
for a, b, c in triples:
    v = adjunction_transpose_check(a, b, c)
    assert v, f"transposition mismatch on ({a.name}, {b.name}, {c.name}): {v.reason}"
    print(" ", a.name, b.name, c.name, "->", v.reason)
print("adjunction transposition ok", f"({time.time() - t0:.2f}s)")

# -- constructive filling ----------------------------------------------
kan0 = KanStructure(pts0, L0)
kan1 = KanStructure(pts1, L1)
kanS = KanStructure(ptsS, LS)

# base case equals the cylinder lift on a sample problem
probs = enumerate_box_problems(U1.proj, WI, 1)
print("1-box problems for gpds1 display:", len(probs))
y, x = probs[0]
h = kan1.fill(1, y, x)
h2 = kan1.fill(1, y, x)
assert h.same_mapping(h2), "filling must be deterministic"

t1 = time.time()
for kan, label in ((kan0, "gpds"), (kan1, "gpds1"), (kanS, "sets")):
    v = check_kan(kan, N=3, exhaustive_to=2)
    assert v, f"{label}: {v.reason}"
    print(f"check_kan N=3 [{label}]:", v.reason, f"({time.time() - t1:.2f}s)")

# parameterized contexts
t1 = time.time()
D2 = discrete_groupoid(["a", "b"], name="D2")
v = check_kan(kan1, N=2, parameters=[WI.one, D2], exhaustive_to=1)
assert v, v.reason
print("parameterized check_kan:", v.reason, f"({time.time() - t1:.2f}s)")

# displays of classified families
t1 = time.time()
WIg = walking_iso_groupoid()
contexts = [WI.one, D2, bz2(), WIg]
v = check_kan_families(kan1, contexts, N=3, exhaustive_to=2)
assert v, v.reason
print("check_kan_families N=3 [gpds1]:", v.reason,
      f"({time.time() - t1:.2f}s)")

# negative control: an endpoint inclusion is not Kan
v = check_kan_enumerative(d1, WI, N=1)
assert not v, "endpoint inclusion should fail"
print("enumerative negative control:", v.reason)
v = check_kan_enumerative(U1.proj, WI, N=2)
assert v, v.reason
print("enumerative positive control:", v.reason)

print("total", f"{time.time() - t0:.2f}s")
