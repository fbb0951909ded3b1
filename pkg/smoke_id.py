import time

from pathcheck.groupoids import (GroupoidMap, bz2, constant_map,
                                 discrete_groupoid, identity_map,
                                 terminal_groupoid, walking_iso_groupoid)
from pathcheck.cylinder import trivial_interval, walking_iso_interval
from pathcheck.enumeration import enumerate_maps
from pathcheck.fibration import classifier_lift
from pathcheck.identity import (IdIntroStructure, brute_force_eliminators,
                                check_elim_laws,
                                check_substitution_stability,
                                eliminator_via_section, j_eliminator,
                                motive_context)
from pathcheck.universe import (PathTypeStructure,
                                standard_groupoid_universe,
                                standard_set_universe)

t0 = time.time()
WI = walking_iso_interval()
TRIV = trivial_interval()
one = terminal_groupoid()
D2 = discrete_groupoid(["a", "b"], name="D2")
B = bz2()
ctx = walking_iso_groupoid()

U0 = standard_groupoid_universe("gpds")
U1 = standard_groupoid_universe("gpds1", with_loop=True)
US = standard_set_universe("sets")
pts0 = PathTypeStructure(U0, WI)
ptsS = PathTypeStructure(US, TRIV)
L0 = classifier_lift(U0, WI)
L1 = classifier_lift(U1, WI)

# intro structure
intro = IdIntroStructure(pts0)
a_term = constant_map(B, U0.tm, ("pair", "0"), name="a0")
f_sub = constant_map(one, B, "*", name="pickB")
for lbl, v in intro.laws([(f_sub, a_term)]):
    assert v, (lbl, v.reason)
print("intro laws ok")

# motive contexts and their contractions
for Gamma in (one, D2, ctx, B):
    for family in enumerate_maps(Gamma, U0.ty):
        mc = motive_context(pts0, family)
        for lbl, v in mc.laws():
            assert v, (Gamma.name, family.name, lbl, v.reason)
print(f"motive context laws ok over 4 contexts ({time.time()-t0:.2f}s)")

# the recorded main instance
family = constant_map(ctx, U0.ty, "unit", name="unitA")
mc = motive_context(pts0, family)
print("motive context size:", mc.gpd.n_objects, mc.gpd.n_morphisms)
motive = constant_map(mc.gpd, U1.ty, "loop2", name="loopC")
refl_case = constant_map(mc.ext1.apex, U1.tm, ("loop2", "*"), name="c")
E = j_eliminator(mc, U1, L1, motive, refl_case)
for lbl, v in E.laws():
    print("  law", lbl, v.ok)
    assert v, (lbl, v.reason)

# brute force membership
found = brute_force_eliminators(mc, U1, motive, refl_case)
print("brute force eliminators:", len(found))
assert any(E.eliminator.same_mapping(c) for c in found)

# section route agreement
alt = eliminator_via_section(E)
assert alt.same_mapping(E.eliminator)
print("section route agrees with the fill route")

# perturbed display structure: constant-path triangle must fail
Ep = j_eliminator(mc, U1, L1, motive, refl_case, perturb=True)
lawsp = dict(Ep.laws())
print("perturbed: type law", lawsp["eliminator_type"].ok,
      "| refl law", lawsp["refl_case_recovered"].ok)
assert lawsp["eliminator_type"]
assert not lawsp["refl_case_recovered"]
assert not Ep.eliminator.same_mapping(E.eliminator)

# substitution stability along every context map into ctx, and more
t1 = time.time()
n_sub = 0
for Delta in (one, D2, ctx, B):
    for f in enumerate_maps(Delta, ctx):
        v = check_substitution_stability(E, L1, f)
        assert v, (Delta.name, f.name, v.reason)
        n_sub += 1
print(f"substitution stability over {n_sub} maps ({time.time()-t1:.2f}s)")

# eliminator laws over everything enumerable, per context
for ctxs in ([one], [ctx], [B], [D2]):
    t2 = time.time()
    v = check_elim_laws(pts0, U1, L1, ctxs)
    assert v, v.reason
    print(f"check_elim_laws {ctxs[0].name}: {v.reason} "
          f"({time.time()-t2:.2f}s)")

# set model sanity: eliminators over the discrete corpus
t3 = time.time()
LS = classifier_lift(US, TRIV)
v = check_elim_laws(ptsS, US, LS, [one, D2])
assert v, v.reason
print(f"set-model elim laws: {v.reason} ({time.time()-t3:.2f}s)")

print(f"all identity smoke checks passed ({time.time()-t0:.2f}s)")
