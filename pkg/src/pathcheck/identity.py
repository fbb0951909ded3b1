"""Path induction over classified families.

The motive context of a family sigma: Gamma -> Ty is built by three
chosen context extensions: a point of the family, a second point, and a
path between them.  Its points decode to vertical term morphisms, which
makes the whole context contractible onto the subcontext of constant
paths: the contraction homotopy joins every point to its constant-path
instance by the morphism its own path decodes to.  The eliminator for a
motive over that context lifts the contraction through the display of
the motive, starting from the section given by the constant-path case,
and reads off the far end.  Both defining triangles then hold as exact
equalities of finite maps, and the construction commutes with
substitution because every choice involved is made pointwise.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .groupoids import (FinGroupoid, GroupoidMap, ModelError, Verdict,
                        check_functor, identity_map)
from .cylinder import CylinderStructure, IntervalObject, pathobject
from .enumeration import DEFAULT_GUARD, SizeGuard, enumerate_maps
from .fibration import (LiftingStructure, perturb_lift, pullback_lift,
                        section_from_lifts)
from .names import sort_names
from .universe import ClassifierUniverse, PathTypeStructure


class IdIntroStructure:
    """Identity types and refl at term level, read off the path data."""

    __slots__ = ("pts",)

    def __init__(self, pts: PathTypeStructure):
        self.pts = pts

    def id_type(self, a: GroupoidMap, b: GroupoidMap) -> GroupoidMap:
        """The identity type of two terms of one type."""
        return self.pts.path_type(a, b)

    def refl_term(self, a: GroupoidMap) -> GroupoidMap:
        """The reflexivity term at a."""
        return a.then(self.pts.refl)

    def laws(self, samples=()):
        """Typing of refl and stability of both formers under the given
        context maps; samples are pairs (f, a) with f: Delta -> Gamma
        and a: Gamma -> Tm."""
        pts, U = self.pts, self.pts.universe
        diag = pts.pairs.mediate(identity_map(U.tm), identity_map(U.tm),
                                 name="diag")
        out = [("refl_type", Verdict(
            pts.refl.then(U.proj).same_mapping(diag.then(pts.path_ty))))]
        for f, a in samples:
            ra = self.refl_term(a)
            out.append((f"refl_typed_{a.name}", Verdict(
                ra.then(U.proj).same_mapping(self.id_type(a, a)))))
            out.append((f"id_type_stable_{f.name}_{a.name}", Verdict(
                f.then(self.id_type(a, a)).same_mapping(
                    self.id_type(f.then(a), f.then(a))))))
            out.append((f"refl_stable_{f.name}_{a.name}", Verdict(
                f.then(ra).same_mapping(self.refl_term(f.then(a))))))
        return out


class MotiveContext:
    """The context Gamma, a point, a second point, a path between them,
    together with its constant-path section and contraction."""

    __slots__ = ("pts", "family", "ext1", "ext2", "ext3", "gpd",
                 "path_family", "display", "zero_end", "one_end",
                 "refl_map", "_contraction")

    def __init__(self, pts: PathTypeStructure, family: GroupoidMap):
        U = pts.universe
        assert family.cod == U.ty, "family must land in the type groupoid"
        self.pts = pts
        self.family = family
        self.ext1 = U.extend(family)
        d1, x_var = self.ext1.proj1, self.ext1.proj2
        self.ext2 = U.extend(d1.then(family))
        d2, y_var = self.ext2.proj1, self.ext2.proj2
        self.path_family = pts.path_type(d2.then(x_var), y_var)
        self.ext3 = U.extend(self.path_family)
        d3 = self.ext3.proj1
        self.gpd = self.ext3.apex
        self.display = d3.then(d2).then(d1)
        self.zero_end = d3.then(d2)
        self.one_end = self.ext1.mediate(
            self.zero_end.then(d1), d3.then(y_var), name="one_end")
        diag = self.ext2.mediate(identity_map(self.ext1.apex), x_var,
                                 name="diag")
        self.refl_map = self.ext3.mediate(
            diag, x_var.then(pts.refl), name="refl_inst")
        self._contraction = None

    # -- decoding --------------------------------------------------------

    def path_of(self, m_obj):
        """The fiber morphism x -> y a point of the context encodes."""
        ((gamma, (t, x)), (_t, y)), (tp, ppt) = m_obj
        tyname, bij = self.pts.closure[(t, x, y)]
        assert tyname == tp, "path point is not in the closure fiber"
        for w, ob in bij.items():
            if ob == ppt:
                return t, x, y, w
        raise ModelError(f"path point {ppt!r} not hit by the closure "
                         f"bijection at {(t, x, y)!r}")

    def connector(self, m_obj):
        """The morphism of the context from the constant-path instance
        at the 0-end to the given point; identity on refl instances."""
        U = self.pts.universe
        ((gamma, xt), _yt), _pt = m_obj
        t, x, y, w = self.path_of(m_obj)
        F = U.types[t]
        u_tm = (U.ty.id(t), w)
        pair_mor = (U.tm.id(xt), u_tm)
        phi = self.pts.path_ty.mor_map[pair_mor]
        t_rr, bij_xx = self.pts.closure[(t, x, x)]
        refl_pt = bij_xx[F.id(x)]
        carried = U.isos[phi].obj_map[refl_pt]
        t_xy, bij_xy = self.pts.closure[(t, x, y)]
        assert carried == bij_xy[w], "closure transport out of step"
        gamma_id = self.family.dom.id(gamma)
        return (((gamma_id, U.tm.id(xt)), u_tm),
                (phi, U.types[t_xy].id(carried)))

    # -- the contraction homotopy ----------------------------------------

    def contraction(self) -> GroupoidMap:
        """The homotopy M x I -> M from the constant-path retraction to
        the identity, with the connector as the sweep at the 1-end."""
        if self._contraction is not None:
            return self._contraction
        I = self.pts.interval
        M = self.gpd
        ret = self.zero_end.then(self.refl_map)
        cyl = CylinderStructure(I).cylinder(M)
        edge = {}
        for m in M.objects:
            con = self.connector(m) if I.i0 != I.i1 else None
            for i in I.gpd.objects:
                if i == I.i1 and con is not None:
                    edge[(m, i)] = con
                else:
                    edge[(m, i)] = M.id(ret.obj_map[m])
        obj_map = {(m, i): M.tgt(e) for (m, i), e in edge.items()}
        mor_map = {}
        for (u, n) in cyl.gpd.morphisms:
            m, m2 = M.src(u), M.tgt(u)
            i, j = I.gpd.src(n), I.gpd.tgt(n)
            mor_map[(u, n)] = M.then(
                M.then(M.inv(edge[(m, i)]), ret.mor_map[u]),
                edge[(m2, j)])
        self._contraction = GroupoidMap(
            f"contract({M.name})", cyl.gpd, M, obj_map, mor_map,
            validate=False)
        return self._contraction

    def laws(self):
        """The contraction is a functor, restricts to the constant-path
        retraction on the 0-end and to the identity on the 1-end, and
        fixes the refl instances; refl_map is a section shape."""
        I = self.pts.interval
        M = self.gpd
        cyls = CylinderStructure(I)
        H = self.contraction()
        d0, d1 = cyls.end_inclusion(M, 0), cyls.end_inclusion(M, 1)
        ret = self.zero_end.then(self.refl_map)
        refl_cyl = cyls.functorial(self.refl_map)
        out = [
            ("contraction_functor", check_functor(H)),
            ("zero_end_retracts",
             Verdict(d0.then(H).same_mapping(ret))),
            ("one_end_identity",
             Verdict(d1.then(H).same_mapping(identity_map(M)))),
            ("refl_instances_fixed",
             Verdict(refl_cyl.then(H).same_mapping(
                 cyls.proj(self.ext1.apex).then(self.refl_map)))),
            ("refl_then_zero_end",
             Verdict(self.refl_map.then(self.zero_end).same_mapping(
                 identity_map(self.ext1.apex)))),
            ("refl_then_one_end",
             Verdict(self.refl_map.then(self.one_end).same_mapping(
                 identity_map(self.ext1.apex)))),
        ]
        return out


def motive_context(pts: PathTypeStructure,
                   family: GroupoidMap) -> MotiveContext:
    return MotiveContext(pts, family)


class IdElimStructure:
    """An eliminator for one motive over a motive context: the section
    of the motive display obtained by lifting the contraction, and the
    term it reads off."""

    __slots__ = ("mc", "target", "motive", "refl_case", "ext",
                 "motive_lift", "homotopy", "filler", "section",
                 "eliminator")

    def __init__(self, mc, target, motive, refl_case, ext, motive_lift,
                 homotopy, filler, section, eliminator):
        self.mc = mc
        self.target = target
        self.motive = motive
        self.refl_case = refl_case
        self.ext = ext
        self.motive_lift = motive_lift
        self.homotopy = homotopy
        self.filler = filler
        self.section = section
        self.eliminator = eliminator

    def laws(self):
        out = [
            ("eliminator_functor", check_functor(self.eliminator)),
            ("eliminator_type", Verdict(
                self.eliminator.then(self.target.proj)
                .same_mapping(self.motive))),
            ("refl_case_recovered", Verdict(
                self.mc.refl_map.then(self.eliminator)
                .same_mapping(self.refl_case))),
            ("section_of_display", Verdict(
                self.section.then(self.ext.proj1)
                .same_mapping(identity_map(self.mc.gpd)))),
        ]
        return out


def j_eliminator(mc: MotiveContext, target: ClassifierUniverse,
                 target_lift: LiftingStructure, motive: GroupoidMap,
                 refl_case: GroupoidMap, perturb: bool = False,
                 name=None) -> IdElimStructure:
    """Build the eliminator for a motive and its constant-path case.

    motive: M -> Ty of the target universe; refl_case: Gamma.A -> Tm
    with the motive's type at the refl instances.  With perturb, the
    induced structure on the motive display is made non-normal at one
    entry first, to demonstrate that the constant-path triangle then
    fails.
    """
    assert motive.dom == mc.gpd and motive.cod == target.ty, \
        "motive must be a family over the motive context"
    if not refl_case.then(target.proj).same_mapping(
            mc.refl_map.then(motive)):
        raise ModelError("constant-path case does not have the motive "
                         "type at the refl instances")
    ext = target.extend(motive)
    lift = pullback_lift(target_lift, ext.proj1, ext.proj2, motive,
                         name=f"display_lift({motive.name})")
    if perturb:
        lift = perturb_lift(lift)
        if lift is None:
            raise ModelError("no entry of the display structure admits "
                             "a perturbation")
    start_section = ext.mediate(mc.refl_map, refl_case,
                                name="refl_section")
    g = mc.zero_end.then(start_section)
    H = mc.contraction()
    filler = lift.lift(g, H, name="elim_fill")
    d1 = CylinderStructure(mc.pts.interval).end_inclusion(mc.gpd, 1)
    section = d1.then(filler)
    eliminator = section.then(ext.proj2)
    eliminator = GroupoidMap(name or f"elim({motive.name})",
                             mc.gpd, target.tm, eliminator.obj_map,
                             eliminator.mor_map, validate=False)
    return IdElimStructure(mc, target, motive, refl_case, ext, lift,
                           H, filler, section, eliminator)


def eliminator_via_section(E: IdElimStructure,
                           guard: Optional[SizeGuard] = None
                           ) -> GroupoidMap:
    """The same eliminator along the section form: pair the contraction
    as a path in the context with the constant-path case, apply the
    section of the display structure, take the 1-end, read the term.
    Exists as an independent route for cross-checking."""
    mc = E.mc
    I = mc.pts.interval
    S = section_from_lifts(E.motive_lift, guard=guard)
    chi = S.paths_base.transpose(E.homotopy, name="context_chi")
    g = mc.zero_end.then(
        E.ext.mediate(mc.refl_map, E.refl_case, name="refl_section"))
    paired = S.pairs.mediate(chi, g, name="chi_and_case")
    return (paired.then(S.section).then(S.paths_total.eps1)
            .then(E.ext.proj2))


def brute_force_eliminators(mc: MotiveContext,
                            target: ClassifierUniverse,
                            motive: GroupoidMap, refl_case: GroupoidMap,
                            guard: SizeGuard = DEFAULT_GUARD):
    """All maps with the eliminator's defining properties, found by
    enumeration alone."""
    out = []
    for cand in enumerate_maps(mc.gpd, target.tm, guard=guard):
        if not cand.then(target.proj).same_mapping(motive):
            continue
        if not mc.refl_map.then(cand).same_mapping(refl_case):
            continue
        out.append(cand)
    return out


# -- substitution stability ----------------------------------------------


def restrict_motive_context(mc: MotiveContext, f: GroupoidMap):
    """The motive context of the restricted family, with the three
    comparison maps into the original, level by level."""
    pts = mc.pts
    U = pts.universe
    assert f.cod == mc.family.dom, "map must land in the family context"
    sub = MotiveContext(pts, f.then(mc.family))
    q1 = U.pairing_map(f, mc.family)
    q2 = mc.ext2.mediate(sub.ext2.proj1.then(q1), sub.ext2.proj2,
                         name=f"q2({f.name})")
    q3 = mc.ext3.mediate(sub.ext3.proj1.then(q2), sub.ext3.proj2,
                         name=f"q3({f.name})")
    return sub, q1, q2, q3


def check_substitution_stability(E: IdElimStructure,
                                 target_lift: LiftingStructure,
                                 f: GroupoidMap) -> Verdict:
    """Restricting the eliminator along a context map equals building
    the eliminator of the restricted data."""
    sub, q1, _q2, q3 = restrict_motive_context(E.mc, f)
    restricted = j_eliminator(sub, E.target, target_lift,
                              q3.then(E.motive), q1.then(E.refl_case))
    if q3.then(E.eliminator).same_mapping(restricted.eliminator):
        return Verdict.passed(
            f"eliminator stable along {f.name!r}")
    return Verdict.failed(
        f"eliminator not stable along {f.name!r}",
        witness=(f.name, E.motive.name))


def check_elim_laws(pts: PathTypeStructure, target: ClassifierUniverse,
                    target_lift: LiftingStructure, contexts,
                    guard: SizeGuard = DEFAULT_GUARD) -> Verdict:
    """Eliminator laws over every enumerable (family, motive, case)
    with the family over a corpus context."""
    checked = 0
    for Gamma in contexts:
        for family in enumerate_maps(Gamma, pts.universe.ty,
                                     guard=guard):
            mc = MotiveContext(pts, family)
            cases = enumerate_maps(mc.ext1.apex, target.tm, guard=guard)
            for motive in enumerate_maps(mc.gpd, target.ty, guard=guard):
                want = mc.refl_map.then(motive)
                for refl_case in cases:
                    if not refl_case.then(target.proj).same_mapping(want):
                        continue
                    E = j_eliminator(mc, target, target_lift, motive,
                                     refl_case)
                    for lbl, v in E.laws():
                        if not v:
                            return Verdict.failed(
                                f"{lbl} fails over {Gamma.name!r} for "
                                f"family {family.name!r}, motive "
                                f"{motive.name!r}, case "
                                f"{refl_case.name!r}",
                                witness=(Gamma.name, family.name,
                                         motive.name, refl_case.name,
                                         lbl))
                    checked += 1
    return Verdict.passed(f"eliminator laws hold on {checked} "
                          f"enumerated instances")


def check_substitution_laws(pts: PathTypeStructure,
                            target: ClassifierUniverse,
                            target_lift: LiftingStructure, contexts,
                            guard: SizeGuard = DEFAULT_GUARD) -> Verdict:
    """Eliminators commute with every enumerable context map.

    For each elimination instance over a corpus context and each map
    from a corpus context into its base, the restricted eliminator must
    equal the eliminator of the restricted data."""
    checked = 0
    for Gamma in contexts:
        maps_in = [s for Zp in contexts
                   for s in enumerate_maps(Zp, Gamma, guard=guard)]
        if not maps_in:
            continue
        for family in enumerate_maps(Gamma, pts.universe.ty,
                                     guard=guard):
            mc = MotiveContext(pts, family)
            cases = enumerate_maps(mc.ext1.apex, target.tm, guard=guard)
            for motive in enumerate_maps(mc.gpd, target.ty, guard=guard):
                want = mc.refl_map.then(motive)
                for refl_case in cases:
                    if not refl_case.then(target.proj).same_mapping(want):
                        continue
                    E = j_eliminator(mc, target, target_lift, motive,
                                     refl_case)
                    for s in maps_in:
                        v = check_substitution_stability(E, target_lift,
                                                         s)
                        if not v:
                            return Verdict.failed(
                                f"eliminator over {Gamma.name!r} for "
                                f"family {family.name!r} is not stable "
                                f"along {s.name!r}",
                                witness=(Gamma.name, family.name,
                                         motive.name, refl_case.name,
                                         s.name))
                        checked += 1
    return Verdict.passed(f"eliminators stable on {checked} "
                          f"(instance, map) pairs")
