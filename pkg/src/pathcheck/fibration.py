"""Lifting structures against the cylinder, and connections on paths.

A lifting structure for p: E -> B fixes one lift of every base morphism
at every start point over its source.  A cylinder problem for p asks
for a diagonal filler in

        Z ---------y--------> E
        |                     |
      end 0                   p
        v                     v
      Z x I -------H--------> B

and is filled by transporting y along the recorded lifts of the base
morphisms that H assigns to the canonical interval paths out of the
0-end.  The filler built that way is always a functor and always lies
over H; the boundary condition on the 0-end is exact precisely when the
recorded lifts of identities are identities, which check_normal
isolates.  The same data can be repackaged as one section of the
comparison map from paths upstairs to pairs (path downstairs, start
point upstairs), and the two forms convert into each other without
loss.  An enumeration-only check of the filling property is provided
separately so the structures can be audited against it.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Optional, Tuple

from .groupoids import (CompositionError, FinGroupoid, GroupoidMap,
                        ModelError, Verdict, check_functor, identity_map)
from .limits import pullback
from .cylinder import (CylinderStructure, IntervalObject,
                       PathObjectFactorization, cylinder_factor,
                       pathobject, relative_pathobject)
from .enumeration import DEFAULT_GUARD, SizeGuard, enumerate_maps
from .names import namekey, sort_names
from .universe import ClassificationWitness, ClassifierUniverse


def _needed_base_morphisms(B: FinGroupoid, interval: IntervalObject):
    """Base morphisms a structure must cover for this interval.

    A collapsed interval only ever transports along identities, so the
    table can stay trivial; a genuine interval needs every morphism.
    """
    if interval.i0 == interval.i1:
        return tuple(B.id(x) for x in sort_names(B.objects))
    return tuple(sort_names(B.morphisms))


def _first_difference(f: GroupoidMap, g: GroupoidMap):
    for k in sort_names(f.obj_map):
        if f.obj_map[k] != g.obj_map.get(k):
            return ("object", k, f.obj_map[k], g.obj_map.get(k))
    for k in sort_names(f.mor_map):
        if f.mor_map[k] != g.mor_map.get(k):
            return ("morphism", k, f.mor_map[k], g.mor_map.get(k))
    return None


class LiftingStructure:
    """Chosen lifts of base morphisms, with cylinder filling.

    Either table-backed (table: (base morphism, start object) -> chosen
    morphism upstairs) or closure-backed (lift_fn fills whole problems,
    used for structures converted from a section).
    """

    __slots__ = ("name", "p", "interval", "table", "lift_fn")

    def __init__(self, name: str, p: GroupoidMap, interval: IntervalObject,
                 table: Optional[Dict] = None,
                 lift_fn: Optional[Callable] = None):
        assert (table is None) != (lift_fn is None), \
            "exactly one of table and lift_fn must be given"
        self.name = name
        self.p = p
        self.interval = interval
        self.table = table
        self.lift_fn = lift_fn
        if table is not None:
            self._check_table()

    def _check_table(self):
        E, B, p = self.p.dom, self.p.cod, self.p
        for (m, a), lifted in self.table.items():
            if E.src(lifted) != a:
                raise ModelError(
                    f"{self.name}: entry for {m!r} at {a!r} starts at "
                    f"{E.src(lifted)!r}")
            if p.mor_map[lifted] != m:
                raise ModelError(
                    f"{self.name}: entry for {m!r} at {a!r} sits over "
                    f"{p.mor_map[lifted]!r}")
        for m in _needed_base_morphisms(B, self.interval):
            x = B.src(m)
            for a in E.objects:
                if p.obj_map[a] == x and (m, a) not in self.table:
                    raise ModelError(
                        f"{self.name}: no entry for {m!r} at {a!r}")

    # -- single entries --------------------------------------------------

    def lift_mor(self, m, a):
        """The chosen morphism upstairs over m starting at a."""
        if self.table is None:
            raise ModelError(
                f"{self.name}: closure-backed structure has no entry table")
        return self.table[(m, a)]

    def transport(self, m, a):
        """Where the start point lands along the chosen lift of m."""
        return self.p.dom.tgt(self.lift_mor(m, a))

    def is_normal_table(self):
        """Entries at identities are identities."""
        if self.table is None:
            return None
        E, B = self.p.dom, self.p.cod
        return all(v == E.id(a) for (m, a), v in self.table.items()
                   if m == B.id(B.src(m)))

    def is_functorial_table(self):
        """Entries compose whenever the base morphisms do."""
        if self.table is None:
            return None
        E, B = self.p.dom, self.p.cod
        for (m, a), u in self.table.items():
            for n in B.star(B.tgt(m)):
                partner = self.table.get((n, E.tgt(u)))
                whole = self.table.get((B.then(m, n), a))
                if partner is None or whole is None:
                    continue
                if E.then(u, partner) != whole:
                    return False
        return True

    # -- filling ---------------------------------------------------------

    def lift(self, y: GroupoidMap, H: GroupoidMap,
             name=None) -> GroupoidMap:
        """Fill the cylinder problem (y, H).

        y: Z -> E, H: Z x I -> B with y;p equal to H on the 0-end.
        The filler sends (z, i) to the endpoint of the chosen lift of
        H(id_z, way to i) at y(z), and conjugates morphisms by those
        edge lifts, so it is a functor over H by construction.
        """
        if self.lift_fn is not None:
            return self.lift_fn(y, H, name)
        E, B, p = self.p.dom, self.p.cod, self.p
        I = self.interval
        Z = cylinder_factor(H.dom, I)
        cyl = H.dom
        if y.dom != Z or y.cod != E or H.cod != B:
            raise CompositionError(
                f"{self.name}: problem ({y.name!r}, {H.name!r}) does not "
                f"fit {p.name!r}")
        i0_id = I.gpd.id(I.i0)
        for z in Z.objects:
            if p.obj_map[y.obj_map[z]] != H.obj_map[(z, I.i0)]:
                raise CompositionError(
                    f"{self.name}: start {y.name!r} does not sit over the "
                    f"0-end of {H.name!r} at {z!r}")
        for u in Z.morphisms:
            if p.mor_map[y.mor_map[u]] != H.mor_map[(u, i0_id)]:
                raise CompositionError(
                    f"{self.name}: start {y.name!r} does not sit over the "
                    f"0-end of {H.name!r} at morphism {u!r}")
        taus = I.start_paths()
        edge = {}
        for z in Z.objects:
            idz = Z.id(z)
            a = y.obj_map[z]
            for i, tau in taus.items():
                edge[(z, i)] = self.table[(H.mor_map[(idz, tau)], a)]
        obj_map = {(z, i): E.tgt(edge[(z, i)])
                   for z in Z.objects for i in I.gpd.objects}
        mor_map = {}
        for (u, n) in cyl.morphisms:
            z, z2 = Z.src(u), Z.tgt(u)
            i, j = I.gpd.src(n), I.gpd.tgt(n)
            mor_map[(u, n)] = E.then(
                E.then(E.inv(edge[(z, i)]), y.mor_map[u]), edge[(z2, j)])
        return GroupoidMap(name or f"fill({y.name})", cyl, E,
                           obj_map, mor_map, validate=False)

    def laws(self, problems=()):
        """Filler invariants on the given problems: functor, over the
        homotopy, and restriction on the 0-end."""
        cyls = CylinderStructure(self.interval)
        out = []
        for idx, (y, H) in enumerate(problems):
            h = self.lift(y, H)
            Z = cylinder_factor(H.dom, self.interval)
            d0 = cyls.end_inclusion(Z, 0)
            out.append((f"filler{idx}_functor", check_functor(h)))
            out.append((f"filler{idx}_over_homotopy",
                        Verdict(h.then(self.p).same_mapping(H))))
            out.append((f"filler{idx}_zero_end",
                        Verdict(d0.then(h).same_mapping(y))))
        return out


# -- building structures -------------------------------------------------


def is_isofibration(p: GroupoidMap) -> Verdict:
    """Every base morphism has some lift from every start point."""
    E, B = p.dom, p.cod
    for m in sort_names(B.morphisms):
        x = B.src(m)
        for a in sort_names(E.objects):
            if p.obj_map[a] != x:
                continue
            if not any(p.mor_map[u] == m for u in E.star(a)):
                return Verdict.failed(
                    f"{p.name}: no lift of {m!r} starting at {a!r}",
                    witness=(m, a))
    return Verdict.passed(f"{p.name}: every base morphism lifts")


def lift_from_isofibration(p: GroupoidMap, interval: IntervalObject,
                           name=None) -> LiftingStructure:
    """Chosen lifts for an isofibration: the identity over an identity,
    otherwise the first lift in name order.  Raises with the unliftable
    morphism when p is not an isofibration."""
    E, B = p.dom, p.cod
    table = {}
    for m in _needed_base_morphisms(B, interval):
        x = B.src(m)
        identity_base = m == B.id(x)
        for a in sort_names(E.objects):
            if p.obj_map[a] != x:
                continue
            cands = [u for u in E.star(a) if p.mor_map[u] == m]
            if not cands:
                raise ModelError(
                    f"{p.name} is not an isofibration: {m!r} has no lift "
                    f"at {a!r}")
            if identity_base and E.id(a) in cands:
                table[(m, a)] = E.id(a)
            else:
                table[(m, a)] = sort_names(cands)[0]
    return LiftingStructure(name or f"lifts({p.name})", p, interval,
                            table=table)


def classifier_lift(U: ClassifierUniverse, interval: IntervalObject,
                    name=None) -> LiftingStructure:
    """The canonical structure on the universe display: transport a
    point along a type morphism by applying the named fiber
    isomorphism, with nothing extra in the fiber."""
    table = {}
    for phi in _needed_base_morphisms(U.ty, interval):
        s = U.ty.src(phi)
        G = U.types[U.ty.tgt(phi)]
        carrier = U.isos[phi]
        for (t, x) in U.tm.objects:
            if t == s:
                table[(phi, (t, x))] = (phi, G.id(carrier.obj_map[x]))
    return LiftingStructure(name or f"lifts(tp_{U.name})", U.proj,
                            interval, table=table)


def pullback_lift(base: LiftingStructure, p: GroupoidMap,
                  top: GroupoidMap, bottom: GroupoidMap,
                  name=None) -> LiftingStructure:
    """Induce a structure on p from one on base.p through a pullback
    square with p on the left, base.p on the right, top over bottom.
    Each entry is the unique morphism upstairs over both the base
    morphism and the chosen entry of base; uniqueness is checked."""
    E, B = p.dom, p.cod
    table = {}
    for m in _needed_base_morphisms(B, base.interval):
        x = B.src(m)
        want_base = bottom.mor_map[m]
        for a in sort_names(E.objects):
            if p.obj_map[a] != x:
                continue
            want = base.lift_mor(want_base, top.obj_map[a])
            cands = [u for u in E.star(a)
                     if p.mor_map[u] == m and top.mor_map[u] == want]
            if len(cands) != 1:
                raise ModelError(
                    f"{len(cands)} lifts of {m!r} at {a!r} over the "
                    f"chosen entry of {base.name!r}; the square is not "
                    f"a pullback there")
            table[(m, a)] = cands[0]
    return LiftingStructure(name or f"pb({base.name})", p, base.interval,
                            table=table)


def witness_lift(p: GroupoidMap, witness: ClassificationWitness,
                 base: LiftingStructure, name=None) -> LiftingStructure:
    """Transfer the universe structure along a classification of p."""
    chk = witness.verify(p)
    if not chk:
        raise ModelError(f"classification does not match {p.name!r}: "
                         f"{chk.reason}")
    top = witness.iso.then(witness.square.proj2)
    return pullback_lift(base, p, top, witness.sigma, name=name)


def perturb_lift(L: LiftingStructure,
                 name=None) -> Optional[LiftingStructure]:
    """A deliberately non-normal variant of a table-backed structure.

    Replaces the first identity entry, in name order, that admits a
    different valid lift.  Exactly one entry changes, so the damage is
    local; returns None when every identity entry is forced.
    """
    if L.table is None:
        raise ModelError(f"{L.name}: cannot perturb a closure-backed "
                         f"structure")
    E, B, p = L.p.dom, L.p.cod, L.p
    for (m, a) in sorted(L.table, key=namekey):
        if m != B.id(B.src(m)):
            continue
        cands = [u for u in E.star(a)
                 if p.mor_map[u] == m and u != L.table[(m, a)]]
        if cands:
            table = dict(L.table)
            table[(m, a)] = sort_names(cands)[0]
            return LiftingStructure(name or f"perturbed({L.name})", p,
                                    L.interval, table=table)
    return None


def ad_hoc_lift(L: LiftingStructure, alt: LiftingStructure,
                name=None) -> LiftingStructure:
    """A chooser that depends on the shape of the context: problems
    over a one-object context use L, larger ones use alt.  Exists to
    demonstrate failures of uniformity."""
    assert L.p == alt.p and L.interval is alt.interval, \
        "both structures must be for the same map and interval"

    def fn(y, H, nm=None):
        Z = cylinder_factor(H.dom, L.interval)
        pick = L if len(Z.objects) <= 1 else alt
        return pick.lift(y, H, name=nm)

    return LiftingStructure(name or f"adhoc({L.name})", L.p, L.interval,
                            lift_fn=fn)


# -- enumeration-only audit ----------------------------------------------


def enumerate_problems(p: GroupoidMap, interval: IntervalObject,
                       Z: FinGroupoid,
                       guard: SizeGuard = DEFAULT_GUARD):
    """All cylinder problems (y, H) for p over the context Z."""
    cyls = CylinderStructure(interval)
    cyl = cyls.cylinder(Z).gpd
    d0 = cyls.end_inclusion(Z, 0)
    out = []
    for H in enumerate_maps(cyl, p.cod, guard=guard):
        start = d0.then(H)
        for y in enumerate_maps(Z, p.dom, guard=guard):
            if y.then(p).same_mapping(start):
                out.append((y, H))
    return out


def check_cylinder_lifting(p: GroupoidMap, interval: IntervalObject,
                           contexts, guard: SizeGuard = DEFAULT_GUARD
                           ) -> Verdict:
    """Pure enumeration: every cylinder problem over each context has
    some filler.  Uses no chosen structure, so it can audit one."""
    cyls = CylinderStructure(interval)
    for Z in contexts:
        cyl = cyls.cylinder(Z).gpd
        d0 = cyls.end_inclusion(Z, 0)
        cands = [(d0.then(h), h.then(p))
                 for h in enumerate_maps(cyl, p.dom, guard=guard)]
        for (y, H) in enumerate_problems(p, interval, Z, guard=guard):
            if not any(dh.same_mapping(y) and hp.same_mapping(H)
                       for (dh, hp) in cands):
                return Verdict.failed(
                    f"{p.name}: no filler for a problem over {Z.name!r}",
                    witness=(Z.name, y.obj_map, H.obj_map))
    return Verdict.passed(
        f"{p.name}: every enumerated cylinder problem has a filler")


def check_normal(L: LiftingStructure, contexts=(),
                 guard: SizeGuard = DEFAULT_GUARD) -> Verdict:
    """Constant problems must fill constantly.

    Probes the generic constant problem (the identity of the total
    groupoid) and every constant problem over the given contexts."""
    cyls = CylinderStructure(L.interval)
    E = L.p.dom
    probes = [(identity_map(E), E)]
    for Z in contexts:
        probes.extend((y, Z) for y in enumerate_maps(Z, E, guard=guard))
    for y, Z in probes:
        want = cyls.proj(Z).then(y)
        h = L.lift(y, want.then(L.p))
        if not h.same_mapping(want):
            return Verdict.failed(
                f"{L.name}: constant problem over {Z.name!r} at "
                f"{y.name!r} does not fill constantly",
                witness=(Z.name, y.name, _first_difference(h, want)))
    return Verdict.passed(f"{L.name}: constant problems fill constantly")


def check_uniform(L: LiftingStructure, contexts,
                  guard: SizeGuard = DEFAULT_GUARD) -> Verdict:
    """Filling must commute with reparameterizing the context.

    For every map s between contexts and every problem over its
    codomain, the fill of the restricted problem must equal the
    restriction of the fill."""
    cyls = CylinderStructure(L.interval)
    for Z in contexts:
        problems = enumerate_problems(L.p, L.interval, Z, guard=guard)
        for Zp in contexts:
            for s in enumerate_maps(Zp, Z, guard=guard):
                cs = cyls.functorial(s)
                for (y, H) in problems:
                    left = L.lift(s.then(y), cs.then(H))
                    right = cs.then(L.lift(y, H))
                    if not left.same_mapping(right):
                        return Verdict.failed(
                            f"{L.name}: fill does not commute with "
                            f"{s.name!r}: {Zp.name} -> {Z.name}",
                            witness=(Zp.name, Z.name, s.obj_map,
                                     _first_difference(left, right)))
    return Verdict.passed(
        f"{L.name}: filling commutes with all context maps")


# -- the section form ----------------------------------------------------


class SectionForm:
    """Lifting data as one map: a section of the comparison from paths
    upstairs to pairs (path downstairs, start point upstairs)."""

    __slots__ = ("name", "p", "interval", "paths_total", "paths_base",
                 "pairs", "comparison", "section")

    def __init__(self, name: str, p: GroupoidMap,
                 interval: IntervalObject,
                 guard: Optional[SizeGuard] = None):
        self.name = name
        self.p = p
        self.interval = interval
        self.paths_total = pathobject(p.dom, interval, guard=guard)
        self.paths_base = pathobject(p.cod, interval, guard=guard)
        self.pairs = pullback(self.paths_base.eps0, p)
        self.comparison = self.pairs.mediate(
            self.paths_total.lift_map(p, self.paths_base),
            self.paths_total.eps0, name=f"cmp({p.name})")
        self.section = None

    def laws(self):
        assert self.section is not None, f"{self.name}: no section yet"
        over = self.section.then(
            self.paths_total.lift_map(self.p, self.paths_base))
        start = self.section.then(self.paths_total.eps0)
        ident = identity_map(self.pairs.apex)
        return [
            ("section_functor", check_functor(self.section)),
            ("section_over_base_path",
             Verdict(over.same_mapping(self.pairs.proj1))),
            ("section_starts_at_point",
             Verdict(start.same_mapping(self.pairs.proj2))),
            ("section_of_comparison",
             Verdict(self.section.then(self.comparison)
                     .same_mapping(ident))),
        ]


def section_from_lifts(L: LiftingStructure, name=None,
                       guard: Optional[SizeGuard] = None) -> SectionForm:
    """Package a lifting structure as a section by filling the one
    generic problem over the pair groupoid."""
    S = SectionForm(name or f"section({L.name})", L.p, L.interval,
                    guard=guard)
    y = S.pairs.proj2
    H = S.paths_base.untranspose(S.pairs.proj1)
    h = L.lift(y, H, name=f"genfill({L.name})")
    S.section = S.paths_total.transpose(h, name=f"ell({L.name})")
    return S


def lifts_from_section(S: SectionForm, name=None) -> LiftingStructure:
    """Fill problems through the section: transpose the homotopy, pair
    it with the start, apply the section, untranspose."""

    def fn(y, H, nm=None):
        phat = S.paths_base.transpose(H)
        m = S.pairs.mediate(phat, y, name=f"pair({y.name})")
        return S.paths_total.untranspose(m.then(S.section), name=nm)

    return LiftingStructure(name or f"lifts({S.name})", S.p, S.interval,
                            lift_fn=fn)


def find_section(p: GroupoidMap, interval: IntervalObject,
                 guard: SizeGuard = DEFAULT_GUARD) -> Optional[SectionForm]:
    """Search for any section of the comparison map by enumeration.
    Returns the first in canonical order, or None."""
    S = SectionForm(f"search({p.name})", p, interval, guard=guard)
    ident = identity_map(S.pairs.apex)
    for cand in enumerate_maps(S.pairs.apex, S.paths_total.gpd,
                               guard=guard):
        if cand.then(S.comparison).same_mapping(ident):
            S.section = cand
            return S
    return None


# -- connections on path objects -----------------------------------------


class Connection:
    """A degeneracy in the second direction on a path object: every
    path is joined to the constant path at its 0-end, naturally, and
    the join of a constant path is doubly constant."""

    __slots__ = ("pts", "square_paths", "chi", "chi_tilde", "path_lift")

    def __init__(self, pts, square_paths, chi, chi_tilde, path_lift):
        self.pts = pts
        self.square_paths = square_paths
        self.chi = chi
        self.chi_tilde = chi_tilde
        self.path_lift = path_lift

    def laws(self):
        P, SQ = self.pts.P, self.square_paths
        ident = identity_map(P.gpd)
        return [
            ("connection_functor", check_functor(self.chi)),
            ("end1_recovers_path",
             Verdict(self.chi.then(SQ.eps1).same_mapping(ident))),
            ("end0_is_constant",
             Verdict(self.chi.then(SQ.eps0)
                     .same_mapping(P.eps0.then(P.rho)))),
            ("constant_paths_doubly_constant",
             Verdict(P.rho.then(self.chi)
                     .same_mapping(P.rho.then(SQ.rho)))),
            ("connection_over_base",
             Verdict(self.chi.then(SQ.base).same_mapping(P.base))),
        ]


def build_connection(pts, universe_lift: LiftingStructure, name=None,
                     guard: Optional[SizeGuard] = None) -> Connection:
    """The connection on the paths of the universe display.

    The structure on the endpoint projection of the path groupoid is
    induced from the universe structure through the path-type square;
    filling the problem that sends (path w, i) to (0-end of w, w at i)
    against the start map (constant path at the 0-end) contracts every
    path onto its 0-end, and transposing the filler gives the
    connection.
    """
    P = pts.P
    I = pts.interval
    path_lift = pullback_lift(universe_lift, pts.both, pts.point,
                              pts.path_ty,
                              name=f"pathlift({universe_lift.name})")
    cyls = CylinderStructure(I)
    cyl = cyls.cylinder(P.gpd)
    start = P.eps0.then(P.rho)
    H = pts.pairs.mediate(cyl.proj1.then(P.eps0), P.eval_map(),
                          name=f"contract({P.gpd.name})")
    chi_tilde = path_lift.lift(start, H, name="chi_tilde")
    SQ = relative_pathobject(P.base, I, guard=guard)
    chi = SQ.transpose(chi_tilde, name=name or "chi")
    return Connection(pts, SQ, chi, chi_tilde, path_lift)
