"""Finite type classifiers: a term/type projection with listed fibers.

A classifier is built from a finite list of named fibers.  Its type
groupoid has the fiber names as objects and all isomorphisms between
fibers as morphisms; its term groupoid has pointed fibers (name, point)
as objects, with a morphism (phi, u): (F, x) -> (F', x') given by a
fiber isomorphism phi: F -> F' and a correction u: phi(x) -> x' in F'.
The projection forgets the point.  Context extension is the chosen
pullback along the projection, which makes reindexing strictly
functorial: extending by a reindexed family literally is the chosen
pullback of the composite.

The path-type structure equips a classifier with a type of paths: a
fiberwise path of the projection (a point together with a loopless
"path" u: x -> y inside one fiber) is classified by a listed discrete
fiber in bijection with hom(x, y).  The defining square is required to
be an exact pullback, which pins the intro/elim maps up to nothing.
"""

from __future__ import annotations

from typing import Dict, Optional, Tuple

from .groupoids import (FinGroupoid, GroupoidMap, ModelError, Verdict,
                        discrete_groupoid, identity_map)
from .limits import (CommutingSquare, PullbackSquare, pullback,
                     pullback_comparison, is_pullback)
from .names import namekey, sort_names
from .enumeration import SizeGuard, enumerate_maps
from .cylinder import (IntervalObject, PathObjectFactorization,
                       relative_pathobject)


class ClosureError(ModelError):
    """The listed fibers are not closed under a required construction."""


def _mapping_key(f: GroupoidMap):
    return (tuple(sorted(f.obj_map.items(), key=lambda kv: namekey(kv[0]))),
            tuple(sorted(f.mor_map.items(), key=lambda kv: namekey(kv[0]))))


class ClassifierUniverse:
    """Types-with-points projection built from named finite fibers."""

    __slots__ = ("name", "types", "ty", "tm", "proj", "isos", "_iso_index",
                 "_id_iso")

    def __init__(self, name, types: Dict[str, FinGroupoid],
                 guard: SizeGuard = None):
        self.name = name
        self.types = {t: types[t] for t in sorted(types)}

        # type groupoid: fiber names and all isomorphisms between fibers
        self.isos: Dict = {}
        self._iso_index: Dict = {}
        ty_morphisms = {}
        for s, F in self.types.items():
            for t, G in self.types.items():
                found = [f for f in enumerate_maps(F, G, guard=guard)
                         if f.is_iso()]
                index = {}
                for k, f in enumerate(found):
                    mname = (s, t, k)
                    self.isos[mname] = f
                    index[_mapping_key(f)] = mname
                    ty_morphisms[mname] = (s, t)
                self._iso_index[(s, t)] = index
        self._id_iso = {}
        for t, F in self.types.items():
            self._id_iso[t] = self._iso_index[(t, t)][
                _mapping_key(identity_map(F))]
        ty_table = {}
        for m1, (s1, t1) in ty_morphisms.items():
            for m2, (s2, t2) in ty_morphisms.items():
                if t1 == s2:
                    ty_table[(m1, m2)] = self._iso_index[(s1, t2)][
                        _mapping_key(self.isos[m1].then(self.isos[m2]))]
        self.ty = FinGroupoid(
            f"Ty({name})", list(self.types), ty_morphisms, ty_table,
            identity=self._id_iso,
            inverse={m: self._iso_index[(t, s)][
                _mapping_key(self.isos[m].inverse())]
                for m, (s, t) in ty_morphisms.items()})

        # term groupoid: pointed fibers
        tm_objects = [(t, x) for t in self.types
                      for x in self.types[t].objects]
        tm_morphisms = {}
        for phi, (s, t) in self.ty.morphisms.items():
            F, G = self.types[s], self.types[t]
            for x in F.objects:
                for u in G.star(self.isos[phi].obj_map[x]):
                    tm_morphisms[(phi, u)] = ((s, x), (t, G.tgt(u)))
        tm_table = {}
        for (phi, u), (_a, (t1, _x1)) in tm_morphisms.items():
            for (psi, v), ((s2, x2), _b) in tm_morphisms.items():
                if (t1, tm_morphisms[(phi, u)][1][1]) == (s2, x2):
                    comp_phi = self.ty.table[(phi, psi)]
                    G2 = self.types[self.ty.tgt(psi)]
                    tm_table[((phi, u), (psi, v))] = (
                        comp_phi, G2.then(self.isos[psi].mor_map[u], v))
        tm_identity = {(t, x): (self._id_iso[t], self.types[t].id(x))
                       for (t, x) in tm_objects}
        tm_inverse = {}
        for (phi, u), ((s, x), (t, y)) in tm_morphisms.items():
            phi_inv = self.ty.inv(phi)
            F = self.types[s]
            tm_inverse[(phi, u)] = (
                phi_inv, F.inv(self.isos[phi_inv].mor_map[u]))
        self.tm = FinGroupoid(f"Tm({name})", tm_objects, tm_morphisms,
                              tm_table, identity=tm_identity,
                              inverse=tm_inverse)

        self.proj = GroupoidMap(
            f"proj({name})", self.tm, self.ty,
            {(t, x): t for (t, x) in tm_objects},
            {(phi, u): phi for (phi, u) in tm_morphisms},
            validate=False)

    # -- fibers ---------------------------------------------------------

    def fiber_inclusion(self, tyname) -> GroupoidMap:
        """The strict fiber over a type name, as a mono from the fiber."""
        F = self.types[tyname]
        e = self._id_iso[tyname]
        return GroupoidMap(
            f"fiber[{tyname}]", F, self.tm,
            {x: (tyname, x) for x in F.objects},
            {u: (e, u) for u in F.morphisms},
            validate=False)

    def iso_name(self, s, t, f: GroupoidMap):
        """The type morphism naming a concrete fiber isomorphism."""
        return self._iso_index[(s, t)][_mapping_key(f)]

    # -- context extension ----------------------------------------------

    def extend(self, sigma: GroupoidMap) -> PullbackSquare:
        """Chosen pullback of a family sigma: Gamma -> Ty against proj.

        proj1 is the display map back to Gamma; proj2 is the generic
        point.
        """
        assert sigma.cod == self.ty, "family must land in the type groupoid"
        return pullback(sigma, self.proj)

    def pairing_map(self, f: GroupoidMap, sigma: GroupoidMap) -> GroupoidMap:
        """The top map extend(f;sigma) -> extend(sigma) over f."""
        ext_f = self.extend(f.then(sigma))
        return self.extend(sigma).mediate(
            ext_f.proj1.then(f), ext_f.proj2,
            name=f"q({f.name},{sigma.name})")

    def term_section(self, sigma: GroupoidMap, a: GroupoidMap) -> GroupoidMap:
        """A term a: Gamma -> Tm of type sigma, as a section of display."""
        assert a.then(self.proj).same_mapping(sigma), \
            "term does not have the stated type"
        ext = self.extend(sigma)
        return ext.mediate(identity_map(a.dom), a, name=f"sec({a.name})")

    # -- laws -----------------------------------------------------------

    def laws(self, samples=()):
        """Classifier equations.  ``samples`` is an iterable of pairs
        (f, sigma) with f: Delta -> Gamma and sigma: Gamma -> Ty; for
        each, reindexing strictness and the pairing square are checked.
        """
        out = []
        try:
            self.ty.validate()
            self.tm.validate()
            out.append(("carriers_valid", Verdict.passed()))
        except ModelError as exc:
            out.append(("carriers_valid", Verdict.failed(str(exc))))
        from .groupoids import check_functor
        out.append(("proj_functor", check_functor(self.proj)))
        for t, F in self.types.items():
            inc = self.fiber_inclusion(t)
            ok = check_functor(inc)
            if ok and not inc.is_mono():
                ok = Verdict.failed(f"fiber inclusion {t!r} not mono")
            if ok:
                # strict fiber: exactly the points and vertical morphisms
                verts = [m for m, (s_, t_) in self.tm.morphisms.items()
                         if self.proj.mor_map[m] == self._id_iso[t]
                         and self.tm.src(m)[0] == t]
                if len(verts) != F.n_morphisms:
                    ok = Verdict.failed(
                        f"fiber over {t!r} has {len(verts)} vertical "
                        f"morphisms, expected {F.n_morphisms}")
            out.append((f"strict_fiber_{t}", ok))
        for f, sigma in samples:
            q = self.pairing_map(f, sigma)
            ext_f = self.extend(f.then(sigma))
            ext_s = self.extend(sigma)
            sq = CommutingSquare(top=q, left=ext_f.proj1,
                                 right=ext_s.proj1, bottom=f)
            out.append((f"pairing_square_{f.name}_{sigma.name}",
                        is_pullback(sq)))
            out.append((f"pairing_point_{f.name}_{sigma.name}", Verdict(
                q.then(ext_s.proj2).same_mapping(ext_f.proj2))))
            # strictness: extending by the composite is literally the
            # chosen pullback of the composite
            again = self.extend(f.then(sigma))
            out.append((f"reindex_strict_{f.name}_{sigma.name}", Verdict(
                again.apex.same_presentation(ext_f.apex))))
        return out


# -- classification -----------------------------------------------------


class ClassificationWitness:
    """A family sigma and an identification of p with its extension."""

    __slots__ = ("universe", "sigma", "square", "iso")

    def __init__(self, universe: ClassifierUniverse, sigma: GroupoidMap,
                 square: PullbackSquare, iso: GroupoidMap):
        self.universe = universe
        self.sigma = sigma
        self.square = square
        self.iso = iso

    def verify(self, p: GroupoidMap) -> Verdict:
        if not self.iso.is_iso():
            return Verdict.failed("witness map is not an isomorphism")
        if not self.iso.then(self.square.proj1).same_mapping(p):
            return Verdict.failed("witness does not commute with display")
        return Verdict.passed()


def classify(universe: ClassifierUniverse, p: GroupoidMap,
             guard: SizeGuard = None) -> Optional[ClassificationWitness]:
    """Search for a family classifying p: A -> Gamma, if any.

    Families Gamma -> Ty are enumerated in canonical order; for each
    with matching fiber sizes, isomorphisms A -> extension over Gamma
    are searched.  The first witness found is returned, making the
    choice deterministic.
    """
    A, Gamma = p.dom, p.cod
    fiber_objs = {g: sum(1 for a in A.objects if p.obj_map[a] == g)
                  for g in Gamma.objects}
    fiber_mors = {g: sum(1 for m in A.morphisms
                         if p.mor_map[m] == Gamma.id(g))
                  for g in Gamma.objects}
    for sigma in enumerate_maps(Gamma, universe.ty, guard=guard):
        if any(universe.types[sigma.obj_map[g]].n_objects != fiber_objs[g]
               or universe.types[sigma.obj_map[g]].n_morphisms
               != fiber_mors[g] for g in Gamma.objects):
            continue
        square = universe.extend(sigma)
        if square.apex.n_objects != A.n_objects or \
           square.apex.n_morphisms != A.n_morphisms:
            continue
        for cand in enumerate_maps(A, square.apex, guard=guard):
            if cand.then(square.proj1).same_mapping(p) and cand.is_iso():
                return ClassificationWitness(universe, sigma, square, cand)
    return None


# -- path types ---------------------------------------------------------


class PathTypeStructure:
    """A classifier closed under types of paths.

    ``pairs`` is the groupoid of same-type point pairs; ``path_ty``
    assigns to a pair the listed discrete fiber in bijection with the
    homs between the points; ``point`` turns a fiberwise path of the
    projection into a term of that type.  The defining square

        paths(proj) --point-->  Tm
            |                    |
        (eps0,eps1)             proj
            |                    |
          pairs    --path_ty--> Ty

    commutes and is an exact pullback.
    """

    __slots__ = ("universe", "interval", "P", "pairs", "both", "path_ty",
                 "point", "refl", "square", "closure", "_inverse_cmp")

    def __init__(self, universe: ClassifierUniverse,
                 interval: IntervalObject, guard: SizeGuard = None):
        self.universe = universe
        self.interval = interval
        U = universe
        self.P = relative_pathobject(U.proj, interval, guard=guard)
        self.pairs = pullback(U.proj, U.proj)
        self.both = self.pairs.mediate(self.P.eps0, self.P.eps1,
                                       name="ends")

        # closure table: (tyname, x, y) -> (tyname', hom -> fiber object)
        self.closure: Dict = {}
        for t, F in U.types.items():
            for x in F.objects:
                for y in F.objects:
                    homs = sort_names(F.hom(x, y))
                    target = None
                    for t2 in U.types:
                        G = U.types[t2]
                        if G.is_discrete() and G.n_objects == len(homs):
                            target = t2
                            break
                    if target is None:
                        raise ClosureError(
                            f"{U.name}: no listed discrete fiber of size "
                            f"{len(homs)} for paths {x!r} -> {y!r} in {t!r}")
                    G = U.types[target]
                    self.closure[(t, x, y)] = (
                        target, dict(zip(homs, G.objects)))

        # path_ty on objects and morphisms of the pair groupoid
        obj_map = {}
        for (a, b) in self.pairs.apex.objects:
            t, x = a
            _t, y = b
            obj_map[(a, b)] = self.closure[(t, x, y)][0]
        mor_map = {}
        for ((phi, u), (phi2, v)) in self.pairs.apex.morphisms:
            assert phi == phi2
            (s, x), (t2, x2) = self.universe.tm.morphisms[(phi, u)]
            (_s, y), (_t2, y2) = self.universe.tm.morphisms[(phi2, v)]
            src_t, src_bij = self.closure[(s, x, y)]
            tgt_t, tgt_bij = self.closure[(t2, x2, y2)]
            F, G = U.types[s], U.types[t2]
            transport = {}
            for w, ob in src_bij.items():
                w2 = G.then(G.then(G.inv(u), self.isos_mor(phi, w)), v)
                transport[ob] = tgt_bij[w2]
            carrier = GroupoidMap(
                "t", U.types[src_t], U.types[tgt_t],
                transport,
                {U.types[src_t].id(ob): U.types[tgt_t].id(transport[ob])
                 for ob in transport},
                validate=False)
            mor_map[((phi, u), (phi2, v))] = U.iso_name(src_t, tgt_t, carrier)
        self.path_ty = GroupoidMap("path_ty", self.pairs.apex, U.ty,
                                   obj_map, mor_map, validate=False)

        # point: paths of the projection as terms of the path type
        pt_obj = {}
        for s in self.P.gpd.objects:
            phi, u = self._path_as_vertical(s)
            (t, x), (_t, y) = U.tm.morphisms[(phi, u)]
            tyname, bij = self.closure[(t, x, y)]
            pt_obj[s] = (tyname, bij[u])
        pt_mor = {}
        for m in self.P.gpd.morphisms:
            s, t_, _comps = m
            src_term, tgt_term = pt_obj[s], pt_obj[t_]
            pair_m = self.both.mor_map[m]
            iso = self.path_ty.mor_map[pair_m]
            G = U.types[U.ty.tgt(iso)]
            carried = U.isos[iso].obj_map[src_term[1]]
            assert carried == tgt_term[1], "path transport out of step"
            pt_mor[m] = (iso, G.id(carried))
        self.point = GroupoidMap("path_point", self.P.gpd, U.tm,
                                 pt_obj, pt_mor, validate=False)
        self.refl = self.P.rho.then(self.point)
        self.refl = GroupoidMap("refl", U.tm, U.tm, self.refl.obj_map,
                                self.refl.mor_map, validate=False)
        self.square = CommutingSquare(top=self.point, left=self.both,
                                      right=U.proj, bottom=self.path_ty)
        self._inverse_cmp = None

    def _path_as_vertical(self, pathname):
        """Recover the vertical term morphism a path point stands for."""
        I = self.interval
        w_obj = self.P.path_obj[pathname]
        if I.i0 == I.i1:
            t, x = w_obj[I.i0]
            return self.universe.tm.id((t, x))
        w_mor = self.P.path_mor[pathname]
        # any interval morphism from i0 to i1 carries the same vertical
        for m, (s, t) in I.gpd.morphisms.items():
            if s == I.i0 and t == I.i1:
                return w_mor[m]
        raise ModelError(f"interval {I.name!r} has no way from end to end")

    def isos_mor(self, phi, w):
        return self.universe.isos[phi].mor_map[w]

    # -- term-level operations ------------------------------------------

    def comparison(self) -> GroupoidMap:
        """The canonical map from paths to the extension by path_ty."""
        ext = self.universe.extend(self.path_ty)
        return ext.mediate(self.both, self.point, name="path_cmp")

    def _cmp_inverse(self) -> GroupoidMap:
        if self._inverse_cmp is None:
            self._inverse_cmp = self.comparison().inverse()
        return self._inverse_cmp

    def path_type(self, a: GroupoidMap, b: GroupoidMap) -> GroupoidMap:
        """The type of paths between two terms of one type."""
        U = self.universe
        assert a.then(U.proj).same_mapping(b.then(U.proj)), \
            "terms of different types have no path type"
        both = self.pairs.mediate(a, b)
        return both.then(self.path_ty)

    def path_term(self, h: GroupoidMap) -> GroupoidMap:
        """Intro: a fiberwise path Gamma -> paths(proj) as a term."""
        return h.then(self.point)

    def unpath_term(self, t: GroupoidMap, a: GroupoidMap,
                    b: GroupoidMap) -> GroupoidMap:
        """Elim: a term of the path type back to a fiberwise path."""
        U = self.universe
        assert t.then(U.proj).same_mapping(self.path_type(a, b)), \
            "term does not inhabit the stated path type"
        ext = U.extend(self.path_ty)
        med = ext.mediate(self.pairs.mediate(a, b), t,
                          name=f"unpath({t.name})")
        return med.then(self._cmp_inverse())

    # -- laws -----------------------------------------------------------

    def laws(self):
        U = self.universe
        out = []
        from .groupoids import check_functor
        out.append(("path_ty_functor", check_functor(self.path_ty)))
        out.append(("point_functor", check_functor(self.point)))
        out.append(("square_pullback", is_pullback(self.square)))
        diag = self.pairs.mediate(identity_map(U.tm), identity_map(U.tm),
                                  name="diag")
        out.append(("refl_type", Verdict(
            self.refl.then(U.proj).same_mapping(
                diag.then(self.path_ty)))))
        out.append(("refl_from_constant", Verdict(
            self.P.rho.then(self.point).same_mapping(self.refl))))
        out.append(("point_over_path_ty", Verdict(
            self.point.then(U.proj).same_mapping(
                self.both.then(self.path_ty)))))
        cmp = self.comparison()
        out.append(("comparison_iso", Verdict(
            cmp.is_iso(), "" if cmp.is_iso() else
            "paths do not match the extension by path_ty")))
        return out


def path_types_from_closure(universe: ClassifierUniverse,
                            interval: IntervalObject,
                            guard: SizeGuard = None) -> PathTypeStructure:
    return PathTypeStructure(universe, interval, guard=guard)


# -- stock classifiers --------------------------------------------------


def standard_set_universe(name="sets") -> ClassifierUniverse:
    """Discrete fibers of sizes 0, 1, 2: enough for extensional paths."""
    return ClassifierUniverse(name, {
        "empty": discrete_groupoid([], "empty"),
        "unit": discrete_groupoid(["0"], "unit"),
        "pair": discrete_groupoid(["0", "1"], "pair"),
    })


def standard_groupoid_universe(name="gpds",
                               with_loop=False) -> ClassifierUniverse:
    """Discrete fibers plus, optionally, the one-object fiber with a
    2-torsion loop.  Either list is closed under path types."""
    from .groupoids import bz2

    types = {
        "empty": discrete_groupoid([], "empty"),
        "unit": discrete_groupoid(["0"], "unit"),
        "pair": discrete_groupoid(["0", "1"], "pair"),
    }
    if with_loop:
        types["loop2"] = bz2("loop2")
    return ClassifierUniverse(name, types)
