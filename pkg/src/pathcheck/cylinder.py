"""Interval objects, cylinders, and path object factorizations.

An interval is a groupoid with two points and a collapse to the
terminal groupoid.  Powering a map p: A -> X by the interval, fiberwise
over X, produces the path object P together with the factorization

    A --rho--> P --(eps0, eps1)--> A x_X A

of the relative diagonal.  Everything here is computed as literal
finite data: a point of P is a functor from the interval into A whose
projection to X is constant, and a morphism of P is a transformation
whose components all sit over one and the same morphism of X.
"""

from __future__ import annotations

from typing import Dict, Optional, Tuple

from .groupoids import (CompositionError, FinGroupoid, GroupoidMap,
                        ModelError, Verdict, constant_map, identity_map,
                        terminal_groupoid)
from .limits import Product, product, to_terminal
from .names import namekey, sort_names
from .enumeration import SizeGuard, enumerate_maps


class IntervalObject:
    """A groupoid I with endpoints d0, d1: 1 -> I and collapse I -> 1.

    The two endpoints may coincide.  When an involution of I that swaps
    the endpoints exists, the first one in enumeration order is kept as
    the reversal; path reversal and box filling use it.
    """

    __slots__ = ("name", "gpd", "one", "d0", "d1", "collapse", "reversal",
                 "pt", "i0", "i1")

    def __init__(self, name, gpd: FinGroupoid, one: FinGroupoid,
                 d0: GroupoidMap, d1: GroupoidMap, collapse: GroupoidMap,
                 reversal: Optional[GroupoidMap] = None):
        assert d0.dom == one and d1.dom == one
        assert d0.cod == gpd and d1.cod == gpd
        assert collapse.dom == gpd and collapse.cod == one
        self.name = name
        self.gpd = gpd
        self.one = one
        self.d0 = d0
        self.d1 = d1
        self.collapse = collapse
        self.pt = one.objects[0]
        self.i0 = d0.obj_map[self.pt]
        self.i1 = d1.obj_map[self.pt]
        if reversal is None:
            reversal = self._find_reversal()
        self.reversal = reversal

    def _find_reversal(self):
        ident = identity_map(self.gpd)
        for cand in enumerate_maps(self.gpd, self.gpd):
            if not cand.is_iso():
                continue
            if cand.obj_map[self.i0] != self.i1 or \
               cand.obj_map[self.i1] != self.i0:
                continue
            if cand.then(cand).same_mapping(ident):
                return cand
        return None

    def start_paths(self):
        """The canonical way from the 0-end to each interval object.

        Requires exactly one morphism i0 -> i for every i; both stock
        intervals satisfy this.  Used by transport-based lifting.
        """
        out = {}
        for i in self.gpd.objects:
            ways = self.gpd.hom(self.i0, i)
            if len(ways) != 1:
                raise ModelError(
                    f"interval {self.name!r}: {len(ways)} ways from the "
                    f"0-end to {i!r}; transport needs exactly one")
            out[i] = ways[0]
        return out

    def laws(self):
        """Endpoint/collapse/reversal equations, as named verdicts."""
        ione = identity_map(self.one)
        out = [
            ("d0_then_collapse", Verdict(
                self.d0.then(self.collapse).same_mapping(ione))),
            ("d1_then_collapse", Verdict(
                self.d1.then(self.collapse).same_mapping(ione))),
        ]
        if self.reversal is not None:
            igpd = identity_map(self.gpd)
            out.extend([
                ("reversal_involutive", Verdict(
                    self.reversal.then(self.reversal).same_mapping(igpd))),
                ("reversal_swaps_ends", Verdict(
                    self.d0.then(self.reversal).same_mapping(self.d1)
                    and self.d1.then(self.reversal).same_mapping(self.d0))),
                ("reversal_over_collapse", Verdict(
                    self.reversal.then(self.collapse).same_mapping(
                        self.collapse))),
            ])
        return out


def trivial_interval(name="I") -> IntervalObject:
    """The degenerate interval: both endpoints are the unique point."""
    one = terminal_groupoid("1")
    gpd = terminal_groupoid(name)
    pt = constant_map(one, gpd, gpd.objects[0], name="d")
    return IntervalObject(name, gpd, one, pt, pt,
                          to_terminal(gpd, one), identity_map(gpd))


def walking_iso_interval(name="I") -> IntervalObject:
    """Two objects joined by an isomorphism; endpoints 0 and 1."""
    one = terminal_groupoid("1")
    gpd = FinGroupoid(
        name, ["0", "1"],
        {"id0": ("0", "0"), "id1": ("1", "1"),
         "fwd": ("0", "1"), "bwd": ("1", "0")},
        {("id0", "id0"): "id0", ("id1", "id1"): "id1",
         ("id0", "fwd"): "fwd", ("fwd", "id1"): "fwd",
         ("id1", "bwd"): "bwd", ("bwd", "id0"): "bwd",
         ("fwd", "bwd"): "id0", ("bwd", "fwd"): "id1"})
    d0 = constant_map(one, gpd, "0", name="d0")
    d1 = constant_map(one, gpd, "1", name="d1")
    return IntervalObject(name, gpd, one, d0, d1, to_terminal(gpd, one))


class CylinderStructure:
    """Cylinders Z x I with end inclusions, projection, and end swap."""

    __slots__ = ("interval",)

    def __init__(self, interval: IntervalObject):
        self.interval = interval

    def cylinder(self, Z: FinGroupoid) -> Product:
        return product(Z, self.interval.gpd)

    def end_inclusion(self, Z: FinGroupoid, end: int) -> GroupoidMap:
        assert end in (0, 1)
        iv = self.interval
        i = iv.i0 if end == 0 else iv.i1
        cyl = self.cylinder(Z)
        return GroupoidMap(
            f"delta{end}_{Z.name}", Z, cyl.gpd,
            {z: (z, i) for z in Z.objects},
            {m: (m, iv.gpd.id(i)) for m in Z.morphisms},
            validate=False)

    def proj(self, Z: FinGroupoid) -> GroupoidMap:
        return self.cylinder(Z).proj1

    def swap_ends(self, Z: FinGroupoid) -> GroupoidMap:
        rev = self.interval.reversal
        if rev is None:
            raise ModelError(
                f"interval {self.interval.name!r} has no end-swapping "
                f"involution")
        cyl = self.cylinder(Z)
        return cyl.pair(cyl.proj1, cyl.proj2.then(rev),
                        name=f"swap_{Z.name}")

    def functorial(self, f: GroupoidMap) -> GroupoidMap:
        """f x id on cylinders."""
        dom = self.cylinder(f.dom)
        return self.cylinder(f.cod).pair(dom.proj1.then(f), dom.proj2,
                                         name=f"cyl({f.name})")

    def laws(self, Z: FinGroupoid, sample_maps=()):
        """Cylinder equations over one carrier, plus naturality of the
        end inclusions and projection along any sample maps."""
        iz = identity_map(Z)
        d0, d1 = self.end_inclusion(Z, 0), self.end_inclusion(Z, 1)
        pr = self.proj(Z)
        out = [
            ("end0_then_proj", Verdict(d0.then(pr).same_mapping(iz))),
            ("end1_then_proj", Verdict(d1.then(pr).same_mapping(iz))),
        ]
        if self.interval.reversal is not None:
            sw = self.swap_ends(Z)
            icyl = identity_map(self.cylinder(Z).gpd)
            out.extend([
                ("swap_involutive", Verdict(sw.then(sw).same_mapping(icyl))),
                ("swap_over_proj", Verdict(sw.then(pr).same_mapping(pr))),
                ("end0_then_swap", Verdict(d0.then(sw).same_mapping(d1))),
            ])
        for f in sample_maps:
            cf = self.functorial(f)
            out.append((f"end0_natural_{f.name}", Verdict(
                self.end_inclusion(f.dom, 0).then(cf).same_mapping(
                    f.then(self.end_inclusion(f.cod, 0))))))
            out.append((f"end1_natural_{f.name}", Verdict(
                self.end_inclusion(f.dom, 1).then(cf).same_mapping(
                    f.then(self.end_inclusion(f.cod, 1))))))
            out.append((f"proj_natural_{f.name}", Verdict(
                cf.then(self.proj(f.cod)).same_mapping(
                    self.proj(f.dom).then(f)))))
        return out


# -- path objects -------------------------------------------------------


def cylinder_factor(Zcyl: FinGroupoid, interval: IntervalObject) -> FinGroupoid:
    """Recover Z from a groupoid built as the chosen product Z x I."""
    from .limits import _product_index

    prod = _product_index.get(id(Zcyl))
    if prod is not None and prod.proj2.cod is interval.gpd:
        return prod.proj1.cod
    raise CompositionError(
        f"{Zcyl.name!r} was not built as a chosen cylinder by "
        f"{interval.gpd.name!r}; recovering the factor needs the "
        f"cached product")


def _path_name(interval: IntervalObject, mor_map):
    return tuple(mor_map[m] for m in interval.gpd.morphisms)


class PathObjectFactorization:
    """The fiberwise path object of p: A -> X by an interval.

    Points are functors from the interval into A with constant
    projection to X; a morphism from w to w' is a family of A-morphisms
    u_i: w(i) -> w'(i), one per interval object, natural in i, all lying
    over a single morphism of X.  Point names are the tuple of values on
    interval morphisms; morphism names are (source, target, components).

    Carries the factorization maps rho (constant path), eps0/eps1
    (endpoint evaluation), base (projection to X), and the transpose
    bijection between maps Z -> P over X and maps Z x I -> A that are
    fiberwise in the interval direction.
    """

    __slots__ = ("p", "interval", "gpd", "base", "rho", "eps0", "eps1",
                 "path_obj", "path_mor", "comps", "_eval")

    def __init__(self, p: GroupoidMap, interval: IntervalObject,
                 name: Optional[str] = None, guard: SizeGuard = None):
        self.p = p
        self.interval = interval
        A, X = p.dom, p.cod
        I = interval.gpd
        name = name or f"P({p.name})"

        self.path_obj: Dict = {}
        self.path_mor: Dict = {}
        for w in enumerate_maps(I, A, guard=guard):
            x = p.obj_map[w.obj_map[I.objects[0]]]
            if all(p.mor_map[w.mor_map[m]] == X.id(x) for m in I.morphisms):
                pname = _path_name(interval, w.mor_map)
                self.path_obj[pname] = dict(w.obj_map)
                self.path_mor[pname] = dict(w.mor_map)
        objects = sort_names(self.path_obj)

        self.comps: Dict = {}
        morphisms = {}
        for s in objects:
            for t in objects:
                for comps in self._transformations(s, t):
                    mname = (s, t, tuple(comps[i] for i in I.objects))
                    morphisms[mname] = (s, t)
                    self.comps[mname] = comps
        table = {}
        for m1, (s1, t1) in morphisms.items():
            for m2, (s2, t2) in morphisms.items():
                if t1 == s2:
                    comps = {i: A.then(self.comps[m1][i], self.comps[m2][i])
                             for i in I.objects}
                    table[(m1, m2)] = (s1, t2,
                                       tuple(comps[i] for i in I.objects))
        identity = {s: (s, s, tuple(A.id(self.path_obj[s][i])
                                    for i in I.objects))
                    for s in objects}
        inverse = {m: (t, s, tuple(A.inv(c) for c in m[2]))
                   for m, (s, t) in morphisms.items()}
        self.gpd = FinGroupoid(name, objects, morphisms, table,
                               identity=identity, inverse=inverse,
                               validate=False)

        i_any = I.objects[0]
        self.base = GroupoidMap(
            f"base({name})", self.gpd, X,
            {s: p.obj_map[self.path_obj[s][i_any]] for s in objects},
            {m: p.mor_map[self.comps[m][i_any]] for m in morphisms},
            validate=False)
        self.rho = GroupoidMap(
            f"rho({name})", A, self.gpd,
            {a: self.constant_path(a) for a in A.objects},
            {u: (self.constant_path(A.src(u)), self.constant_path(A.tgt(u)),
                 tuple(u for _ in I.objects)) for u in A.morphisms},
            validate=False)
        self.eps0 = self.eval_at(interval.i0, f"eps0({name})")
        self.eps1 = self.eval_at(interval.i1, f"eps1({name})")
        self._eval = None

    def _transformations(self, s, t):
        """Families u_i: s(i) -> t(i), natural, over one X-morphism."""
        A, X, I = self.p.dom, self.p.cod, self.interval.gpd
        ws_obj, wt_obj = self.path_obj[s], self.path_obj[t]
        ws_mor, wt_mor = self.path_mor[s], self.path_mor[t]
        results = []
        first = I.objects[0]
        for u0 in A.hom(ws_obj[first], wt_obj[first]):
            comps = {first: u0}
            ok = True
            # propagate along interval morphisms out of known objects
            frontier = [first]
            while frontier and ok:
                new = []
                for i in frontier:
                    for m in I.star(i):
                        j = I.tgt(m)
                        # naturality: ws(m) ; u_j = u_i ; wt(m)
                        forced = A.then(A.then(A.inv(ws_mor[m]), comps[i]),
                                        wt_mor[m])
                        if j in comps:
                            if comps[j] != forced:
                                ok = False
                                break
                        else:
                            comps[j] = forced
                            new.append(j)
                    if not ok:
                        break
                frontier = new
            if not ok or set(comps) != set(I.objects):
                continue
            over = self.p.mor_map[comps[first]]
            if any(self.p.mor_map[comps[i]] != over for i in I.objects):
                continue
            if all(A.then(ws_mor[m], comps[I.tgt(m)])
                   == A.then(comps[I.src(m)], wt_mor[m])
                   for m in I.morphisms):
                results.append(comps)
        return results

    # -- structure maps -------------------------------------------------

    def constant_path(self, a):
        A = self.p.dom
        return tuple(A.id(a) for _ in self.interval.gpd.morphisms)

    def eval_at(self, i, name=None) -> GroupoidMap:
        """Evaluation P -> A at an interval object i."""
        return GroupoidMap(
            name or f"ev[{i}]({self.gpd.name})", self.gpd, self.p.dom,
            {s: self.path_obj[s][i] for s in self.gpd.objects},
            {m: self.comps[m][i] for m in self.gpd.morphisms},
            validate=False)

    def endpoints(self):
        return self.eps0, self.eps1

    # -- transposition --------------------------------------------------

    def transpose(self, h: GroupoidMap, name=None) -> GroupoidMap:
        """Turn h: Z x I -> A, fiberwise in the interval direction, into
        Z -> P.  Raises if h moves the X-fiber along the interval."""
        I = self.interval.gpd
        # domain must be the chosen product Z x I; recover Z from the cache
        Z = self._cylinder_factor(h.dom)
        A, X, p = self.p.dom, self.p.cod, self.p
        obj_map = {}
        for z in Z.objects:
            mor_map_w = {m: h.mor_map[(Z.id(z), m)] for m in I.morphisms}
            x = p.obj_map[h.obj_map[(z, I.objects[0])]]
            for m in I.morphisms:
                if p.mor_map[mor_map_w[m]] != X.id(x):
                    raise CompositionError(
                        f"{h.name!r} is not fiberwise over the base: "
                        f"object {z!r} moves along the interval")
            pname = _path_name(self.interval, mor_map_w)
            if pname not in self.path_obj:
                raise CompositionError(
                    f"{h.name!r} produced a path outside {self.gpd.name!r}")
            obj_map[z] = pname
        mor_map = {}
        for u in Z.morphisms:
            s, t = obj_map[Z.src(u)], obj_map[Z.tgt(u)]
            mor_map[u] = (s, t, tuple(h.mor_map[(u, I.id(i))]
                                      for i in I.objects))
        return GroupoidMap(name or f"tr({h.name})", Z, self.gpd,
                           obj_map, mor_map, validate=False)

    def untranspose(self, k: GroupoidMap, name=None) -> GroupoidMap:
        """Turn k: Z -> P into Z x I -> A."""
        assert k.cod == self.gpd, "untranspose expects a map into the paths"
        I = self.interval.gpd
        A = self.p.dom
        Z = k.dom
        cyl = product(Z, I)
        obj_map = {(z, i): self.path_obj[k.obj_map[z]][i]
                   for (z, i) in cyl.gpd.objects}
        mor_map = {}
        for (u, m) in cyl.gpd.morphisms:
            w_src = self.path_mor[k.obj_map[Z.src(u)]]
            comps = self.comps[k.mor_map[u]]
            mor_map[(u, m)] = A.then(w_src[m], comps[I.tgt(m)])
        return GroupoidMap(name or f"untr({k.name})", cyl.gpd, A,
                           obj_map, mor_map, validate=False)

    def eval_map(self) -> GroupoidMap:
        """P x I -> A, the counit of transposition."""
        if self._eval is None:
            self._eval = self.untranspose(identity_map(self.gpd),
                                          name=f"eval({self.gpd.name})")
        return self._eval

    def _cylinder_factor(self, Zcyl: FinGroupoid) -> FinGroupoid:
        return cylinder_factor(Zcyl, self.interval)

    # -- functorial action ---------------------------------------------

    def lift_map(self, g: GroupoidMap,
                 target: "PathObjectFactorization",
                 name=None) -> GroupoidMap:
        """P(g): paths of p to paths of p', for g: A -> A' over the bases
        (g then p' equals p then the identity of X, or more generally
        base-compatible: every path composed with g is again fiberwise)."""
        I = self.interval.gpd
        obj_map = {s: tuple(g.mor_map[part] for part in s)
                   for s in self.gpd.objects}
        for s, img in obj_map.items():
            if img not in target.path_obj:
                raise CompositionError(
                    f"image path {img!r} not in {target.gpd.name!r}")
        mor_map = {}
        for (s, t, comps) in self.gpd.morphisms:
            mor_map[(s, t, comps)] = (obj_map[s], obj_map[t],
                                      tuple(g.mor_map[c] for c in comps))
        return GroupoidMap(name or f"P({g.name})", self.gpd, target.gpd,
                           obj_map, mor_map, validate=False)

    def laws(self):
        """Factorization equations, as named verdicts."""
        A = self.p.dom
        ia = identity_map(A)
        return [
            ("rho_then_eps0", Verdict(
                self.rho.then(self.eps0).same_mapping(ia))),
            ("rho_then_eps1", Verdict(
                self.rho.then(self.eps1).same_mapping(ia))),
            ("rho_over_base", Verdict(
                self.rho.then(self.base).same_mapping(self.p))),
            ("eps0_over_base", Verdict(
                self.eps0.then(self.p).same_mapping(self.base))),
            ("eps1_over_base", Verdict(
                self.eps1.then(self.p).same_mapping(self.base))),
        ]


_pathobject_cache: dict = {}


def _map_key(p: GroupoidMap):
    return (p.dom.fingerprint(), p.cod.fingerprint(), p.name,
            tuple(sorted(p.obj_map.items(), key=lambda kv: namekey(kv[0]))),
            tuple(sorted(p.mor_map.items(), key=lambda kv: namekey(kv[0]))))


def relative_pathobject(p: GroupoidMap, interval: IntervalObject,
                        guard: SizeGuard = None) -> PathObjectFactorization:
    key = (_map_key(p), interval.gpd.fingerprint(), interval.name,
           interval.i0, interval.i1)
    hit = _pathobject_cache.get(key)
    if hit is None:
        hit = PathObjectFactorization(p, interval, guard=guard)
        _pathobject_cache[key] = hit
    return hit


def pathobject(A: FinGroupoid, interval: IntervalObject,
               guard: SizeGuard = None) -> PathObjectFactorization:
    """Absolute path object: the fiberwise one over the terminal base."""
    return relative_pathobject(to_terminal(A, interval.one), interval,
                               guard=guard)


def check_pullback_stability(p: GroupoidMap, f: GroupoidMap,
                             interval: IntervalObject,
                             guard: SizeGuard = None) -> Verdict:
    """Paths commute with base change: P(f*p) -> f*(P(p)) is an iso.

    f: Y -> X reindexes p: A -> X; a fiberwise path of the reindexed map
    is a pair (y, fiberwise path of p over f(y)), which is exactly a
    point of the pullback of P(p) along f.
    """
    from .limits import pullback

    P = relative_pathobject(p, interval, guard=guard)
    fstar = pullback(f, p)           # apex objects (y, a)
    P_re = relative_pathobject(fstar.proj1, interval, guard=guard)
    Pf = pullback(f, P.base)         # apex objects (y, path)

    I = interval.gpd
    obj_map = {}
    for s in P_re.gpd.objects:
        y = P_re.path_obj[s][I.objects[0]][0]
        inner = tuple(part[1] for part in s)
        obj_map[s] = (y, inner)
    mor_map = {}
    for (s, t, comps) in P_re.gpd.morphisms:
        u_y = comps[0][0]
        inner = (obj_map[s][1], obj_map[t][1],
                 tuple(c[1] for c in comps))
        mor_map[(s, t, comps)] = (u_y, inner)
    try:
        cmp = GroupoidMap("stab_cmp", P_re.gpd, Pf.apex, obj_map, mor_map,
                          validate=True)
    except (ModelError, KeyError) as exc:
        return Verdict.failed(f"comparison map ill formed: {exc}")
    if not cmp.is_iso():
        return Verdict.failed(
            f"comparison P({fstar.proj1.name}) -> f*P not an iso",
            witness=cmp)
    return Verdict.passed(witness=cmp)
