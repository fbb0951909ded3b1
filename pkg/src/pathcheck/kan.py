"""Cube powers, box shapes, and constructive box filling.

Powers of the interval give cubes; subgroupoids of a cube carve out
boundaries and open boxes.  Unions of faces are not closed under
composition, so shapes are taken as the subgroupoid generated by the
union; in the groupoid model this makes every shape of dimension two
and up fill the whole cube, and box problems there are consistency
checks rather than genuine extension problems.  The one-dimensional
case is where the lifting content lives.

The module also provides the two sides of the shape algebra: the
pushout product of two inclusions (a union inside the product of the
ambients) and the pullback-hom of an inclusion against a map (built
from functor groupoids), together with a brute-force weak
orthogonality check and the transposition equivalence between the two.

Box filling for a classified display works one direction at a time:
straighten the first cube direction into fiberwise paths using the
chosen transport, solve the remaining problem through the path
factorization (an exact pullback of the display), then shear back and
untranspose.  The output is re-verified against the original problem.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .groupoids import (CompositionError, FinGroupoid, GroupoidMap,
                        ModelError, Verdict, check_functor)
from .limits import product, pullback, to_terminal
from .names import namekey, sort_names
from .enumeration import SizeGuard, enumerate_maps, functor_groupoid
from .cylinder import IntervalObject, pathobject
from .universe import PathTypeStructure
from .fibration import LiftingStructure


def _ext_key(f: GroupoidMap):
    return (tuple(sorted(f.obj_map.items(), key=lambda kv: namekey(kv[0]))),
            tuple(sorted(f.mor_map.items(), key=lambda kv: namekey(kv[0]))))


# -- cube powers --------------------------------------------------------


_cube_cache: dict = {}


def cube(interval: IntervalObject, n: int) -> FinGroupoid:
    """The n-th power of the interval, nested to the left: the 0-cube
    is the terminal groupoid and the (n+1)-cube is (n-cube) x I."""
    assert n >= 0, "cube dimension must be nonnegative"
    key = (interval.gpd.fingerprint(), interval.name, n)
    hit = _cube_cache.get(key)
    if hit is None:
        if n == 0:
            hit = interval.one
        else:
            hit = product(cube(interval, n - 1), interval.gpd).gpd
        _cube_cache[key] = hit
    return hit


def cube_coords(n: int, cell) -> tuple:
    """Interval components of a cube cell (object or morphism), from
    the innermost direction outward."""
    out = []
    for _ in range(n):
        cell, last = cell
        out.append(last)
    out.reverse()
    return tuple(out)


def _nest(base, coords):
    cell = base
    for c in coords:
        cell = (cell, c)
    return cell


def cube_obj(interval: IntervalObject, n: int, coords) -> object:
    assert len(coords) == n, "wrong number of coordinates"
    return _nest(interval.one.objects[0], coords)


def cube_mor(interval: IntervalObject, n: int, coords) -> object:
    assert len(coords) == n, "wrong number of coordinates"
    return _nest(next(iter(interval.one.morphisms)), coords)


# -- subobjects ---------------------------------------------------------


class Subobject:
    """A subgroupoid of an ambient groupoid, with its inclusion.

    The carrier is rebuilt as a groupoid in its own right, which
    validates closure: a morphism set that is not closed under
    composition, identities, or inverses is rejected.
    """

    __slots__ = ("name", "ambient", "carrier", "inclusion")

    def __init__(self, ambient: FinGroupoid, objects, morphisms,
                 name: Optional[str] = None):
        self.ambient = ambient
        self.name = name or f"sub({ambient.name})"
        objs = sort_names(set(objects))
        try:
            mors = {m: ambient.morphisms[m]
                    for m in sorted(set(morphisms), key=namekey)}
        except KeyError as exc:
            raise ModelError(
                f"{self.name}: morphism {exc.args[0]!r} is not in the "
                f"ambient groupoid") from None
        table = {}
        for f in mors:
            for g in mors:
                if ambient.tgt(f) == ambient.src(g):
                    h = ambient.table[(f, g)]
                    if h in mors:
                        table[(f, g)] = h
        self.carrier = FinGroupoid(self.name, objs, mors, table)
        self.inclusion = GroupoidMap(
            f"incl({self.name})", self.carrier, ambient,
            {x: x for x in self.carrier.objects},
            {m: m for m in self.carrier.morphisms},
            validate=False)

    def is_full(self) -> bool:
        return (self.carrier.n_objects == self.ambient.n_objects
                and self.carrier.n_morphisms == self.ambient.n_morphisms)

    def __repr__(self):
        return (f"Subobject({self.name!r}: {self.carrier.n_objects} of "
                f"{self.ambient.n_objects} objects)")


def full_subobject(ambient: FinGroupoid, name=None) -> Subobject:
    return Subobject(ambient, ambient.objects, ambient.morphisms,
                     name=name or f"all({ambient.name})")


def empty_subobject(ambient: FinGroupoid, name=None) -> Subobject:
    return Subobject(ambient, (), (), name=name or f"none({ambient.name})")


def subgroupoid_closure(ambient: FinGroupoid, objects, morphisms):
    """Smallest closed (object, morphism) pair containing the input."""
    objs = set(objects)
    mors = set(morphisms)
    while True:
        before = (len(objs), len(mors))
        for m in list(mors):
            s, t = ambient.morphisms[m]
            objs.add(s)
            objs.add(t)
        for x in objs:
            mors.add(ambient.id(x))
        for m in list(mors):
            mors.add(ambient.inv(m))
        for f in list(mors):
            for g in list(mors):
                if ambient.tgt(f) == ambient.src(g):
                    mors.add(ambient.table[(f, g)])
        if (len(objs), len(mors)) == before:
            return frozenset(objs), frozenset(mors)


def generated_subobject(ambient: FinGroupoid, objects, morphisms,
                        name=None) -> Subobject:
    objs, mors = subgroupoid_closure(ambient, objects, morphisms)
    return Subobject(ambient, objs, mors, name=name)


def join(subs: List[Subobject], name=None) -> Subobject:
    """Union of subobjects of one ambient, closed under composition."""
    assert subs, "join needs at least one subobject"
    ambient = subs[0].ambient
    assert all(s.ambient == ambient for s in subs), \
        "join needs a common ambient"
    objs: set = set()
    mors: set = set()
    for s in subs:
        objs.update(s.carrier.objects)
        mors.update(s.carrier.morphisms)
    return generated_subobject(ambient, objs, mors, name=name)


def subobject_equal(a: Subobject, b: Subobject) -> bool:
    return (a.ambient == b.ambient
            and set(a.carrier.objects) == set(b.carrier.objects)
            and set(a.carrier.morphisms) == set(b.carrier.morphisms))


def transport_subobject(sub: Subobject, iso: GroupoidMap,
                        name=None) -> Subobject:
    """Image of a subobject along an isomorphism of ambients."""
    assert iso.dom == sub.ambient, "transport needs the matching ambient"
    assert iso.is_iso(), "transport needs an isomorphism"
    return Subobject(iso.cod,
                     [iso.obj_map[x] for x in sub.carrier.objects],
                     [iso.mor_map[m] for m in sub.carrier.morphisms],
                     name=name or sub.name)


# -- faces, boundaries, boxes ------------------------------------------


_shape_cache: dict = {}


def _interval_key(interval: IntervalObject):
    return (interval.gpd.fingerprint(), interval.name)


def face(interval: IntervalObject, n: int, k: int, end: int) -> Subobject:
    """The face of the n-cube at one end of direction k (1-based)."""
    assert 1 <= k <= n, f"direction {k} out of range for the {n}-cube"
    assert end in (0, 1)
    key = (_interval_key(interval), "face", n, k, end)
    hit = _shape_cache.get(key)
    if hit is None:
        e = interval.i0 if end == 0 else interval.i1
        eid = interval.gpd.id(e)
        C = cube(interval, n)
        objs = [c for c in C.objects if cube_coords(n, c)[k - 1] == e]
        mors = [m for m in C.morphisms if cube_coords(n, m)[k - 1] == eid]
        hit = Subobject(C, objs, mors, name=f"face({n},{k},{end})")
        _shape_cache[key] = hit
    return hit


def boundary(interval: IntervalObject, n: int) -> Subobject:
    """All faces of the n-cube, closed up; empty in dimension zero."""
    key = (_interval_key(interval), "bd", n)
    hit = _shape_cache.get(key)
    if hit is None:
        if n == 0:
            hit = empty_subobject(cube(interval, 0), name="bd0")
        else:
            faces = [face(interval, n, k, e) for k in range(1, n + 1)
                     for e in (0, 1)]
            hit = join(faces, name=f"bd{n}")
        _shape_cache[key] = hit
    return hit


def open_box(interval: IntervalObject, n: int,
             retained_end: int = 0) -> Subobject:
    """All faces except one end of the last direction, closed up.

    The retained end is the one whose face stays in the shape; the
    default keeps the 0-end, so the missing face is the far lid.
    """
    assert n >= 1, "no box shapes in dimension zero"
    assert retained_end in (0, 1)
    key = (_interval_key(interval), "box", n, retained_end)
    hit = _shape_cache.get(key)
    if hit is None:
        faces = [face(interval, n, k, e)
                 for k in range(1, n) for e in (0, 1)]
        faces.append(face(interval, n, n, retained_end))
        hit = join(faces, name=f"box{n}[{retained_end}]")
        _shape_cache[key] = hit
    return hit


def interval_boundary(interval: IntervalObject) -> Subobject:
    """The endpoints of the interval itself, as a subobject of it."""
    I = interval.gpd
    objs = {interval.i0, interval.i1}
    return Subobject(I, objs, [I.id(x) for x in objs], name="bdI")


def interval_end(interval: IntervalObject, end: int) -> Subobject:
    assert end in (0, 1)
    e = interval.i0 if end == 0 else interval.i1
    return Subobject(interval.gpd, [e], [interval.gpd.id(e)],
                     name=f"end{end}")


def merge_iso(interval: IntervalObject, m: int, n: int) -> GroupoidMap:
    """Reassociation (m-cube) x (n-cube) -> (m+n)-cube, concatenating
    coordinates."""
    dom = product(cube(interval, m), cube(interval, n)).gpd
    cod = cube(interval, m + n)
    obj_map = {(a, b): cube_obj(interval, m + n,
                                cube_coords(m, a) + cube_coords(n, b))
               for (a, b) in dom.objects}
    mor_map = {(u, v): cube_mor(interval, m + n,
                                cube_coords(m, u) + cube_coords(n, v))
               for (u, v) in dom.morphisms}
    out = GroupoidMap(f"merge({m},{n})", dom, cod, obj_map, mor_map,
                      validate=False)
    assert out.is_iso(), "coordinate merge must be a bijective renaming"
    return out


def left_merge_iso(interval: IntervalObject, n: int) -> GroupoidMap:
    """I x (n-cube) -> (n+1)-cube, the interval becoming direction 1."""
    dom = product(interval.gpd, cube(interval, n)).gpd
    cod = cube(interval, n + 1)
    obj_map = {(i, c): cube_obj(interval, n + 1,
                                (i,) + cube_coords(n, c))
               for (i, c) in dom.objects}
    mor_map = {(w, v): cube_mor(interval, n + 1,
                                (w,) + cube_coords(n, v))
               for (w, v) in dom.morphisms}
    out = GroupoidMap(f"lmerge({n})", dom, cod, obj_map, mor_map,
                      validate=False)
    assert out.is_iso(), "coordinate merge must be a bijective renaming"
    return out


# -- pushout product and pullback-hom ----------------------------------


def pushout_product(a: Subobject, b: Subobject, name=None) -> Subobject:
    """The union (A x D) cup (C x B) inside C x D, closed up, for
    inclusions a: A -> C and b: B -> D."""
    amb = product(a.ambient, b.ambient).gpd
    aobj, amor = set(a.carrier.objects), set(a.carrier.morphisms)
    bobj, bmor = set(b.carrier.objects), set(b.carrier.morphisms)
    objs = [(x, y) for (x, y) in amb.objects if x in aobj or y in bobj]
    mors = [(u, v) for (u, v) in amb.morphisms if u in amor or v in bmor]
    return generated_subobject(amb, objs, mors,
                               name=name or f"({a.name})*({b.name})")


def power_map(J: FinGroupoid, f: GroupoidMap,
              guard: SizeGuard = None) -> GroupoidMap:
    """Postcomposition with f on functor groupoids out of J."""
    FY = functor_groupoid(J, f.dom, guard=guard)
    FX = functor_groupoid(J, f.cod, guard=guard)
    obj_map = {fn: FX.name_of(F.then(f)) for fn, F in FY.functors.items()}
    mor_map = {}
    for mname, (s, t) in FY.gpd.morphisms.items():
        comps = FY.components[mname]
        mor_map[mname] = FX.mor_name_of(
            obj_map[s], obj_map[t],
            {j: f.mor_map[c] for j, c in comps.items()})
    return GroupoidMap(f"({f.name}^{J.name})", FY.gpd, FX.gpd,
                       obj_map, mor_map, validate=False)


def restriction_map(sub: Subobject, A: FinGroupoid,
                    guard: SizeGuard = None) -> GroupoidMap:
    """Precomposition with an inclusion on functor groupoids into A."""
    FD = functor_groupoid(sub.ambient, A, guard=guard)
    FB = functor_groupoid(sub.carrier, A, guard=guard)
    obj_map = {fn: FB.name_of(sub.inclusion.then(F))
               for fn, F in FD.functors.items()}
    mor_map = {}
    for mname, (s, t) in FD.gpd.morphisms.items():
        comps = FD.components[mname]
        mor_map[mname] = FB.mor_name_of(
            obj_map[s], obj_map[t],
            {j: comps[j] for j in sub.carrier.objects})
    return GroupoidMap(f"res({sub.name},{A.name})", FD.gpd, FB.gpd,
                       obj_map, mor_map, validate=False)


class PullbackHom:
    """The comparison from the full power of f to the corner glued from
    the restricted power and the base power, for an inclusion i:

        Y^D  -->  Y^B x_{X^B} X^D
    """

    __slots__ = ("sub", "f", "corner", "cmp")

    def __init__(self, sub: Subobject, f: GroupoidMap,
                 guard: SizeGuard = None):
        self.sub = sub
        self.f = f
        rY = restriction_map(sub, f.dom, guard=guard)
        rX = restriction_map(sub, f.cod, guard=guard)
        fD = power_map(sub.ambient, f, guard=guard)
        fB = power_map(sub.carrier, f, guard=guard)
        self.corner = pullback(fB, rX)
        self.cmp = self.corner.mediate(rY, fD,
                                       name=f"({sub.name}=>{f.name})")


def pullback_hom(sub: Subobject, f: GroupoidMap,
                 guard: SizeGuard = None) -> PullbackHom:
    return PullbackHom(sub, f, guard=guard)


def check_path_power_identity(interval: IntervalObject, A: FinGroupoid,
                              guard: SizeGuard = None) -> Verdict:
    """The pullback-hom of the endpoint inclusion against A -> 1 is the
    endpoint evaluation out of the path object.

    Exhibits isos from the functor-groupoid power to the path object
    and from the corner to the endpoint pair, and checks the square on
    the nose.  When the two endpoints coincide the corner only reaches
    the diagonal, so the pair-side comparison is required to be a mono
    rather than an iso.
    """
    I = interval.gpd
    bd = interval_boundary(interval)
    ph = pullback_hom(bd, to_terminal(A, interval.one), guard=guard)
    P = pathobject(A, interval, guard=guard)
    AxA = product(A, A)
    ends = AxA.pair(P.eps0, P.eps1, name=f"ends({A.name})")

    FY = functor_groupoid(I, A, guard=guard)
    alpha_obj = {}
    for fn, F in FY.functors.items():
        pname = tuple(F.mor_map[m] for m in I.morphisms)
        if pname not in P.path_obj:
            return Verdict.failed(
                f"functor {fn} is not a path of {A.name}", witness=fn)
        alpha_obj[fn] = pname
    alpha_mor = {}
    for mname, (s, t) in FY.gpd.morphisms.items():
        comps = FY.components[mname]
        alpha_mor[mname] = (alpha_obj[s], alpha_obj[t],
                            tuple(comps[i] for i in I.objects))
    try:
        alpha = GroupoidMap(f"paths_as_functors({A.name})", FY.gpd, P.gpd,
                            alpha_obj, alpha_mor, validate=True)
    except ModelError as exc:
        return Verdict.failed(f"power-to-paths comparison ill formed: {exc}")
    if not alpha.is_iso():
        return Verdict.failed("power-to-paths comparison is not an iso")

    FB = functor_groupoid(bd.carrier, A, guard=guard)
    corner = ph.corner
    mu_obj = {(yb, xd): (FB.functors[yb].obj_map[interval.i0],
                         FB.functors[yb].obj_map[interval.i1])
              for (yb, xd) in corner.apex.objects}
    mu_mor = {}
    for (m1, m2) in corner.apex.morphisms:
        comps = FB.components[m1]
        s, t = corner.apex.morphisms[(m1, m2)]
        mu_mor[(m1, m2)] = (comps[interval.i0], comps[interval.i1])
    try:
        mu = GroupoidMap(f"corner_to_pair({A.name})", corner.apex, AxA.gpd,
                         mu_obj, mu_mor, validate=True)
    except ModelError as exc:
        return Verdict.failed(f"corner-to-pair comparison ill formed: {exc}")

    square = alpha.then(ends).same_mapping(ph.cmp.then(mu))
    if not square:
        return Verdict.failed(
            "endpoint square does not commute with the comparisons")
    if interval.i0 != interval.i1:
        if not mu.is_iso():
            return Verdict.failed(
                "corner-to-pair comparison is not an iso")
    else:
        if not mu.is_mono():
            return Verdict.failed(
                "corner-to-pair comparison is not a mono")
    return Verdict.passed(
        reason="power iso, corner comparison, and endpoint square exact",
        witness=(alpha, mu))


# -- weak orthogonality -------------------------------------------------


def _mapping_data(f: GroupoidMap):
    return (tuple(sorted(f.obj_map.items(), key=lambda kv: namekey(kv[0]))),
            tuple(sorted(f.mor_map.items(), key=lambda kv: namekey(kv[0]))))


def check_weak_orthogonality(x: GroupoidMap, y: GroupoidMap,
                             guard: SizeGuard = None) -> Verdict:
    """Every commuting square from x to y admits a diagonal filler.

    Pure enumeration; the witness of a failure is the unfillable
    square (top, bottom).
    """
    diagonals = enumerate_maps(x.cod, y.dom, guard=guard)
    index = {(_mapping_data(x.then(d)), _mapping_data(d.then(y)))
             for d in diagonals}
    squares = 0
    for u in enumerate_maps(x.dom, y.dom, guard=guard):
        uy = u.then(y)
        for v in enumerate_maps(x.cod, y.cod, guard=guard):
            if not x.then(v).same_mapping(uy):
                continue
            squares += 1
            if (_mapping_data(u), _mapping_data(v)) not in index:
                return Verdict.failed(
                    f"square with top {u.name!r} and bottom {v.name!r} "
                    f"has no diagonal", witness=(u, v))
    return Verdict.passed(reason=f"{squares} squares, all with diagonals")


def adjunction_transpose_check(a: Subobject, b: Subobject,
                               c: GroupoidMap,
                               guard: SizeGuard = None) -> Verdict:
    """Orthogonality of the pushout product against c agrees with
    orthogonality of a against the pullback-hom of b into c."""
    left = check_weak_orthogonality(pushout_product(a, b).inclusion, c,
                                    guard=guard)
    ph = pullback_hom(b, c, guard=guard)
    right = check_weak_orthogonality(a.inclusion, ph.cmp, guard=guard)
    if bool(left) != bool(right):
        return Verdict.failed(
            f"transposition mismatch: product side {bool(left)}, "
            f"exponential side {bool(right)}", witness=(left, right))
    return Verdict.passed(
        reason=f"both sides agree ({'lift' if left else 'no lift'})",
        witness=(left, right))


def leibniz_identities(interval: IntervalObject,
                       n_max: int = 2) -> List[Tuple[str, Verdict]]:
    """Shape equalities: boxes decompose as boundary-product with an
    end, boundaries decompose as boundary-product with the interval
    boundary, and the product of two 1-boundaries is the 2-boundary."""
    out = []
    for n in range(0, n_max + 1):
        got = pushout_product(boundary(interval, n),
                              interval_end(interval, 0))
        want = open_box(interval, n + 1, retained_end=0)
        out.append((f"box{n + 1}_is_bd{n}_times_end0",
                    Verdict(subobject_equal(got, want),
                            witness=(got, want))))
    for n in range(1, n_max + 1):
        pp = pushout_product(interval_boundary(interval),
                             boundary(interval, n - 1))
        got = transport_subobject(pp, left_merge_iso(interval, n - 1))
        want = boundary(interval, n)
        out.append((f"bd{n}_is_bdI_times_bd{n - 1}",
                    Verdict(subobject_equal(got, want),
                            witness=(got, want))))
    pp = pushout_product(boundary(interval, 1), boundary(interval, 1))
    got = transport_subobject(pp, merge_iso(interval, 1, 1))
    want = boundary(interval, 2)
    out.append(("bd1_times_bd1_is_bd2",
                Verdict(subobject_equal(got, want), witness=(got, want))))
    return out


# -- box problems -------------------------------------------------------


_parameter_box_cache: dict = {}


def parameter_box(interval: IntervalObject, Z: Optional[FinGroupoid],
                  n: int, retained_end: int = 0):
    """The carrier Z x (n-cube) and the box shape Z x (open box)."""
    if Z is None:
        Z = interval.one
    key = (_interval_key(interval), Z.fingerprint(), Z.name,
           n, retained_end)
    hit = _parameter_box_cache.get(key)
    if hit is None:
        Cn = product(Z, cube(interval, n))
        bx = open_box(interval, n, retained_end=retained_end)
        objs = [(z, c) for z in Z.objects for c in bx.carrier.objects]
        mors = [(u, m) for u in Z.morphisms for m in bx.carrier.morphisms]
        box = Subobject(Cn.gpd, objs, mors, name=f"{Z.name}*{bx.name}")
        hit = (Cn, box)
        _parameter_box_cache[key] = hit
    return hit


def enumerate_box_problems(p: GroupoidMap, interval: IntervalObject,
                           n: int, Z: Optional[FinGroupoid] = None,
                           guard: SizeGuard = None) -> list:
    """All pairs (y on the box, x on the cube) that agree over p."""
    Cn, box = parameter_box(interval, Z, n)
    problems = []
    if box.is_full():
        # the lid is reached by closure, so the base is forced
        for y in enumerate_maps(box.carrier, p.dom, guard=guard):
            comp = y.then(p)
            x = GroupoidMap(f"under({y.name})", Cn.gpd, p.cod,
                            comp.obj_map, comp.mor_map, validate=False)
            problems.append((y, x))
        return problems
    for y in enumerate_maps(box.carrier, p.dom, guard=guard):
        over = y.then(p)
        for x in enumerate_maps(Cn.gpd, p.cod, guard=guard):
            if box.inclusion.then(x).same_mapping(over):
                problems.append((y, x))
    return problems


def brute_force_box_fillers(p: GroupoidMap, box: Subobject,
                            y: GroupoidMap, x: GroupoidMap,
                            guard: SizeGuard = None) -> list:
    """Every total map solving the box problem, by enumeration."""
    return [d for d in enumerate_maps(x.dom, p.dom, guard=guard)
            if d.then(p).same_mapping(x)
            and box.inclusion.then(d).same_mapping(y)]


def verify_box_filler(p: GroupoidMap, box: Subobject, y: GroupoidMap,
                      x: GroupoidMap, h: GroupoidMap) -> Verdict:
    v = check_functor(h)
    if not v:
        return Verdict.failed(f"filler is not a functor: {v.reason}")
    if not h.then(p).same_mapping(x):
        return Verdict.failed("filler does not sit over the base")
    if not box.inclusion.then(h).same_mapping(y):
        return Verdict.failed("filler disagrees with the box data")
    return Verdict.passed()


# -- constructive filling ----------------------------------------------


class KanStructure:
    """Box filler for a universe display with path types and transport.

    Straightening and shearing need the chosen transport to compose
    strictly and to fix identities, which the canonical structure on a
    classifier does; anything weaker is rejected up front.
    """

    __slots__ = ("pts", "lift", "interval", "universe", "_ext", "_cmp",
                 "_cmp_inv", "_extend_cache")

    def __init__(self, pts: PathTypeStructure, lift: LiftingStructure):
        self.pts = pts
        self.lift = lift
        self.interval = pts.interval
        self.universe = pts.universe
        if not lift.p.same_mapping(pts.universe.proj):
            raise ModelError(
                "the lifting structure must live on the universe display")
        if lift.table is None:
            raise ModelError("box filling needs an entry table")
        if not lift.is_normal_table():
            raise ModelError("box filling needs identity entries at "
                             "identities")
        if not lift.is_functorial_table():
            raise ModelError("box filling needs strictly composing "
                             "entries")
        self._ext = pts.universe.extend(pts.path_ty)
        self._cmp = pts.comparison()
        self._cmp_inv = self._cmp.inverse()
        self._extend_cache = {}

    def _extend(self, sigma: GroupoidMap):
        key = (sigma.dom.fingerprint(), sigma.name, _ext_key(sigma))
        hit = self._extend_cache.get(key)
        if hit is None:
            hit = self.universe.extend(sigma)
            self._extend_cache[key] = hit
        return hit

    # -- public entry points --------------------------------------------

    def fill(self, n: int, y: GroupoidMap, x: GroupoidMap,
             Z: Optional[FinGroupoid] = None,
             name: Optional[str] = None) -> GroupoidMap:
        """Solve an n-box problem for the universe display and verify
        the answer against the problem before returning it."""
        assert n >= 1, "box problems start in dimension one"
        if Z is None:
            Z = self.interval.one
        U = self.universe
        Cn, box = parameter_box(self.interval, Z, n)
        if x.dom != Cn.gpd or x.cod != U.ty:
            raise CompositionError(
                f"base {x.name!r} must map the cube carrier to types")
        if y.dom != box.carrier or y.cod != U.tm:
            raise CompositionError(
                f"box data {y.name!r} must map the box to terms")
        if not y.then(U.proj).same_mapping(box.inclusion.then(x)):
            raise CompositionError(
                f"({y.name!r}, {x.name!r}) is not a box problem: the "
                f"data does not sit over the base")
        h = self._fill(n, y, x, Z)
        h = GroupoidMap(name or f"boxfill{n}({y.name})", Cn.gpd, U.tm,
                        h.obj_map, h.mor_map, validate=False)
        v = verify_box_filler(U.proj, box, y, x, h)
        if not v:
            raise ModelError(f"box filler failed re-verification: "
                             f"{v.reason}")
        return h

    def fill_display(self, sigma: GroupoidMap, n: int, y: GroupoidMap,
                     x: GroupoidMap, Z: Optional[FinGroupoid] = None,
                     name: Optional[str] = None) -> GroupoidMap:
        """Solve an n-box problem for the display of a classified
        family by solving the underlying universe problem and
        mediating back through the classifying pullback."""
        U = self.universe
        ext = self._extend(sigma)
        Cn, box = parameter_box(self.interval, Z, n)
        if not y.then(ext.proj1).same_mapping(box.inclusion.then(x)):
            raise CompositionError(
                f"({y.name!r}, {x.name!r}) is not a box problem for "
                f"the display of {sigma.name!r}")
        hstar = self.fill(n, y.then(ext.proj2), x.then(sigma), Z)
        h = ext.mediate(x, hstar,
                        name=name or f"boxfill{n}({y.name})")
        v = verify_box_filler(ext.proj1, box, y, x, h)
        if not v:
            raise ModelError(f"display box filler failed "
                             f"re-verification: {v.reason}")
        return h

    # -- the recursion --------------------------------------------------

    def _fill(self, n, y, x, Z):
        if n == 1:
            return self._fill_base(y, x, Z)
        return self._fill_step(n, y, x, Z)

    def _fill_base(self, y, x, Z):
        """A 1-box problem is a cylinder problem over Z with a point
        context in the cube factor."""
        interval = self.interval
        I = interval.gpd
        t_obj = interval.one.objects[0]
        t_mor = next(iter(interval.one.morphisms))
        cyl = product(Z, I)
        C1 = product(Z, cube(interval, 1))
        reshape = GroupoidMap(
            "cyl_as_cube", cyl.gpd, C1.gpd,
            {(z, i): (z, (t_obj, i)) for (z, i) in cyl.gpd.objects},
            {(u, m): (u, (t_mor, m)) for (u, m) in cyl.gpd.morphisms},
            validate=False)
        y0 = GroupoidMap(
            f"start({y.name})", Z, self.universe.tm,
            {z: y.obj_map[(z, (t_obj, interval.i0))] for z in Z.objects},
            {u: y.mor_map[(u, (t_mor, I.id(interval.i0)))]
             for u in Z.morphisms},
            validate=False)
        filled = self.lift.lift(y0, reshape.then(x))
        return reshape.inverse().then(filled)

    def _fill_step(self, n, y, x, Z):
        """Straighten direction one, recurse through the path
        factorization, then shear back."""
        interval = self.interval
        I = interval.gpd
        U = self.universe
        Tm, Ty = U.tm, U.ty
        P = self.pts.P
        taus = interval.start_paths()
        Cprev_cube = cube(interval, n - 1)
        Cprev = product(Z, Cprev_cube)
        Bprev = parameter_box(interval, Z, n - 1)[1]

        def obj_at(cprime, i):
            return cube_obj(interval, n,
                            (i,) + cube_coords(n - 1, cprime))

        def mor_at(w, m1):
            return cube_mor(interval, n,
                            (m1,) + cube_coords(n - 1, w))

        def y_value(key, kind):
            try:
                return (y.obj_map if kind == "o" else y.mor_map)[key]
            except KeyError:
                raise ModelError(
                    f"box data {y.name!r} does not reach {key!r}; the "
                    f"box closure must cover the straightening sites "
                    f"in dimension {n}") from None

        # chosen base transports along the first direction, and the
        # backward lifts that straighten the data
        base_tau: Dict = {}
        back: Dict = {}
        for z in Z.objects:
            zid = Z.id(z)
            for cprime in Cprev_cube.objects:
                cid = Cprev_cube.id(cprime)
                for j in I.objects:
                    b = x.mor_map[(zid, mor_at(cid, taus[j]))]
                    base_tau[(z, cprime, j)] = b
                    yj = y_value((z, obj_at(cprime, j)), "o")
                    back[(z, cprime, j)] = self.lift.lift_mor(Ty.inv(b), yj)

        # the tube, straightened to fiberwise paths
        uv_obj = {}
        for (z, cprime) in Bprev.carrier.objects:
            cid = Cprev_cube.id(cprime)
            parts = []
            for m in I.morphisms:
                i, j = I.src(m), I.tgt(m)
                raw = y_value((Z.id(z), mor_at(cid, m)), "m")
                parts.append(Tm.then(
                    Tm.then(Tm.inv(back[(z, cprime, i)]), raw),
                    back[(z, cprime, j)]))
            pname = tuple(parts)
            if pname not in P.path_obj:
                raise ModelError(
                    f"straightened tube at {(z, cprime)!r} is not a "
                    f"fiberwise path")
            uv_obj[(z, cprime)] = pname
        uv_mor = {}
        for (u, w) in Bprev.carrier.morphisms:
            (zs, cs), (zt, ct) = Bprev.carrier.morphisms[(u, w)]
            comps = []
            for i in I.objects:
                mid = y_value((u, mor_at(w, I.id(i))), "m")
                comps.append(Tm.then(
                    Tm.then(Tm.inv(back[(zs, cs, i)]), mid),
                    back[(zt, ct, i)]))
            uv_mor[(u, w)] = (uv_obj[(zs, cs)], uv_obj[(zt, ct)],
                              tuple(comps))
        uv = GroupoidMap(f"tube{n}({y.name})", Bprev.carrier, P.gpd,
                         uv_obj, uv_mor, validate=False)

        # the bottom, as endpoint pairs of the straightened direction
        vp_obj = {}
        for (z, cprime) in Cprev.gpd.objects:
            a0 = y_value((z, obj_at(cprime, interval.i0)), "o")
            a1 = Tm.tgt(back[(z, cprime, interval.i1)])
            vp_obj[(z, cprime)] = (a0, a1)
        vp_mor = {}
        for (u, w) in Cprev.gpd.morphisms:
            (zs, cs), (zt, ct) = Cprev.gpd.morphisms[(u, w)]
            alpha0 = y_value((u, mor_at(w, I.id(interval.i0))), "m")
            raw1 = y_value((u, mor_at(w, I.id(interval.i1))), "m")
            alpha1 = Tm.then(
                Tm.then(Tm.inv(back[(zs, cs, interval.i1)]), raw1),
                back[(zt, ct, interval.i1)])
            vp_mor[(u, w)] = (alpha0, alpha1)
        vp = GroupoidMap(f"bottom{n}({y.name})", Cprev.gpd,
                         self.pts.pairs.apex, vp_obj, vp_mor,
                         validate=False)

        # recurse against the path factorization, an exact pullback of
        # the display, then mediate back to paths
        ystar = uv.then(self.pts.point)
        xstar = vp.then(self.pts.path_ty)
        dstar = self._fill(n - 1, ystar, xstar, Z)
        k = self._ext.mediate(vp, dstar).then(self._cmp_inv)

        # shear forward and untranspose into the full cube
        Cn = product(Z, cube(interval, n))
        fwd = {}
        h_obj = {}
        for (z, c) in Cn.gpd.objects:
            coords = cube_coords(n, c)
            i = coords[0]
            cprime = cube_obj(interval, n - 1, coords[1:])
            vi = P.path_obj[k.obj_map[(z, cprime)]][i]
            e = self.lift.lift_mor(base_tau[(z, cprime, i)], vi)
            fwd[(z, c)] = e
            h_obj[(z, c)] = Tm.tgt(e)
        h_mor = {}
        for (u, m) in Cn.gpd.morphisms:
            (zs, csrc), (zt, ctgt) = Cn.gpd.morphisms[(u, m)]
            mcoords = cube_coords(n, m)
            m1 = mcoords[0]
            w = cube_mor(interval, n - 1, mcoords[1:])
            sprime = cube_obj(interval, n - 1, cube_coords(n, csrc)[1:])
            wname = k.obj_map[(zs, sprime)]
            r = Tm.then(P.path_mor[wname][m1],
                        P.comps[k.mor_map[(u, w)]][I.tgt(m1)])
            h_mor[(u, m)] = Tm.then(
                Tm.then(Tm.inv(fwd[(zs, csrc)]), r), fwd[(zt, ctgt)])
        return GroupoidMap(f"fill{n}({y.name})", Cn.gpd, Tm,
                           h_obj, h_mor, validate=False)


# -- whole-map checks ---------------------------------------------------


def check_kan(kan: KanStructure, N: int = 3,
              parameters: Optional[list] = None,
              exhaustive_to: int = 2,
              guard: SizeGuard = None) -> Verdict:
    """Fill and verify every box problem for the universe display up to
    dimension N, cross-checking against exhaustive search in low
    dimensions."""
    U = kan.universe
    interval = kan.interval
    contexts = list(parameters) if parameters else [interval.one]
    filled = 0
    for n in range(1, N + 1):
        for Z in contexts:
            _, box = parameter_box(interval, Z, n)
            for (y, x) in enumerate_box_problems(U.proj, interval, n, Z,
                                                 guard=guard):
                try:
                    h = kan.fill(n, y, x, Z)
                except (ModelError, CompositionError) as exc:
                    return Verdict.failed(
                        f"dimension {n}, context {Z.name}: {exc}",
                        witness=(n, y, x))
                if n <= exhaustive_to:
                    fillers = brute_force_box_fillers(U.proj, box, y, x,
                                                      guard=guard)
                    if not any(h.same_mapping(d) for d in fillers):
                        return Verdict.failed(
                            f"dimension {n}: constructed filler is not "
                            f"among the {len(fillers)} enumerated ones",
                            witness=(n, y, x, h))
                filled += 1
    return Verdict.passed(
        reason=f"filled and verified {filled} box problems up to "
               f"dimension {N}")


def check_kan_families(kan: KanStructure, contexts,
                       N: int = 3, exhaustive_to: int = 2,
                       guard: SizeGuard = None) -> Verdict:
    """Box filling for the display of every family over the given
    contexts, via the classifying pullback."""
    U = kan.universe
    interval = kan.interval
    filled = 0
    for ctx in contexts:
        for sigma in enumerate_maps(ctx, U.ty, guard=guard):
            ext = U.extend(sigma)
            for n in range(1, N + 1):
                _, box = parameter_box(interval, None, n)
                for (y, x) in enumerate_box_problems(
                        ext.proj1, interval, n, None, guard=guard):
                    try:
                        h = kan.fill_display(sigma, n, y, x)
                    except (ModelError, CompositionError) as exc:
                        return Verdict.failed(
                            f"family {sigma.name!r} over {ctx.name}, "
                            f"dimension {n}: {exc}",
                            witness=(sigma, n, y, x))
                    if n <= exhaustive_to:
                        fillers = brute_force_box_fillers(
                            ext.proj1, box, y, x, guard=guard)
                        if not any(h.same_mapping(d) for d in fillers):
                            return Verdict.failed(
                                f"family {sigma.name!r} over "
                                f"{ctx.name}, dimension {n}: filler "
                                f"not among the enumerated ones",
                                witness=(sigma, n, y, x, h))
                    filled += 1
    return Verdict.passed(
        reason=f"filled and verified {filled} display box problems up "
               f"to dimension {N}")


def check_kan_enumerative(p: GroupoidMap, interval: IntervalObject,
                          N: int = 1, Z: Optional[FinGroupoid] = None,
                          guard: SizeGuard = None) -> Verdict:
    """Box filling by pure search, for maps without chosen structure.

    Used as an independent oracle and as the negative control: a map
    that is not an isofibration already fails in dimension one.
    """
    solved = 0
    for n in range(1, N + 1):
        _, box = parameter_box(interval, Z, n)
        for (y, x) in enumerate_box_problems(p, interval, n, Z,
                                             guard=guard):
            if not brute_force_box_fillers(p, box, y, x, guard=guard):
                return Verdict.failed(
                    f"dimension {n}: box problem with no filler",
                    witness=(n, y, x))
            solved += 1
    return Verdict.passed(reason=f"{solved} box problems all fillable")
