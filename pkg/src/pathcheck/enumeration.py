"""Exhaustive, deterministic enumeration of functors.

Enumeration is the independent oracle behind every search and
cross-check in the package, so it has to be exact, complete, and stable
under re-runs.  Functors A -> B are enumerated component by component:
a functor out of a connected groupoid is uniquely determined by the
image of a chosen base object, a group homomorphism out of the vertex
group, and an arbitrary morphism out of the image for every non-base
object (the image of the spanning tree edge).  This parameterization
hits every functor exactly once, which also gives cheap exact counts.

Size guards keep the enumeration at desk scale; exceeding a guard
raises instead of silently truncating.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from .groupoids import FinGroupoid, GroupoidMap, Verdict
from .names import namekey


class SizeGuardError(RuntimeError):
    """An enumeration refused to run because a size bound was exceeded."""

    def __init__(self, message, required=None, allowed=None):
        super().__init__(message)
        self.required = required
        self.allowed = allowed


@dataclass(frozen=True)
class SizeGuard:
    """Bounds for enumeration-backed operations.

    The domain guard is the product bound |objects| * |morphisms| <=
    max_objects * max_morphisms; max_results caps how many functors a
    single enumeration may produce.
    """

    max_objects: int = 8
    max_morphisms: int = 64
    max_box_dim: int = 3
    max_results: int = 500_000

    def check_domain(self, A: FinGroupoid, context=""):
        budget = self.max_objects * self.max_morphisms
        cost = A.n_objects * max(1, A.n_morphisms)
        if cost > budget:
            raise SizeGuardError(
                f"size guard exceeded{' in ' + context if context else ''}: "
                f"domain {A.name!r} needs bound {cost}, allowed {budget} "
                f"(|objects|*|morphisms| = {A.n_objects}*{A.n_morphisms})",
                required=cost, allowed=budget)

    def check_results(self, count, context=""):
        if count > self.max_results:
            raise SizeGuardError(
                f"size guard exceeded{' in ' + context if context else ''}: "
                f"enumeration would produce {count} results, allowed "
                f"{self.max_results}", required=count, allowed=self.max_results)


DEFAULT_GUARD = SizeGuard()


# -- group homomorphism enumeration ------------------------------------


def _generating_set(elements, mul, unit):
    """Greedy small generating set, scanning elements in canonical order."""
    gens = []
    closure = {unit}
    for e in elements:
        if e in closure:
            continue
        gens.append(e)
        frontier = {e}
        while frontier:
            new = set()
            for a in list(closure) + list(frontier):
                for b in frontier:
                    for c in (mul(a, b), mul(b, a)):
                        if c not in closure and c not in frontier and c not in new:
                            new.add(c)
            closure |= frontier
            frontier = new
    return gens


def _words_over(elements, gens, mul, unit):
    """Express every element as a word in the generators (BFS, shortest)."""
    words = {unit: ()}
    frontier = [unit]
    while frontier:
        new = []
        for e in frontier:
            for i, g in enumerate(gens):
                c = mul(e, g)
                if c not in words:
                    words[c] = words[e] + (i,)
                    new.append(c)
        frontier = new
    missing = [e for e in elements if e not in words]
    assert not missing, f"generators do not generate: missing {missing!r}"
    return words


def group_homs(G_elements, mul_G, unit_G, H_elements, mul_H, unit_H):
    """All group homomorphisms G -> H, deterministically ordered.

    Groups are given as element lists with multiplication tables; the
    element lists fix the enumeration order.
    """
    G_elements = list(G_elements)
    H_elements = list(H_elements)
    gens = _generating_set(G_elements, mul_G, unit_G)
    words = _words_over(G_elements, gens, mul_G, unit_G)
    homs = []
    for assignment in itertools.product(H_elements, repeat=len(gens)):
        phi = {}
        for e in G_elements:
            img = unit_H
            for i in words[e]:
                img = mul_H(img, assignment[i])
            phi[e] = img
        if all(phi[mul_G(a, b)] == mul_H(phi[a], phi[b])
               for a in G_elements for b in G_elements):
            if phi not in homs:
                homs.append(phi)
    return homs


# -- functor enumeration ------------------------------------------------


def _spanning_tree(A: FinGroupoid, component):
    """Base object and tree morphisms t[a]: base -> a, chosen by BFS in
    canonical morphism order (t[base] is the identity)."""
    base = min(component, key=namekey)
    tree = {base: A.id(base)}
    frontier = [base]
    while frontier:
        new = []
        for a in frontier:
            for m in A.star(a):
                b = A.tgt(m)
                if b not in tree:
                    tree[b] = A.then(tree[a], m)
                    new.append(b)
        frontier = new
    assert set(tree) == set(component), "component not connected"
    return base, tree


def _component_functors(A, B, component):
    """All functors defined on one connected component of A, as
    (obj_map, mor_map) dict pairs, in deterministic order."""
    base, tree = _spanning_tree(A, component)
    vertex_group = list(A.hom(base, base))
    others = [a for a in component if a != base]
    results = []
    for y in B.objects:
        loops_y = list(B.hom(y, y))
        homs = group_homs(vertex_group, A.then, A.id(base),
                          loops_y, B.then, B.id(y))
        star_y = list(B.star(y))
        for phi in homs:
            for choice in itertools.product(star_y, repeat=len(others)):
                s = {base: B.id(y)}
                s.update({a: m for a, m in zip(others, choice)})
                obj_map = {a: B.tgt(s[a]) for a in component}
                mor_map = {}
                for a in component:
                    for m in A.star(a):
                        b = A.tgt(m)
                        loop = A.then(A.then(tree[a], m), A.inv(tree[b]))
                        mor_map[m] = B.then(B.then(B.inv(s[a]), phi[loop]), s[b])
                results.append((obj_map, mor_map))
    return results


def count_maps(A: FinGroupoid, B: FinGroupoid) -> int:
    """Exact number of functors A -> B, from the component formula."""
    total = 1
    for component in A.components():
        base, _tree = _spanning_tree(A, component)
        vertex_group = list(A.hom(base, base))
        sub = 0
        for y in B.objects:
            homs = group_homs(vertex_group, A.then, A.id(base),
                              list(B.hom(y, y)), B.then, B.id(y))
            sub += len(homs) * len(B.star(y)) ** (len(component) - 1)
        total *= sub
    return total


_maps_cache: dict = {}


def enumerate_maps(A: FinGroupoid, B: FinGroupoid,
                   guard: SizeGuard = None) -> Tuple[GroupoidMap, ...]:
    """All functors A -> B in deterministic order (component-based)."""
    guard = guard or DEFAULT_GUARD
    guard.check_domain(A, context=f"enumerate_maps({A.name!r}, {B.name!r})")
    key = (A.fingerprint(), B.fingerprint(), A.name, B.name)
    hit = _maps_cache.get(key)
    if hit is not None:
        return hit
    guard.check_results(count_maps(A, B),
                        context=f"enumerate_maps({A.name!r}, {B.name!r})")
    per_component = [_component_functors(A, B, component)
                     for component in A.components()]
    maps = []
    for idx, pieces in enumerate(itertools.product(*per_component)):
        obj_map, mor_map = {}, {}
        for piece_obj, piece_mor in pieces:
            obj_map.update(piece_obj)
            mor_map.update(piece_mor)
        maps.append(GroupoidMap(f"map{idx}", A, B, obj_map, mor_map,
                                validate=False))
    result = tuple(maps)
    _maps_cache[key] = result
    return result


def brute_force_maps(A: FinGroupoid, B: FinGroupoid,
                     limit: int = 10_000_000) -> Tuple[GroupoidMap, ...]:
    """Raw filter over all object and morphism assignments.  Only viable
    for tiny inputs; kept as an independent cross-check of
    enumerate_maps."""
    from .groupoids import check_functor

    cost = len(B.objects) ** max(1, len(A.objects)) * \
        len(B.morphisms) ** max(1, len(A.morphisms))
    if cost > limit:
        raise SizeGuardError(f"brute force would try {cost} assignments",
                             required=cost, allowed=limit)
    found = []
    objs_A, mors_A = list(A.objects), list(A.morphisms)
    for obj_choice in itertools.product(B.objects, repeat=len(objs_A)):
        obj_map = dict(zip(objs_A, obj_choice))
        for mor_choice in itertools.product(B.morphisms, repeat=len(mors_A)):
            mor_map = dict(zip(mors_A, mor_choice))
            cand = GroupoidMap("cand", A, B, obj_map, mor_map, validate=False)
            if check_functor(cand):
                found.append(cand)
    return tuple(found)


def groupoids_isomorphic(A: FinGroupoid, B: FinGroupoid,
                         guard: SizeGuard = None) -> Optional[GroupoidMap]:
    """First isomorphism A -> B in enumeration order, or None."""
    if A.n_objects != B.n_objects or A.n_morphisms != B.n_morphisms:
        return None
    degrees_A = sorted(len(A.star(x)) for x in A.objects)
    degrees_B = sorted(len(B.star(x)) for x in B.objects)
    if degrees_A != degrees_B:
        return None
    for cand in enumerate_maps(A, B, guard=guard):
        if cand.is_iso():
            return cand
    return None


# -- functor groupoids (exponentials by an arbitrary groupoid) ----------


def natural_transformations(J, A, F: GroupoidMap, G: GroupoidMap):
    """All natural transformations F => G between functors J -> A.

    A transformation is determined on each connected component of J by
    one component morphism; candidates are propagated along a spanning
    tree and then checked against every morphism of J.
    """
    candidates_per_component = []
    for component in J.components():
        base, tree = _spanning_tree(J, component)
        local = []
        for alpha0 in A.hom(F.obj_map[base], G.obj_map[base]):
            comps = {}
            for a in component:
                t = tree[a]
                # alpha_a = F(t)^-1 ; alpha0 ; G(t)
                comps[a] = A.then(A.then(A.inv(F.mor_map[t]), alpha0),
                                  G.mor_map[t])
            local.append(comps)
        candidates_per_component.append(local)
    results = []
    for pieces in itertools.product(*candidates_per_component):
        comps = {}
        for piece in pieces:
            comps.update(piece)
        if all(A.then(F.mor_map[w], comps[J.tgt(w)])
               == A.then(comps[J.src(w)], G.mor_map[w])
               for w in J.morphisms):
            results.append(comps)
    return results


def _mapping_key(obj_map, mor_map):
    return (tuple(sorted(obj_map.items(), key=lambda kv: namekey(kv[0]))),
            tuple(sorted(mor_map.items(), key=lambda kv: namekey(kv[0]))))


class FunctorGroupoid:
    """The groupoid of functors J -> A and natural isomorphisms.

    Objects are named F0, F1, ... in enumeration order; a lookup table
    translates a functor's mapping back to its object name, so maps
    into the exponential can be built pointwise.
    """

    __slots__ = ("gpd", "J", "A", "functors", "obj_name", "components")

    def __init__(self, J: FinGroupoid, A: FinGroupoid, guard: SizeGuard = None):
        self.J = J
        self.A = A
        functors = enumerate_maps(J, A, guard=guard)
        self.functors = {f"F{i}": F for i, F in enumerate(functors)}
        self.obj_name = {_mapping_key(F.obj_map, F.mor_map): name
                         for name, F in self.functors.items()}
        objects = list(self.functors)
        morphisms = {}
        self.components = {}
        for sname, F in self.functors.items():
            for tname, G in self.functors.items():
                for k, comps in enumerate(
                        natural_transformations(J, A, F, G)):
                    mname = (sname, tname, k)
                    morphisms[mname] = (sname, tname)
                    self.components[mname] = comps
        comp_key = {m: tuple(sorted(c.items(), key=lambda kv: namekey(kv[0])))
                    for m, c in self.components.items()}
        by_data = {(morphisms[m][0], morphisms[m][1], comp_key[m]): m
                   for m in morphisms}
        table = {}
        for m1, (s1, t1) in morphisms.items():
            for m2, (s2, t2) in morphisms.items():
                if t1 == s2:
                    comps = {j: A.then(self.components[m1][j],
                                       self.components[m2][j])
                             for j in J.objects}
                    key = (s1, t2, tuple(sorted(comps.items(),
                                                key=lambda kv: namekey(kv[0]))))
                    table[(m1, m2)] = by_data[key]
        self.gpd = FinGroupoid(f"[{J.name},{A.name}]", objects, morphisms,
                               table, validate=False)

    def name_of(self, F: GroupoidMap):
        return self.obj_name[_mapping_key(F.obj_map, F.mor_map)]

    def mor_name_of(self, sname, tname, comps):
        want = tuple(sorted(comps.items(), key=lambda kv: namekey(kv[0])))
        for k in itertools.count():
            mname = (sname, tname, k)
            if mname not in self.components:
                break
            have = tuple(sorted(self.components[mname].items(),
                                key=lambda kv: namekey(kv[0])))
            if have == want:
                return mname
        raise KeyError(f"no natural transformation with components {comps!r}")


_functor_gpd_cache: dict = {}


def functor_groupoid(J: FinGroupoid, A: FinGroupoid,
                     guard: SizeGuard = None) -> FunctorGroupoid:
    key = (J.fingerprint(), A.fingerprint(), J.name, A.name)
    hit = _functor_gpd_cache.get(key)
    if hit is None:
        hit = FunctorGroupoid(J, A, guard=guard)
        _functor_gpd_cache[key] = hit
    return hit
