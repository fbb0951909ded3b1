"""Chosen finite limits of groupoids: terminal object, binary products,
pullbacks, and the pullback recognizers.

All limits are chosen strictly: the product and pullback carriers have
objects and morphisms named by pairs, first leg then second leg.  Being
a pullback is tested by building the chosen pullback of the square's
cospan and checking that the canonical comparison map is an isomorphism
of presentations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .groupoids import (CompositionError, FinGroupoid, GroupoidMap, Verdict,
                        terminal_groupoid)


def to_terminal(A: FinGroupoid, one: FinGroupoid = None) -> GroupoidMap:
    if one is None:
        one = terminal_groupoid()
    return GroupoidMap(f"!_{A.name}", A, one,
                       {x: "*" for x in A.objects},
                       {m: "id" for m in A.morphisms},
                       validate=False)


@dataclass(frozen=True)
class Product:
    gpd: FinGroupoid
    proj1: GroupoidMap
    proj2: GroupoidMap

    def pair(self, u: GroupoidMap, v: GroupoidMap, name=None) -> GroupoidMap:
        """Mediating map <u, v> into the product."""
        assert u.dom == v.dom, "pairing legs must share a domain"
        if name is None:
            name = f"<{u.name},{v.name}>"
        return GroupoidMap(
            name, u.dom, self.gpd,
            {x: (u.obj_map[x], v.obj_map[x]) for x in u.dom.objects},
            {m: (u.mor_map[m], v.mor_map[m]) for m in u.dom.morphisms},
            validate=False)


_product_cache: dict = {}
_product_index: dict = {}  # id of the carrier -> Product, for O(1) recovery


def product(A: FinGroupoid, B: FinGroupoid) -> Product:
    """Chosen product A x B with pair-named objects and morphisms."""
    key = (A.fingerprint(), B.fingerprint(), A.name, B.name)
    hit = _product_cache.get(key)
    if hit is not None:
        return hit
    objects = [(a, b) for a in A.objects for b in B.objects]
    morphisms = {(m, n): ((A.src(m), B.src(n)), (A.tgt(m), B.tgt(n)))
                 for m in A.morphisms for n in B.morphisms}
    table = {}
    for (m1, n1), (_s, mid) in morphisms.items():
        for (m2, n2), (s2, _t) in morphisms.items():
            if mid == s2:
                table[((m1, n1), (m2, n2))] = (A.table[(m1, m2)], B.table[(n1, n2)])
    gpd = FinGroupoid(f"({A.name}x{B.name})", objects, morphisms, table,
                      identity={(a, b): (A.id(a), B.id(b)) for (a, b) in objects},
                      inverse={(m, n): (A.inv(m), B.inv(n)) for (m, n) in morphisms},
                      validate=False)
    proj1 = GroupoidMap("proj1", gpd, A,
                        {(a, b): a for (a, b) in objects},
                        {(m, n): m for (m, n) in morphisms}, validate=False)
    proj2 = GroupoidMap("proj2", gpd, B,
                        {(a, b): b for (a, b) in objects},
                        {(m, n): n for (m, n) in morphisms}, validate=False)
    result = Product(gpd, proj1, proj2)
    _product_cache[key] = result
    _product_index[id(gpd)] = result
    return result


@dataclass(frozen=True)
class CommutingSquare:
    """A square of functors:

        P  --top-->  C
        |left        |right
        v            v
        B --bottom-> D

    with top;right = left;bottom required at construction.
    """

    top: GroupoidMap
    left: GroupoidMap
    right: GroupoidMap
    bottom: GroupoidMap

    def __post_init__(self):
        assert self.top.dom == self.left.dom, "corner mismatch"
        assert self.top.cod == self.right.dom, "top/right mismatch"
        assert self.left.cod == self.bottom.dom, "left/bottom mismatch"
        assert self.right.cod == self.bottom.cod, "cospan codomain mismatch"
        if not self.top.then(self.right).same_mapping(self.left.then(self.bottom)):
            raise CompositionError("square does not commute")

    @property
    def corner(self) -> FinGroupoid:
        return self.top.dom


class PullbackSquare:
    """Chosen pullback of a cospan f: A -> C <- B : g.

    The apex has objects (a, b) with f(a) = g(b) and morphisms (m, n)
    with f(m) = g(n); proj1 and proj2 are the evident projections.
    """

    __slots__ = ("apex", "proj1", "proj2", "f", "g")

    def __init__(self, f: GroupoidMap, g: GroupoidMap):
        if f.cod != g.cod:
            raise CompositionError(
                f"pullback cospan mismatch: {f.name!r} into {f.cod.name!r} "
                f"but {g.name!r} into {g.cod.name!r}")
        A, B = f.dom, g.dom
        objects = [(a, b) for a in A.objects for b in B.objects
                   if f.obj_map[a] == g.obj_map[b]]
        morphisms = {(m, n): ((A.src(m), B.src(n)), (A.tgt(m), B.tgt(n)))
                     for m in A.morphisms for n in B.morphisms
                     if f.mor_map[m] == g.mor_map[n]}
        table = {}
        for (m1, n1), (_s, mid) in morphisms.items():
            for (m2, n2), (s2, _t) in morphisms.items():
                if mid == s2:
                    table[((m1, n1), (m2, n2))] = \
                        (A.table[(m1, m2)], B.table[(n1, n2)])
        self.apex = FinGroupoid(
            f"pb({f.name},{g.name})", objects, morphisms, table,
            identity={(a, b): (A.id(a), B.id(b)) for (a, b) in objects},
            inverse={(m, n): (A.inv(m), B.inv(n)) for (m, n) in morphisms},
            validate=False)
        self.proj1 = GroupoidMap("pb.proj1", self.apex, A,
                                 {(a, b): a for (a, b) in objects},
                                 {(m, n): m for (m, n) in morphisms},
                                 validate=False)
        self.proj2 = GroupoidMap("pb.proj2", self.apex, B,
                                 {(a, b): b for (a, b) in objects},
                                 {(m, n): n for (m, n) in morphisms},
                                 validate=False)
        self.f = f
        self.g = g

    def mediate(self, u: GroupoidMap, v: GroupoidMap, name=None) -> GroupoidMap:
        """The unique map <u, v> into the apex from a commuting cone."""
        assert u.dom == v.dom, "cone legs must share a domain"
        if not u.then(self.f).same_mapping(v.then(self.g)):
            raise CompositionError(
                f"cone ({u.name}, {v.name}) does not commute with the cospan")
        if name is None:
            name = f"<{u.name},{v.name}>"
        return GroupoidMap(
            name, u.dom, self.apex,
            {x: (u.obj_map[x], v.obj_map[x]) for x in u.dom.objects},
            {m: (u.mor_map[m], v.mor_map[m]) for m in u.dom.morphisms},
            validate=False)

    def as_square(self) -> CommutingSquare:
        return CommutingSquare(top=self.proj2, left=self.proj1,
                               right=self.g, bottom=self.f)


def pullback(f: GroupoidMap, g: GroupoidMap) -> PullbackSquare:
    return PullbackSquare(f, g)


def pullback_comparison(sq: CommutingSquare) -> GroupoidMap:
    """Canonical map from the square's corner to the chosen pullback of
    its cospan."""
    chosen = pullback(sq.bottom, sq.right)
    return chosen.mediate(sq.left, sq.top, name="compare")


def is_pullback(sq: CommutingSquare) -> Verdict:
    """A square is a pullback iff the canonical comparison map to the
    chosen pullback is an isomorphism of groupoids."""
    cmp = pullback_comparison(sq)
    if cmp.is_iso():
        return Verdict(True, "comparison map is an isomorphism", cmp)
    chosen = pullback(sq.bottom, sq.right)
    n_obj = len(set(cmp.obj_map.values()))
    n_mor = len(set(cmp.mor_map.values()))
    return Verdict.failed(
        f"comparison map not an isomorphism: hits {n_obj}/{chosen.apex.n_objects} "
        f"objects and {n_mor}/{chosen.apex.n_morphisms} morphisms", cmp)


def is_weak_pullback(sq: CommutingSquare,
                     guard=None) -> Optional[GroupoidMap]:
    """Search for a section of the comparison map into the chosen
    pullback; returns the first section in enumeration order, if any."""
    from .enumeration import enumerate_maps

    cmp = pullback_comparison(sq)
    chosen = pullback(sq.bottom, sq.right)
    ident_obj = {x: x for x in chosen.apex.objects}
    ident_mor = {m: m for m in chosen.apex.morphisms}
    for cand in enumerate_maps(chosen.apex, sq.corner, guard=guard):
        comp = cand.then(cmp)
        if comp.obj_map == ident_obj and comp.mor_map == ident_mor:
            return cand
    return None
