"""Finite groupoids presented by explicit composition tables, and the
functors between them.

A groupoid is stored as: a tuple of object names, a table of morphism
names with source and target, a total composition table on composable
pairs, an identity morphism per object and an inverse per morphism.
Equality of groupoids and of maps is on-the-nose equality of these
presentations; nothing is ever compared up to isomorphism unless an
operation says so explicitly.

The composition convention is diagrammatic throughout: ``then(f, g)`` is
"f followed by g", defined when tgt(f) = src(g).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from .names import namekey, sort_names


class CompositionError(ValueError):
    """Raised when maps are composed across mismatched (co)domains."""


class ModelError(ValueError):
    """Raised when a presentation fails to be a groupoid or a functor."""


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check: a boolean with an explanation and a witness.

    ``witness`` carries the first counterexample found (already in
    plain-name form) so failures can be re-checked independently.
    """

    ok: bool
    reason: str = ""
    witness: Any = None

    def __bool__(self) -> bool:
        return self.ok

    @staticmethod
    def passed(reason: str = "", witness: Any = None) -> "Verdict":
        return Verdict(True, reason, witness)

    @staticmethod
    def failed(reason: str, witness: Any = None) -> "Verdict":
        return Verdict(False, reason, witness)


class FinGroupoid:
    """A finite groupoid with a fixed, validated presentation."""

    __slots__ = (
        "name", "objects", "morphisms", "table", "identity", "inverse",
        "_fingerprint", "_by_source",
    )

    def __init__(self, name, objects, morphisms, table, identity=None,
                 inverse=None, validate=True):
        """morphisms: mapping mor-name -> (src, tgt); table: mapping
        (f, g) -> h for h = f-then-g.  identity and inverse are derived
        from the table when omitted."""
        self.name = name
        self.objects = sort_names(objects)
        self.morphisms = {m: (s, t) for m, (s, t) in
                          sorted(morphisms.items(), key=lambda kv: namekey(kv[0]))}
        self.table = dict(table)
        if identity is None:
            identity = self._derive_identity()
        self.identity = dict(identity)
        if inverse is None:
            inverse = self._derive_inverse()
        self.inverse = dict(inverse)
        by_source = {x: [] for x in self.objects}
        for m, (s, _t) in self.morphisms.items():
            by_source[s].append(m)
        self._by_source = by_source
        self._fingerprint = None
        if validate:
            self.validate()

    # -- basic structure ------------------------------------------------

    def src(self, m):
        return self.morphisms[m][0]

    def tgt(self, m):
        return self.morphisms[m][1]

    def id(self, x):
        return self.identity[x]

    def inv(self, m):
        return self.inverse[m]

    def then(self, f, g):
        """Composite f-then-g."""
        if self.tgt(f) != self.src(g):
            raise CompositionError(
                f"{self.name}: cannot compose {f!r} then {g!r}: "
                f"tgt {self.tgt(f)!r} != src {self.src(g)!r}")
        return self.table[(f, g)]

    def star(self, x):
        """Morphisms with source x, in canonical order."""
        return tuple(self._by_source[x])

    def hom(self, x, y):
        return tuple(m for m in self._by_source[x] if self.tgt(m) == y)

    @property
    def n_objects(self):
        return len(self.objects)

    @property
    def n_morphisms(self):
        return len(self.morphisms)

    def is_discrete(self):
        return all(self.src(m) == self.tgt(m) and m == self.id(self.src(m))
                   for m in self.morphisms)

    def is_codiscrete(self):
        """Exactly one morphism between every ordered pair of objects."""
        return all(len(self.hom(x, y)) == 1
                   for x in self.objects for y in self.objects)

    def components(self):
        """Connected components as sorted tuples of objects."""
        parent = {x: x for x in self.objects}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for m, (s, t) in self.morphisms.items():
            rs, rt = find(s), find(t)
            if rs != rt:
                parent[rs] = rt
        groups = {}
        for x in self.objects:
            groups.setdefault(find(x), []).append(x)
        return tuple(sort_names(g) for g in
                     sorted(groups.values(), key=lambda g: namekey(min(g, key=namekey))))

    # -- derivation helpers ---------------------------------------------

    def _derive_identity(self):
        identity = {}
        for x in self.objects:
            loops = [m for m, (s, t) in self.morphisms.items() if s == x and t == x]
            units = []
            for e in loops:
                left = all(self.table.get((e, g)) == g
                           for g, (s, _t) in self.morphisms.items() if s == x)
                right = all(self.table.get((f, e)) == f
                            for f, (_s, t) in self.morphisms.items() if t == x)
                if left and right:
                    units.append(e)
            if len(units) != 1:
                raise ModelError(
                    f"{self.name}: object {x!r} has {len(units)} identity "
                    f"candidates, expected exactly 1")
            identity[x] = units[0]
        return identity

    def _derive_inverse(self):
        inverse = {}
        for m, (s, t) in self.morphisms.items():
            candidates = [w for w, (ws, wt) in self.morphisms.items()
                          if ws == t and wt == s
                          and self.table.get((m, w)) == self.identity[s]
                          and self.table.get((w, m)) == self.identity[t]]
            if len(candidates) != 1:
                raise ModelError(
                    f"{self.name}: morphism {m!r} has {len(candidates)} "
                    f"inverse candidates, expected exactly 1")
            inverse[m] = candidates[0]
        return inverse

    # -- validation -----------------------------------------------------

    def validate(self):
        """Check the presentation is a groupoid; raise ModelError if not."""
        for m, (s, t) in self.morphisms.items():
            if s not in self.identity or t not in self.identity:
                raise ModelError(f"{self.name}: morphism {m!r} has endpoint "
                                 f"outside the object set")
        for x in self.objects:
            e = self.identity.get(x)
            if e is None or self.morphisms.get(e) != (x, x):
                raise ModelError(f"{self.name}: bad identity at {x!r}")
        # totality and typing of the table
        for f, (fs, ft) in self.morphisms.items():
            for g, (gs, gt) in self.morphisms.items():
                composable = ft == gs
                present = (f, g) in self.table
                if composable != present:
                    what = "missing" if composable else "spurious"
                    raise ModelError(
                        f"{self.name}: {what} composite for ({f!r}, {g!r})")
                if present:
                    h = self.table[(f, g)]
                    if self.morphisms.get(h) != (fs, gt):
                        raise ModelError(
                            f"{self.name}: composite ({f!r}, {g!r}) -> {h!r} "
                            f"has wrong endpoints")
        # units
        for m, (s, t) in self.morphisms.items():
            if self.table[(self.identity[s], m)] != m or \
               self.table[(m, self.identity[t])] != m:
                raise ModelError(f"{self.name}: identity law fails at {m!r}")
        # associativity on composable triples
        for f, (_fs, ft) in self.morphisms.items():
            for g in self._by_source[ft]:
                fg = self.table[(f, g)]
                for h in self._by_source[self.tgt(g)]:
                    if self.table[(fg, h)] != self.table[(f, self.table[(g, h)])]:
                        raise ModelError(
                            f"{self.name}: associativity fails on "
                            f"({f!r}, {g!r}, {h!r})")
        # inverses
        for m, (s, t) in self.morphisms.items():
            w = self.inverse.get(m)
            if w is None or self.morphisms.get(w) != (t, s) or \
               self.table[(m, w)] != self.identity[s] or \
               self.table[(w, m)] != self.identity[t]:
                raise ModelError(f"{self.name}: bad inverse for {m!r}")

    # -- identity and hashing -------------------------------------------

    def fingerprint(self):
        if self._fingerprint is None:
            self._fingerprint = hash((
                self.objects,
                tuple(self.morphisms.items()),
                tuple(sorted(self.table.items(),
                             key=lambda kv: (namekey(kv[0][0]), namekey(kv[0][1])))),
            ))
        return self._fingerprint

    def same_presentation(self, other):
        return (self.objects == other.objects
                and self.morphisms == other.morphisms
                and self.table == other.table)

    def __eq__(self, other):
        if not isinstance(other, FinGroupoid):
            return NotImplemented
        return self.same_presentation(other)

    def __hash__(self):
        return self.fingerprint()

    def __repr__(self):
        return (f"FinGroupoid({self.name!r}, {self.n_objects} objects, "
                f"{self.n_morphisms} morphisms)")


class GroupoidMap:
    """A functor between finite groupoids, given on objects and morphisms."""

    __slots__ = ("name", "dom", "cod", "obj_map", "mor_map")

    def __init__(self, name, dom, cod, obj_map, mor_map, validate=True):
        self.name = name
        self.dom = dom
        self.cod = cod
        self.obj_map = dict(obj_map)
        self.mor_map = dict(mor_map)
        if validate:
            verdict = check_functor(self)
            if not verdict:
                raise ModelError(f"{name}: {verdict.reason}")

    def on_obj(self, x):
        return self.obj_map[x]

    def on_mor(self, m):
        return self.mor_map[m]

    def then(self, other: "GroupoidMap") -> "GroupoidMap":
        """Diagrammatic composite self-then-other."""
        if self.cod is not other.cod and self.cod != other.dom:
            if self.cod != other.dom:
                raise CompositionError(
                    f"cannot compose {self.name!r} then {other.name!r}: "
                    f"codomain {self.cod.name!r} != domain {other.dom.name!r}")
        return GroupoidMap(
            f"({self.name};{other.name})", self.dom, other.cod,
            {x: other.obj_map[y] for x, y in self.obj_map.items()},
            {m: other.mor_map[w] for m, w in self.mor_map.items()},
            validate=False)

    def is_mono(self):
        return (len(set(self.obj_map.values())) == len(self.obj_map)
                and len(set(self.mor_map.values())) == len(self.mor_map))

    def is_iso(self):
        return (self.is_mono()
                and len(self.obj_map) == self.cod.n_objects
                and len(self.mor_map) == self.cod.n_morphisms)

    def inverse(self) -> "GroupoidMap":
        assert self.is_iso(), f"{self.name} is not an isomorphism"
        return GroupoidMap(
            f"{self.name}^-1", self.cod, self.dom,
            {y: x for x, y in self.obj_map.items()},
            {w: m for m, w in self.mor_map.items()},
            validate=False)

    def same_mapping(self, other):
        return (self.dom == other.dom and self.cod == other.cod
                and self.obj_map == other.obj_map
                and self.mor_map == other.mor_map)

    def __eq__(self, other):
        if not isinstance(other, GroupoidMap):
            return NotImplemented
        return self.same_mapping(other)

    def __hash__(self):
        return hash((self.dom.fingerprint(), self.cod.fingerprint(),
                     tuple(sorted(self.obj_map.items(), key=lambda kv: namekey(kv[0])))))

    def __repr__(self):
        return f"GroupoidMap({self.name!r}: {self.dom.name!r} -> {self.cod.name!r})"


def compose(f: GroupoidMap, g: GroupoidMap) -> GroupoidMap:
    """Diagrammatic composition: first f, then g."""
    return f.then(g)


def check_functor(f: GroupoidMap) -> Verdict:
    """Check totality and functoriality of a candidate map."""
    A, B = f.dom, f.cod
    for x in A.objects:
        if x not in f.obj_map:
            return Verdict.failed(f"object {x!r} not mapped", x)
        if f.obj_map[x] not in B.identity:
            return Verdict.failed(f"object {x!r} maps outside codomain", x)
    for m, (s, t) in A.morphisms.items():
        if m not in f.mor_map:
            return Verdict.failed(f"morphism {m!r} not mapped", m)
        w = f.mor_map[m]
        if w not in B.morphisms:
            return Verdict.failed(f"morphism {m!r} maps outside codomain", m)
        if B.morphisms[w] != (f.obj_map[s], f.obj_map[t]):
            return Verdict.failed(
                f"morphism {m!r} has mismatched endpoints under the map", m)
    for x in A.objects:
        if f.mor_map[A.id(x)] != B.id(f.obj_map[x]):
            return Verdict.failed(f"identity at {x!r} not preserved", x)
    for m, (_s, t) in A.morphisms.items():
        for g in A.star(t):
            if f.mor_map[A.table[(m, g)]] != \
               B.table[(f.mor_map[m], f.mor_map[g])]:
                return Verdict.failed(
                    f"composition not preserved on ({m!r}, {g!r})", (m, g))
    return Verdict.passed("functor")


def identity_map(A: FinGroupoid) -> GroupoidMap:
    return GroupoidMap(f"id_{A.name}", A, A,
                       {x: x for x in A.objects},
                       {m: m for m in A.morphisms},
                       validate=False)


def constant_map(A: FinGroupoid, B: FinGroupoid, obj, name=None) -> GroupoidMap:
    """The functor collapsing A onto the object obj of B."""
    return GroupoidMap(name or f"const_{obj}", A, B,
                       {x: obj for x in A.objects},
                       {m: B.id(obj) for m in A.morphisms},
                       validate=False)


# -- standard groupoids -------------------------------------------------


def empty_groupoid(name="0") -> FinGroupoid:
    return FinGroupoid(name, (), {}, {}, identity={}, inverse={})


def terminal_groupoid(name="1") -> FinGroupoid:
    return FinGroupoid(name, ("*",), {"id": ("*", "*")},
                       {("id", "id"): "id"})


def discrete_groupoid(objects, name=None) -> FinGroupoid:
    objects = tuple(objects)
    if name is None:
        name = f"disc{len(objects)}"
    morphisms = {("id", x): (x, x) for x in objects}
    table = {((("id", x)), ("id", x)): ("id", x) for x in objects}
    return FinGroupoid(name, objects, morphisms, table)


def bz2(name="BZ2") -> FinGroupoid:
    """One object with automorphism group Z/2: morphisms e (unit) and s."""
    morphisms = {"e": ("*", "*"), "s": ("*", "*")}
    table = {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"}
    return FinGroupoid(name, ("*",), morphisms, table)


def walking_iso_groupoid(name="WI") -> FinGroupoid:
    """Two objects 0, 1 and a single isomorphism between them."""
    morphisms = {
        "id0": ("0", "0"), "id1": ("1", "1"),
        "fwd": ("0", "1"), "bwd": ("1", "0"),
    }
    table = {
        ("id0", "id0"): "id0", ("id1", "id1"): "id1",
        ("id0", "fwd"): "fwd", ("fwd", "id1"): "fwd",
        ("id1", "bwd"): "bwd", ("bwd", "id0"): "bwd",
        ("fwd", "bwd"): "id0", ("bwd", "fwd"): "id1",
    }
    return FinGroupoid(name, ("0", "1"), morphisms, table)
