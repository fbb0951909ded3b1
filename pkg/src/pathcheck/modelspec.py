"""Declarative model files and their validated in-memory form.

A model file is a JSON object with the following fields, all optional
except ``name``:

  name       label echoed into reports
  interval   "trivial" | "walking_iso" |
             {"kind": "custom", "groupoid": g, "end0": x, "end1": y}
  universe   {"kind": "set"} |
             {"kind": "groupoid", "with_loop": false} |
             {"kind": "explicit", "name": u, "fibers": {type: g, ...}} |
             {"kind": "map", "map": f}
  groupoids  {g: {"objects": [...],
                  "morphisms": {m: [src, tgt], ...},
                  "compose": [[g2, g1, g2_after_g1], ...]}, ...}
  maps       {f: {"dom": g, "cod": h,
                  "objects": {x: image, ...},
                  "morphisms": {m: image, ...}}, ...}
  contexts   [g, ...] parameter carriers for the context-indexed checks
  suites     [name, ...] subset of the seven suite names
  guards     {"max_objects": n, "max_morphisms": n, "max_box_dim": n,
              "max_results": n}

A composition entry reads "after": the triple [g, f, h] declares that f
followed by g is h.  Identity morphisms may be left out of a groupoid;
an object with no declared unit gets one named id_<object> together
with the evident composites.  Inverses are never declared; they are
derived from the table, and an object or morphism for which derivation
fails is reported by name along with the violated law.  Names may be
strings, ints, or nested lists (decoded to tuples), but JSON object
keys are necessarily strings.

The "map" universe kind designates a declared map as the display to
check instead of a classifier projection.  The suites that need the
classifier apparatus are skipped for such models; the fibration-level
suites run on the raw map.
"""

from __future__ import annotations

import json
from typing import Dict, Optional

from .groupoids import (FinGroupoid, GroupoidMap, ModelError, check_functor,
                        constant_map, terminal_groupoid)
from .limits import to_terminal
from .names import name_from_json
from .enumeration import SizeGuard
from .cylinder import IntervalObject, trivial_interval, walking_iso_interval
from .universe import (ClassifierUniverse, standard_groupoid_universe,
                       standard_set_universe)


SUITE_ORDER = ("laws", "a1", "a2", "normal_uniform", "connection", "j",
               "kan")


class ModelSpecError(ModelError):
    """A model file that does not parse or does not validate."""


def _fail(msg):
    raise ModelSpecError(msg)


class ModelSpec:
    """A loaded and validated model: every named piece resolved and
    checked, ready for the suite runner."""

    __slots__ = ("name", "path", "interval", "universe", "display",
                 "groupoids", "maps", "contexts", "suites", "guard",
                 "raw")

    def __init__(self, name, interval: IntervalObject,
                 universe: Optional[ClassifierUniverse],
                 display: GroupoidMap,
                 groupoids: Dict[str, FinGroupoid],
                 maps: Dict[str, GroupoidMap],
                 contexts, suites, guard: SizeGuard, raw=None, path=None):
        assert all(s in SUITE_ORDER for s in suites)
        self.name = name
        self.path = path
        self.interval = interval
        self.universe = universe
        self.display = display
        self.groupoids = groupoids
        self.maps = maps
        self.contexts = tuple(contexts)
        self.suites = tuple(s for s in SUITE_ORDER if s in suites)
        self.guard = guard
        self.raw = raw if raw is not None else {}

    def config_echo(self):
        """The validated configuration, for inclusion in reports."""
        return {
            "model": self.name,
            "interval": self.interval.name,
            "universe": (self.universe.name if self.universe is not None
                         else None),
            "display": self.display.name,
            "groupoids": sorted(self.groupoids),
            "maps": sorted(self.maps),
            "contexts": [Z.name for Z in self.contexts],
            "suites": list(self.suites),
            "guards": {
                "max_objects": self.guard.max_objects,
                "max_morphisms": self.guard.max_morphisms,
                "max_box_dim": self.guard.max_box_dim,
                "max_results": self.guard.max_results,
            },
        }


# -- groupoid and map decoding ------------------------------------------


def _decode_groupoid(gname, data):
    if not isinstance(data, dict):
        _fail(f"groupoid {gname!r}: expected an object, got "
              f"{type(data).__name__}")
    objects = [name_from_json(x) for x in data.get("objects", [])]
    morphisms = {}
    for m, ends in data.get("morphisms", {}).items():
        if not (isinstance(ends, list) and len(ends) == 2):
            _fail(f"groupoid {gname!r}: morphism {m!r} needs [src, tgt]")
        morphisms[m] = (name_from_json(ends[0]), name_from_json(ends[1]))
    table = {}
    for entry in data.get("compose", []):
        if not (isinstance(entry, list) and len(entry) == 3):
            _fail(f"groupoid {gname!r}: compose entries are "
                  f"[after, first, result] triples, got {entry!r}")
        g, f, h = entry
        if (f, g) in table and table[(f, g)] != h:
            _fail(f"groupoid {gname!r}: conflicting composites for "
                  f"({g!r}, {f!r})")
        table[(f, g)] = h

    # derive missing units: any object with no declared two-sided unit
    # gets a fresh identity morphism and its neutrality rows
    fresh = []
    for x in objects:
        loops = [m for m, (s, t) in morphisms.items() if (s, t) == (x, x)]
        units = [e for e in loops
                 if all(table.get((e, g)) == g
                        for g, (s, _t) in morphisms.items() if s == x)
                 and all(table.get((f2, e)) == f2
                         for f2, (_s, t) in morphisms.items() if t == x)]
        if not units:
            e = f"id_{x}"
            if e in morphisms:
                _fail(f"groupoid {gname!r}: cannot derive a unit at "
                      f"{x!r}: the name {e!r} is taken")
            fresh.append((e, x))
            morphisms[e] = (x, x)
    for e, x in fresh:
        for g, (s, _t) in morphisms.items():
            if s == x:
                table[(e, g)] = g
        for f2, (_s, t) in morphisms.items():
            if t == x:
                table[(f2, e)] = f2

    try:
        return FinGroupoid(gname, objects, morphisms, table)
    except ModelError as err:
        raise ModelSpecError(f"groupoid {gname!r} fails validation: "
                             f"{err}") from err


def _decode_map(fname, data, groupoids):
    if not isinstance(data, dict):
        _fail(f"map {fname!r}: expected an object, got "
              f"{type(data).__name__}")
    for field in ("dom", "cod"):
        if data.get(field) not in groupoids:
            _fail(f"map {fname!r}: unknown {field} groupoid "
                  f"{data.get(field)!r}")
    dom, cod = groupoids[data["dom"]], groupoids[data["cod"]]
    obj_map = {name_from_json(x): name_from_json(v)
               for x, v in data.get("objects", {}).items()}
    mor_map = {name_from_json(m): name_from_json(v)
               for m, v in data.get("morphisms", {}).items()}
    for x in dom.objects:
        if x not in obj_map:
            _fail(f"map {fname!r}: no image for object {x!r}")
    # images of identities default to identities so that maps out of
    # groupoids with derived units need not name them
    for m in dom.morphisms:
        if m not in mor_map:
            s, t = dom.morphisms[m]
            if m == dom.id(s) and s == t:
                mor_map[m] = cod.id(obj_map[s])
            else:
                _fail(f"map {fname!r}: no image for morphism {m!r}")
    f = GroupoidMap(fname, dom, cod, obj_map, mor_map, validate=False)
    v = check_functor(f)
    if not v:
        raise ModelSpecError(f"map {fname!r} is not a functor: {v.reason}")
    return f


def _decode_interval(data, groupoids) -> IntervalObject:
    sel = data.get("interval", "walking_iso")
    if sel == "trivial":
        return trivial_interval()
    if sel in ("walking_iso", "walking-iso"):
        return walking_iso_interval()
    if isinstance(sel, dict) and sel.get("kind") == "custom":
        gname = sel.get("groupoid")
        if gname not in groupoids:
            _fail(f"interval: unknown groupoid {gname!r}")
        gpd = groupoids[gname]
        for field in ("end0", "end1"):
            if name_from_json(sel.get(field, [])) not in gpd.objects:
                _fail(f"interval: {field} {sel.get(field)!r} is not an "
                      f"object of {gname!r}")
        one = terminal_groupoid("1")
        d0 = constant_map(one, gpd, name_from_json(sel["end0"]), name="d0")
        d1 = constant_map(one, gpd, name_from_json(sel["end1"]), name="d1")
        return IntervalObject(gname, gpd, one, d0, d1,
                              to_terminal(gpd, one))
    _fail(f"interval: expected \"trivial\", \"walking_iso\" or a custom "
          f"object, got {sel!r}")


def _decode_universe(data, groupoids, maps):
    """Returns (universe or None, display map)."""
    u = data.get("universe", {"kind": "groupoid"})
    if isinstance(u, str):
        u = {"kind": u}
    kind = u.get("kind")
    if kind == "set":
        U = standard_set_universe(u.get("name", "sets"))
    elif kind == "groupoid":
        U = standard_groupoid_universe(u.get("name", "gpds"),
                                       with_loop=bool(u.get("with_loop",
                                                            False)))
    elif kind == "explicit":
        fibers = u.get("fibers")
        if not isinstance(fibers, dict) or not fibers:
            _fail("universe: explicit kind needs a nonempty fibers table")
        for t, gname in fibers.items():
            if gname not in groupoids:
                _fail(f"universe: unknown fiber groupoid {gname!r} "
                      f"for type {t!r}")
        U = ClassifierUniverse(u.get("name", "U"),
                               {t: groupoids[g] for t, g in fibers.items()})
    elif kind == "map":
        fname = u.get("map")
        if fname not in maps:
            _fail(f"universe: unknown display map {fname!r}")
        return None, maps[fname]
    else:
        _fail(f"universe: unknown kind {kind!r}")
    return U, U.proj


# -- entry points --------------------------------------------------------


def build_model(data, path=None) -> ModelSpec:
    """Validate parsed JSON into a ModelSpec; all errors are
    ModelSpecError with the offending name in the message."""
    if not isinstance(data, dict):
        _fail(f"model: expected a JSON object, got "
              f"{type(data).__name__}")
    name = data.get("name")
    if not isinstance(name, str) or not name:
        _fail("model: a nonempty string \"name\" is required")

    groupoids = {}
    for gname in sorted(data.get("groupoids", {})):
        groupoids[gname] = _decode_groupoid(gname,
                                            data["groupoids"][gname])
    maps = {}
    for fname in sorted(data.get("maps", {})):
        maps[fname] = _decode_map(fname, data["maps"][fname], groupoids)

    interval = _decode_interval(data, groupoids)
    universe, display = _decode_universe(data, groupoids, maps)

    ctx_names = data.get("contexts")
    if ctx_names is None:
        ctx_names = sorted(groupoids) if groupoids else []
    for cname in ctx_names:
        if cname not in groupoids:
            _fail(f"contexts: unknown groupoid {cname!r}")
    contexts = [groupoids[c] for c in ctx_names]
    if not contexts:
        contexts = [interval.one]

    suites = data.get("suites", list(SUITE_ORDER))
    seen = set()
    for s in suites:
        norm = str(s).replace("-", "_").lower()
        if norm not in SUITE_ORDER:
            _fail(f"suites: unknown suite {s!r}; choose from "
                  f"{', '.join(SUITE_ORDER)}")
        seen.add(norm)

    g = data.get("guards", {})
    defaults = SizeGuard()
    for key in g:
        if key not in ("max_objects", "max_morphisms", "max_box_dim",
                       "max_results"):
            _fail(f"guards: unknown bound {key!r}")
    guard = SizeGuard(
        max_objects=int(g.get("max_objects", defaults.max_objects)),
        max_morphisms=int(g.get("max_morphisms",
                                defaults.max_morphisms)),
        max_box_dim=int(g.get("max_box_dim", defaults.max_box_dim)),
        max_results=int(g.get("max_results", defaults.max_results)))

    return ModelSpec(name, interval, universe, display, groupoids, maps,
                     contexts, seen, guard, raw=data, path=path)


def bundled_model_path(name) -> str:
    """Absolute path of a model file shipped with the package."""
    import os

    here = os.path.dirname(os.path.abspath(__file__))
    path = os.path.join(here, "models", f"{name}.json")
    if not os.path.exists(path):
        have = sorted(f[:-5] for f in os.listdir(os.path.join(here, "models"))
                      if f.endswith(".json"))
        _fail(f"no bundled model {name!r}; have: {', '.join(have)}")
    return path


def load_model(path) -> ModelSpec:
    """Read, parse and validate a model file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise ModelSpecError(f"cannot read {path}: {err}") from err
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ModelSpecError(
            f"{path}: parse error at line {err.lineno}, column "
            f"{err.colno}: {err.msg}") from err
    return build_model(data, path=str(path))
