"""Running the check suites over a loaded model.

The seven suites run in a fixed dependency order:

  laws            presentations are groupoids, declared maps are
                  functors, interval and cylinder equations
  a1              path factorizations; for classifier models, the path
                  type square and its comparison isomorphism
  a2              cylinder lifting by enumeration, the chosen lifting
                  structure and its section form
  normal_uniform  constant problems fill constantly; filling commutes
                  with context maps
  connection      the contraction of paths onto their start points
  j               path induction: eliminator laws and substitution
                  stability
  kan             box filling up to the guarded dimension, with
                  exhaustive cross-checks in low dimensions

Later suites reuse what earlier ones build (the path types, the chosen
lifts), so the first failing suite blocks everything after it; blocked
and out-of-bounds suites are reported as skipped with a reason rather
than failing the run.  Every check is a pure function of the model, so
verdicts and witnesses are identical across runs.
"""

from __future__ import annotations

import time

from .groupoids import ModelError, Verdict, check_functor
from .enumeration import SizeGuardError, enumerate_maps
from .cylinder import (CylinderStructure, check_pullback_stability,
                       relative_pathobject)
from .universe import PathTypeStructure
from .fibration import (build_connection, check_cylinder_lifting,
                        check_normal, check_uniform, classifier_lift,
                        enumerate_problems, is_isofibration,
                        lift_from_isofibration, section_from_lifts)
from .identity import (IdIntroStructure, check_elim_laws,
                       check_substitution_laws)
from .kan import (KanStructure, check_kan, check_kan_enumerative,
                  check_kan_families)
from .modelspec import ModelSpec
from .report import FAIL, PASS, SKIP, Report, SuiteResult


class SuiteSkip(Exception):
    """A suite that cannot run on this model; the message says why."""


def _ensure_pts(spec: ModelSpec, state):
    """Path types for classifier models, built at most once.  Suites
    normally inherit them from a1; selecting a later suite alone still
    works because it can build its own."""
    if "pts" not in state:
        if spec.universe is None:
            return None
        try:
            state["pts"] = PathTypeStructure(spec.universe,
                                             spec.interval,
                                             guard=spec.guard)
        except ModelError as err:
            raise SuiteSkip(f"path types unavailable: {err}") from err
    return state.get("pts")


def _ensure_lift(spec: ModelSpec, state):
    if "lift" not in state:
        try:
            if spec.universe is not None:
                state["lift"] = classifier_lift(spec.universe,
                                                spec.interval)
            else:
                state["lift"] = lift_from_isofibration(spec.display,
                                                       spec.interval)
        except ModelError:
            state["lift"] = None
    return state.get("lift")


def _suite_laws(spec: ModelSpec, state):
    out = []
    for gname in sorted(spec.groupoids):
        g = spec.groupoids[gname]
        try:
            g.validate()
            out.append((f"groupoid:{gname}", Verdict.passed()))
        except ModelError as err:
            out.append((f"groupoid:{gname}", Verdict.failed(str(err))))
    for fname in sorted(spec.maps):
        out.append((f"functor:{fname}", check_functor(spec.maps[fname])))
    for lbl, v in spec.interval.laws():
        out.append((f"interval:{lbl}", v))
    cyls = CylinderStructure(spec.interval)
    sample = [spec.maps[k] for k in sorted(spec.maps)]
    for pos, Z in enumerate(spec.contexts):
        for lbl, v in cyls.laws(Z, sample_maps=sample if pos == 0 else ()):
            out.append((f"cylinder:{Z.name}:{lbl}", v))
    return out


def _suite_a1(spec: ModelSpec, state):
    out = []
    P = relative_pathobject(spec.display, spec.interval,
                            guard=spec.guard)
    for lbl, v in P.laws():
        out.append((f"factorization:{lbl}", v))
    if spec.universe is not None:
        try:
            pts = PathTypeStructure(spec.universe, spec.interval,
                                    guard=spec.guard)
        except ModelError as err:
            out.append(("path_types:closure", Verdict.failed(str(err))))
            return out
        state["pts"] = pts
        for lbl, v in pts.laws():
            out.append((f"path_types:{lbl}", v))
    else:
        for fname in sorted(spec.maps):
            f = spec.maps[fname]
            if f.cod == spec.display.cod and f is not spec.display:
                out.append((f"stability:{fname}", check_pullback_stability(
                    spec.display, f, spec.interval, guard=spec.guard)))
    return out


def _suite_a2(spec: ModelSpec, state):
    p = spec.display
    out = []
    enum_ok = check_cylinder_lifting(p, spec.interval, spec.contexts,
                                     guard=spec.guard)
    out.append(("cylinder_lifting", enum_ok))
    if spec.interval.i0 != spec.interval.i1:
        iso = is_isofibration(p)
        agree = bool(iso) == bool(enum_ok)
        out.append(("isofibration_agreement", Verdict(
            agree, "" if agree else
            f"isofibration test says {bool(iso)} but enumeration says "
            f"{bool(enum_ok)}",
            witness=None if agree else (iso.witness or enum_ok.witness))))
    try:
        if spec.universe is not None:
            lift = classifier_lift(spec.universe, spec.interval)
        else:
            lift = lift_from_isofibration(p, spec.interval)
    except ModelError as err:
        out.append(("chosen_lifts", Verdict.failed(str(err))))
        return out
    state["lift"] = lift
    problems = [prob for Z in spec.contexts
                for prob in enumerate_problems(p, spec.interval, Z,
                                               guard=spec.guard)]
    for lbl, v in lift.laws(problems):
        out.append((f"lift:{lbl}", v))
    S = section_from_lifts(lift, guard=spec.guard)
    for lbl, v in S.laws():
        out.append((f"section:{lbl}", v))
    return out


def _suite_normal_uniform(spec: ModelSpec, state):
    lift = _ensure_lift(spec, state)
    if lift is None:
        raise SuiteSkip("no chosen lifting structure to audit")
    return [
        ("normal", check_normal(lift, spec.contexts, guard=spec.guard)),
        ("uniform", check_uniform(lift, spec.contexts,
                                  guard=spec.guard)),
    ]


def _suite_connection(spec: ModelSpec, state):
    pts, lift = _ensure_pts(spec, state), _ensure_lift(spec, state)
    if pts is None or lift is None:
        raise SuiteSkip("needs classifier path types and chosen lifts")
    conn = build_connection(pts, lift, guard=spec.guard)
    state["connection"] = conn
    return list(conn.laws())


def _suite_j(spec: ModelSpec, state):
    pts, lift = _ensure_pts(spec, state), _ensure_lift(spec, state)
    if pts is None or lift is None:
        raise SuiteSkip("needs classifier path types and chosen lifts")
    out = []
    for lbl, v in IdIntroStructure(pts).laws():
        out.append((f"intro:{lbl}", v))
    out.append(("eliminator_laws", check_elim_laws(
        pts, spec.universe, lift, spec.contexts, guard=spec.guard)))
    out.append(("substitution", check_substitution_laws(
        pts, spec.universe, lift, spec.contexts, guard=spec.guard)))
    return out


def _suite_kan(spec: ModelSpec, state):
    N = spec.guard.max_box_dim
    if spec.universe is None:
        return [("enumerative", check_kan_enumerative(
            spec.display, spec.interval, N=min(N, 1),
            guard=spec.guard))]
    pts, lift = _ensure_pts(spec, state), _ensure_lift(spec, state)
    if pts is None or lift is None:
        raise SuiteSkip("needs classifier path types and chosen lifts")
    try:
        kan = KanStructure(pts, lift)
    except ModelError as err:
        return [("structure", Verdict.failed(str(err)))]
    return [
        ("universe", check_kan(kan, N=N, exhaustive_to=2,
                               guard=spec.guard)),
        ("families", check_kan_families(kan, spec.contexts, N=N,
                                        exhaustive_to=2,
                                        guard=spec.guard)),
    ]


_RUNNERS = {
    "laws": _suite_laws,
    "a1": _suite_a1,
    "a2": _suite_a2,
    "normal_uniform": _suite_normal_uniform,
    "connection": _suite_connection,
    "j": _suite_j,
    "kan": _suite_kan,
}


def run_suites(spec: ModelSpec) -> Report:
    """Run the selected suites in order and assemble the report."""
    results = []
    state = {}
    blocked = None
    for suite in spec.suites:
        if blocked is not None:
            results.append(SuiteResult(
                suite, SKIP, f"skipped: {blocked} failed"))
            continue
        t0 = time.perf_counter()
        try:
            checks = _RUNNERS[suite](spec, state)
        except SuiteSkip as why:
            results.append(SuiteResult(
                suite, SKIP, f"skipped: {why}",
                elapsed_ms=(time.perf_counter() - t0) * 1000))
            continue
        except SizeGuardError as err:
            results.append(SuiteResult(
                suite, SKIP, f"skipped: bound: {err}",
                elapsed_ms=(time.perf_counter() - t0) * 1000))
            continue
        elapsed = (time.perf_counter() - t0) * 1000
        bad = [(lbl, v) for (lbl, v) in checks if not v]
        if bad:
            lbl, v = bad[0]
            results.append(SuiteResult(
                suite, FAIL,
                f"{lbl}: {v.reason}" if v.reason else lbl,
                counterexample={"check": lbl, "reason": v.reason,
                                "witness": v.witness,
                                "failing": len(bad),
                                "checks": len(checks)},
                elapsed_ms=elapsed))
            blocked = suite
        else:
            results.append(SuiteResult(
                suite, PASS, f"{len(checks)} checks", elapsed_ms=elapsed))
    return Report(spec.name, spec.config_echo(), results)
