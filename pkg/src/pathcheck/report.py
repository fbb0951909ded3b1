"""Check reports: per-suite verdicts with witnesses, JSON and markdown.

A report is deterministic apart from its timing fields: running the
same model twice gives byte-identical serializations once elapsed_ms
entries are stripped.  Nothing wall-clock dated is recorded for that
reason.
"""

from __future__ import annotations

import json
from typing import List, Optional

from .groupoids import GroupoidMap, Verdict


FORMAT_VERSION = 1

PASS, FAIL, SKIP = "pass", "fail", "skip"


def jsonable(value):
    """Plain-name witnesses to JSON-safe data, deterministically.

    Dict keys that are not strings (tuple-named objects, pairs) are
    rendered with repr; tuples become lists; maps and verdicts are
    expanded; anything else falls back to str.
    """
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, dict):
        return {k if isinstance(k, str) else repr(k): jsonable(v)
                for k, v in sorted(value.items(), key=lambda kv: repr(kv[0]))}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, GroupoidMap):
        return {"map": jsonable(value.name),
                "dom": value.dom.name, "cod": value.cod.name,
                "objects": jsonable(value.obj_map),
                "morphisms": jsonable(value.mor_map)}
    if isinstance(value, Verdict):
        return {"ok": value.ok, "reason": value.reason,
                "witness": jsonable(value.witness)}
    return str(value)


class SuiteResult:
    """One suite's outcome: status, a one-line detail, an optional
    counterexample, and how long it took."""

    __slots__ = ("suite", "status", "detail", "counterexample",
                 "elapsed_ms")

    def __init__(self, suite: str, status: str, detail: str = "",
                 counterexample=None, elapsed_ms: float = 0.0):
        assert status in (PASS, FAIL, SKIP)
        self.suite = suite
        self.status = status
        self.detail = detail
        self.counterexample = counterexample
        self.elapsed_ms = elapsed_ms

    def as_dict(self):
        return {
            "suite": self.suite,
            "status": self.status,
            "detail": self.detail,
            "counterexample": jsonable(self.counterexample),
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


class Report:
    """All suite results for one model run, in execution order."""

    __slots__ = ("model", "config", "results")

    def __init__(self, model: str, config: dict,
                 results: List[SuiteResult]):
        self.model = model
        self.config = config
        self.results = list(results)

    def ok(self) -> bool:
        return not any(r.status == FAIL for r in self.results)

    def result(self, suite: str) -> Optional[SuiteResult]:
        for r in self.results:
            if r.suite == suite:
                return r
        return None

    def as_dict(self, strip_timing: bool = False):
        out = {
            "format_version": FORMAT_VERSION,
            "model": self.model,
            "config": jsonable(self.config),
            "suites": [r.as_dict() for r in self.results],
            "ok": self.ok(),
            "elapsed_ms": round(sum(r.elapsed_ms for r in self.results),
                                3),
        }
        if strip_timing:
            del out["elapsed_ms"]
            for entry in out["suites"]:
                del entry["elapsed_ms"]
        return out

    def to_json(self, strip_timing: bool = False) -> str:
        return json.dumps(self.as_dict(strip_timing=strip_timing),
                          indent=2, sort_keys=True) + "\n"

    def to_markdown(self) -> str:
        lines = [f"# Check report: {self.model}", ""]
        cfg = self.config
        for key in sorted(cfg):
            lines.append(f"- **{key}**: {json.dumps(jsonable(cfg[key]), sort_keys=True)}")
        lines += ["", "| suite | status | detail | elapsed |",
                  "|---|---|---|---|"]
        for r in self.results:
            lines.append(f"| {r.suite} | {r.status} | {r.detail} | "
                         f"{r.elapsed_ms:.0f} ms |")
        failures = [r for r in self.results if r.status == FAIL
                    and r.counterexample is not None]
        if failures:
            lines.append("")
            lines.append("## Counterexamples")
            for r in failures:
                lines.append("")
                lines.append(f"### {r.suite}")
                lines.append("```json")
                lines.append(json.dumps(jsonable(r.counterexample),
                                        indent=2, sort_keys=True))
                lines.append("```")
        lines.append("")
        lines.append(f"**Overall**: {'pass' if self.ok() else 'fail'}")
        return "\n".join(lines) + "\n"
