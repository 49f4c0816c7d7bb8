"""Corpus verification: load JSON-described expectations, evaluate every
check, and assemble a deterministic report.

Schema (all keys required unless noted):

    {"entries": [
        {"name": str,
         "prime": int,
         "ambient": {"factors": [{"weights": [int, ...], "vars": [str, ...]}]},
         "polynomial": str,
         "checks": [{"kind": str, "expect": str, "params": object}],
         "paper_ref": str}
    ]}

``params`` may be omitted for checks that need none.  A failed or crashing
check never aborts the run; it becomes a failing row.  Reports contain no
wall-clock data, so the same corpus always serializes to the same bytes
regardless of --jobs.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from . import chow as chowmod
from . import delpezzo
from .geometry import (
    AmbientFactor,
    AmbientSpace,
    HypersurfaceVariety,
    smoothness_verdict,
)
from .poly import Polynomial, parse_poly
from .splitting import HypersurfaceRing, delta1_probe, fedder_fsplit
from .poly import delta1 as poly_delta1

CHECK_KINDS = ("fsplit", "smooth", "delta1", "chow", "lattice")


class CorpusFormatError(ValueError):
    """Schema violation; names the entry and field when known."""

    def __init__(self, message: str, entry: Optional[str] = None,
                 field_name: Optional[str] = None):
        self.entry = entry
        self.field_name = field_name
        where = f" in entry {entry!r}" if entry else ""
        where += f" (field {field_name!r})" if field_name else ""
        super().__init__(f"{message}{where}")


@dataclass(frozen=True)
class CorpusCheck:
    kind: str
    expect: str
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    prime: int
    ambient: AmbientSpace
    polynomial: str
    checks: tuple
    paper_ref: str


def _require(obj: dict, key: str, typ, entry: Optional[str], what: str):
    if key not in obj:
        raise CorpusFormatError(f"missing key {key!r} in {what}", entry, key)
    val = obj[key]
    if typ is int and isinstance(val, bool) or not isinstance(val, typ):
        raise CorpusFormatError(
            f"{what} key {key!r} must be {typ.__name__}", entry, key)
    return val


def _load_ambient(raw: dict, entry: str) -> AmbientSpace:
    factors_raw = _require(raw, "factors", list, entry, "ambient")
    if not factors_raw:
        raise CorpusFormatError("ambient needs at least one factor", entry, "factors")
    factors = []
    for fac in factors_raw:
        if not isinstance(fac, dict):
            raise CorpusFormatError("ambient factor must be an object", entry, "factors")
        weights = _require(fac, "weights", list, entry, "ambient factor")
        names = _require(fac, "vars", list, entry, "ambient factor")
        if (len(weights) != len(names)
                or not all(isinstance(w, int) and not isinstance(w, bool) and w >= 1
                           for w in weights)
                or not all(isinstance(v, str) for v in names)):
            raise CorpusFormatError("ambient factor needs matching positive weights "
                                    "and string vars", entry, "factors")
        try:
            factors.append(AmbientFactor(tuple(names), tuple(weights)))
        except ValueError as exc:
            raise CorpusFormatError(str(exc), entry, "factors") from None
    try:
        return AmbientSpace(factors)
    except ValueError as exc:
        raise CorpusFormatError(str(exc), entry, "ambient") from None


def load_corpus(data: dict) -> list:
    """Validate a decoded corpus document into entries."""
    if not isinstance(data, dict):
        raise CorpusFormatError("corpus document must be a JSON object")
    entries_raw = _require(data, "entries", list, None, "corpus")
    entries = []
    seen = set()
    for idx, raw in enumerate(entries_raw):
        if not isinstance(raw, dict):
            raise CorpusFormatError(f"entry #{idx} must be an object")
        name = _require(raw, "name", str, f"#{idx}", "entry")
        if name in seen:
            raise CorpusFormatError("duplicate entry name", name, "name")
        seen.add(name)
        prime = _require(raw, "prime", int, name, "entry")
        ambient = _load_ambient(_require(raw, "ambient", dict, name, "entry"), name)
        polynomial = _require(raw, "polynomial", str, name, "entry")
        paper_ref = _require(raw, "paper_ref", str, name, "entry")
        checks_raw = _require(raw, "checks", list, name, "entry")
        if not checks_raw:
            raise CorpusFormatError("entry needs at least one check", name, "checks")
        checks = []
        for craw in checks_raw:
            if not isinstance(craw, dict):
                raise CorpusFormatError("check must be an object", name, "checks")
            kind = _require(craw, "kind", str, name, "check")
            if kind not in CHECK_KINDS:
                raise CorpusFormatError(f"unknown check kind {kind!r}", name, "kind")
            expect = _require(craw, "expect", str, name, "check")
            params = craw.get("params", {})
            if not isinstance(params, dict):
                raise CorpusFormatError("check params must be an object", name, "params")
            checks.append(CorpusCheck(kind, expect, params))
        entries.append(CorpusEntry(name, prime, ambient, polynomial,
                                   tuple(checks), paper_ref))
    return entries


def load_corpus_file(path) -> list:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CorpusFormatError(f"cannot read corpus: {exc}") from None
    except json.JSONDecodeError as exc:
        raise CorpusFormatError(f"corpus is not valid JSON: {exc}") from None
    return load_corpus(data)


# ---------------------------------------------------------------------------
# check evaluation
# ---------------------------------------------------------------------------

def _entry_poly(entry: CorpusEntry) -> Polynomial:
    return parse_poly(entry.polynomial, entry.ambient.variable_set, entry.prime)


def _eval_fsplit(entry: CorpusEntry, check: CorpusCheck) -> str:
    ring = HypersurfaceRing(entry.prime, entry.ambient.variable_set,
                            _entry_poly(entry))
    ring.degree  # force the homogeneity validation
    return fedder_fsplit(ring).status.value


def _eval_smooth(entry: CorpusEntry, check: CorpusCheck) -> str:
    variety = HypersurfaceVariety(entry.prime, entry.ambient, _entry_poly(entry))
    return smoothness_verdict(variety).value


def _eval_delta1(entry: CorpusEntry, check: CorpusCheck) -> str:
    f = _entry_poly(entry)
    probe = check.params.get("probe")
    if probe is None:
        return str(poly_delta1(f))
    if (not isinstance(probe, list) or len(probe) != 3
            or not all(isinstance(v, int) for v in probe)):
        raise CorpusFormatError("delta1 probe must be [a, b, s]", entry.name, "params")
    ring = HypersurfaceRing(entry.prime, entry.ambient.variable_set, f)
    return str(delta1_probe(ring, *probe))


def _delta1_matches(entry: CorpusEntry, expect: str, actual: str) -> bool:
    # compare as polynomials so formatting differences cannot fail the check
    vset = entry.ambient.variable_set
    return (parse_poly(expect, vset, entry.prime)
            == parse_poly(actual, vset, entry.prime))


def _chow_ring_from_params(params: dict, entry: str) -> chowmod.IntersectionRing:
    base_raw = params.get("base")
    if (not isinstance(base_raw, list) or not base_raw
            or not all(isinstance(v, int) and v >= 1 for v in base_raw)):
        raise CorpusFormatError("chow check needs base: [dims]", entry, "params")
    base = chowmod.ProductBase(tuple(base_raw))
    bundle_raw = params.get("bundle")
    bundle = None
    if bundle_raw is not None:
        if (not isinstance(bundle_raw, list)
                or not all(isinstance(t, list) and len(t) == len(base_raw)
                           and all(isinstance(a, int) for a in t)
                           for t in bundle_raw)):
            raise CorpusFormatError("chow bundle must be a list of twist lists",
                                    entry, "params")
        bundle = chowmod.SplitBundleSpec(base, tuple(tuple(t) for t in bundle_raw))
    return chowmod.IntersectionRing(base, bundle)


def _eval_chow(entry: CorpusEntry, check: CorpusCheck) -> str:
    ring = _chow_ring_from_params(check.params, entry.name)
    if check.params.get("canonical"):
        return chowmod.div_class_str(ring, chowmod.canonical_class(ring))
    identity = check.params.get("identity")
    if identity is not None:
        if (not isinstance(identity, dict)
                or not isinstance(identity.get("lhs"), str)
                or not isinstance(identity.get("rhs"), str)):
            raise CorpusFormatError("chow identity needs lhs and rhs expressions",
                                    entry.name, "params")
        lhs = chowmod.evaluate_expression(ring, identity["lhs"])
        rhs = chowmod.evaluate_expression(ring, identity["rhs"])
        return "true" if ring.reduce(lhs) == ring.reduce(rhs) else "false"
    expr = check.params.get("expr")
    if not isinstance(expr, str):
        raise CorpusFormatError("chow check needs expr, canonical or identity",
                                entry.name, "params")
    return chowmod.expression_result_str(ring, chowmod.evaluate_expression(ring, expr))


def langer_summary() -> str:
    """The headline counts for the blown-up 7-point plane, CLI format."""
    lattice = delpezzo.PicLattice(7)
    exceptional = delpezzo.enumerate_classes(lattice, -1, -1, 3)
    neg2 = delpezzo.langer_neg2_classes()
    compatible = delpezzo.count_compatible_exceptionals(neg2)
    disjoint = all(a.dot(b) == 0 for i, a in enumerate(neg2)
                   for b in neg2[i + 1:])
    return (f"(-1)-classes: {len(exceptional)}; compatible: {compatible}; "
            f"(-2)-classes: {len(neg2)}; disjoint: {'yes' if disjoint else 'no'}")


def _eval_lattice(entry: CorpusEntry, check: CorpusCheck) -> str:
    query = check.params.get("query")
    if query == "langer":
        return langer_summary()
    if query == "fano":
        lines = delpezzo.fano_lines()
        per_point = [sum(1 for ln in lines if i in ln) for i in range(7)]
        per_line = {len(ln) for ln in lines}
        return (f"points: 7; lines: {len(lines)}; "
                f"per-line: {per_line.pop() if len(per_line) == 1 else 'mixed'}; "
                f"per-point: {per_point[0] if len(set(per_point)) == 1 else 'mixed'}")
    if query == "pgl_order":
        q = check.params.get("q")
        if not isinstance(q, int):
            raise CorpusFormatError("pgl_order needs q", entry.name, "params")
        return str(len(delpezzo.pgl3_elements(q)))
    if query == "full_plane_orbit":
        q = check.params.get("q")
        if not isinstance(q, int):
            raise CorpusFormatError("full_plane_orbit needs q", entry.name, "params")
        config = delpezzo.PointConfig.from_points(q, delpezzo.plane_points(q))
        _, size = delpezzo.pgl_orbit_canonical(config)
        return str(size)
    raise CorpusFormatError(f"unknown lattice query {query!r}", entry.name, "params")


_EVALUATORS = {
    "fsplit": _eval_fsplit,
    "smooth": _eval_smooth,
    "delta1": _eval_delta1,
    "chow": _eval_chow,
    "lattice": _eval_lattice,
}


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckRow:
    entry: str
    kind: str
    expected: str
    actual: str
    passed: bool


@dataclass(frozen=True)
class Report:
    rows: tuple

    @property
    def total(self) -> int:
        return len(self.rows)

    @property
    def passed(self) -> int:
        return sum(1 for r in self.rows if r.passed)

    @property
    def failed(self) -> int:
        return self.total - self.passed

    @property
    def all_passed(self) -> bool:
        return self.failed == 0

    def to_json(self) -> str:
        doc = {
            "rows": [
                {"entry": r.entry, "kind": r.kind, "expected": r.expected,
                 "actual": r.actual, "passed": r.passed}
                for r in self.rows
            ],
            "summary": {"total": self.total, "passed": self.passed,
                        "failed": self.failed},
        }
        return json.dumps(doc, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        doc = json.loads(text)
        rows = tuple(
            CheckRow(r["entry"], r["kind"], r["expected"], r["actual"], r["passed"])
            for r in doc["rows"]
        )
        return cls(rows)

    def to_text(self) -> str:
        lines = []
        for r in self.rows:
            tag = "PASS" if r.passed else "FAIL"
            lines.append(f"{tag} {r.entry} [{r.kind}] expected={r.expected!r} "
                         f"actual={r.actual!r}")
        lines.append(f"checks passed: {self.passed}/{self.total}")
        return "\n".join(lines)


def _run_entry(entry: CorpusEntry) -> list:
    rows = []
    for check in entry.checks:
        try:
            actual = _EVALUATORS[check.kind](entry, check)
            if check.kind == "delta1":
                ok = _delta1_matches(entry, check.expect, actual)
            else:
                ok = actual == check.expect
        except CorpusFormatError:
            raise
        except Exception as exc:  # a crashing check fails but never aborts
            actual = f"error: {exc}"
            ok = False
        rows.append(CheckRow(entry.name, check.kind, check.expect, actual, ok))
    return rows


def run_corpus(path, jobs: int = 1) -> Report:
    """Evaluate every check in the corpus file; row order follows the file."""
    entries = load_corpus_file(path)
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    if jobs == 1 or len(entries) <= 1:
        per_entry = [_run_entry(e) for e in entries]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            per_entry = list(pool.map(_run_entry, entries))
    rows = [row for chunk in per_entry for row in chunk]
    return Report(tuple(rows))
