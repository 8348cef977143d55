"""Sweep harness: classify permutations, cross-validate the structural
lemmas, and check the bundled rank-matrix fixtures.

A classification record joins the combinatorial side (pattern containment,
obstructions) with the algebraic side (Gröbner verdict of the
dominant-zeroed generators per term order) and flags any disagreement with
the avoidance criterion.  Sweeps stream records as JSON lines in canonical
(lexicographic) permutation order and exit nonzero on any disagreement or
budget error.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from itertools import permutations as _tuple_permutations
from typing import Iterable, Optional, Sequence

from .groebner import ideals_equal, is_groebner
from .gvd import check_kr_hypotheses, delete_corner_permutation, split_on_corner
from .idealgen import cdg_generators, fulton_generators, rank_matrix_generators
from .permcomb import (
    Cell,
    EIGHT_PATTERNS,
    OBSTRUCTION_KINDS,
    Permutation,
    RankMatrix,
    avoids_all_eight,
    coxeter_length,
    essential_set,
    lower_outside_corners,
    obstructions,
    rothe_diagram,
)
from .polycore import (
    DEFAULT_BUDGET,
    Budget,
    BudgetExceeded,
    RowLex,
    TermOrder,
    parse_order,
)

__all__ = [
    "ClassificationRecord",
    "SweepConfig",
    "SweepSummary",
    "LemmaReport",
    "FixtureReport",
    "classify",
    "sweep",
    "verify_lemmas",
    "verify_rank_fixtures",
    "write_csv",
    "TYPE1_IMPLIED",
    "TYPE2_IMPLIED",
    "TYPE3_IMPLIED",
]

TYPE1_IMPLIED = ("21543", "215634", "214635", "215364", "13254")
TYPE2_IMPLIED = ("21543", "214635", "241635", "215364", "315264")
TYPE3_IMPLIED = tuple(str(p) for p in EIGHT_PATTERNS)


def symmetric_group(n: int) -> Iterable[Permutation]:
    """All of S_n in lexicographic one-line order."""
    for images in _tuple_permutations(range(1, n + 1)):
        yield Permutation(images)


@dataclass(frozen=True)
class ClassificationRecord:
    """Joined combinatorial and algebraic verdicts for one permutation."""

    w: Permutation
    coxeter_length: int
    patterns_contained: tuple[str, ...]
    avoids_all: bool
    obstruction_witnesses: dict
    cdg_verdicts: dict
    failing_pairs: dict
    errors: dict
    agreement: bool
    elapsed: float

    def to_json(self) -> dict:
        return {
            "w": str(self.w),
            "n": self.w.n,
            "coxeter_length": self.coxeter_length,
            "patterns_contained": list(self.patterns_contained),
            "avoids_all": self.avoids_all,
            "obstructions": self.obstruction_witnesses,
            "cdg_verdicts": self.cdg_verdicts,
            "failing_pairs": self.failing_pairs,
            "errors": self.errors,
            "agreement": self.agreement,
            "elapsed_ms": round(self.elapsed * 1000.0, 3),
        }


def classify(
    w: Permutation,
    orders: Sequence[TermOrder],
    budget_limit: int = DEFAULT_BUDGET,
) -> ClassificationRecord:
    """Populate a full record: patterns, obstructions, and the Gröbner
    verdict of the dominant-zeroed generators under each order.  A budget
    overrun under one order is recorded as an error for that order; the
    record is still emitted with the remaining verdicts."""
    start = time.perf_counter()
    avoids, contained = avoids_all_eight(w)
    obs = obstructions(w)
    witnesses = {
        kind: None if wit is None else [[c.row, c.col] for c in wit.cells]
        for kind, wit in obs.items()
    }
    gens = cdg_generators(w)
    verdicts: dict = {}
    failing: dict = {}
    errors: dict = {}
    for order in orders:
        spec = order.spec()
        try:
            rep = is_groebner(gens, order, Budget(budget_limit))
        except BudgetExceeded as exc:
            verdicts[spec] = None
            errors[spec] = f"budget exceeded after {exc.spent} steps"
            continue
        verdicts[spec] = rep.is_groebner
        if rep.failing_pair is not None:
            failing[spec] = rep.failing_pair.to_json()
    agreement = all(v == avoids for v in verdicts.values() if v is not None)
    return ClassificationRecord(
        w=w,
        coxeter_length=coxeter_length(w),
        patterns_contained=tuple(str(p) for p in contained),
        avoids_all=avoids,
        obstruction_witnesses=witnesses,
        cdg_verdicts=verdicts,
        failing_pairs=failing,
        errors=errors,
        agreement=agreement,
        elapsed=time.perf_counter() - start,
    )


@dataclass(frozen=True)
class SweepConfig:
    """Parameters of one exhaustive classification run."""

    n: int
    orders: tuple[str, ...] = ("rowlex",)
    jobs: int = 1
    budget_limit: int = DEFAULT_BUDGET
    out_path: Optional[str] = None
    subset: Optional[tuple[str, ...]] = None
    only_pattern_containing: bool = False

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("group size must be at least 1")
        if not self.orders:
            raise ValueError("at least one term order is required")
        if self.jobs < 1:
            raise ValueError("worker count must be at least 1")


@dataclass
class SweepSummary:
    """Aggregated sweep outcome; ok only with no disagreement or error."""

    n: int
    orders: tuple[str, ...]
    total: int = 0
    cdg_count: int = 0
    non_cdg: dict = field(default_factory=dict)
    disagreements: list = field(default_factory=list)
    budget_errors: list = field(default_factory=list)
    elapsed: float = 0.0
    out_path: Optional[str] = None

    @property
    def ok(self) -> bool:
        return not self.disagreements and not self.budget_errors

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "orders": list(self.orders),
            "total": self.total,
            "cdg_count": self.cdg_count,
            "non_cdg": {k: sorted(v) for k, v in self.non_cdg.items()},
            "disagreements": sorted(self.disagreements),
            "budget_errors": sorted(self.budget_errors),
            "ok": self.ok,
            "elapsed_ms": round(self.elapsed * 1000.0, 3),
            "out": self.out_path,
        }


def _classify_worker(args: tuple) -> dict:
    """Process-pool entry point over primitive arguments."""
    images, order_names, budget_limit = args
    w = Permutation(tuple(images))
    shape = (w.n, w.n)
    orders = [parse_order(name, shape) for name in order_names]
    return classify(w, orders, budget_limit).to_json()


def sweep(cfg: SweepConfig, records_sink=None) -> SweepSummary:
    """Classify every permutation of the configured group (or the subset)
    in canonical order, streaming JSON-line records to the output path and
    optionally to ``records_sink`` (a callable taking each record dict)."""
    start = time.perf_counter()
    if cfg.subset is not None:
        perms = [Permutation.parse(s) for s in cfg.subset]
        for w in perms:
            if w.n != cfg.n:
                raise ValueError(f"subset entry {w} is not in S_{cfg.n}")
    else:
        perms = list(symmetric_group(cfg.n))
    if cfg.only_pattern_containing:
        perms = [w for w in perms if not avoids_all_eight(w)[0]]
    tasks = [(w.images, cfg.orders, cfg.budget_limit) for w in perms]
    summary = SweepSummary(n=cfg.n, orders=cfg.orders, out_path=cfg.out_path)
    out = open(cfg.out_path, "w", encoding="utf-8") if cfg.out_path else None
    try:
        if cfg.jobs > 1 and len(tasks) > 1:
            chunk = max(1, len(tasks) // (cfg.jobs * 4))
            with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
                stream = pool.map(_classify_worker, tasks, chunksize=chunk)
                _consume(stream, summary, out, records_sink)
        else:
            _consume(map(_classify_worker, tasks), summary, out, records_sink)
    finally:
        if out is not None:
            out.close()
    summary.elapsed = time.perf_counter() - start
    return summary


def _consume(stream, summary: SweepSummary, out, records_sink) -> None:
    for record in stream:
        summary.total += 1
        verdicts = record["cdg_verdicts"]
        if all(v is True for v in verdicts.values()):
            summary.cdg_count += 1
        for spec, verdict in verdicts.items():
            if verdict is False:
                summary.non_cdg.setdefault(spec, []).append(record["w"])
        if record["errors"]:
            summary.budget_errors.append(record["w"])
        if not record["agreement"]:
            summary.disagreements.append(record["w"])
        if out is not None:
            out.write(json.dumps(record, sort_keys=True) + "\n")
        if records_sink is not None:
            records_sink(record)


CSV_COLUMNS = (
    "w",
    "n",
    "coxeter_length",
    "avoids_all",
    "patterns_contained",
    "cdg_verdicts",
    "agreement",
    "errors",
)


def write_csv(records: Iterable[dict], path: str) -> None:
    """One summary row per record."""
    import csv

    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for r in records:
            writer.writerow(
                [
                    r["w"],
                    r["n"],
                    r["coxeter_length"],
                    r["avoids_all"],
                    ";".join(r["patterns_contained"]),
                    ";".join(
                        f"{k}={v}" for k, v in sorted(r["cdg_verdicts"].items())
                    ),
                    r["agreement"],
                    ";".join(
                        f"{k}: {v}" for k, v in sorted(r["errors"].items())
                    ),
                ]
            )


@dataclass
class LemmaReport:
    """Outcome of the structural-lemma suites up to one group size."""

    n: int
    suite: str
    checks_run: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "suite": self.suite,
            "checks_run": self.checks_run,
            "violations": self.violations,
            "ok": self.ok,
            "elapsed_ms": round(self.elapsed * 1000.0, 3),
        }


def _diagram_suite(n: int, report: LemmaReport) -> None:
    """Obstruction-implies-pattern and avoidance-implies-no-obstruction,
    exhaustively over S_k for k up to n."""
    implied = {
        "type1": set(TYPE1_IMPLIED),
        "type2": set(TYPE2_IMPLIED),
        "type3": set(TYPE3_IMPLIED),
    }
    checks = 0
    for k in range(1, n + 1):
        for w in symmetric_group(k):
            avoids, contained = avoids_all_eight(w)
            contained_set = {str(p) for p in contained}
            obs = obstructions(w)
            for kind in OBSTRUCTION_KINDS:
                checks += 1
                wit = obs[kind]
                if wit is not None and not (contained_set & implied[kind]):
                    report.violations.append(
                        {
                            "suite": "diagram",
                            "check": f"{kind}-implies-pattern",
                            "w": str(w),
                            "witness": [[c.row, c.col] for c in wit.cells],
                            "patterns_contained": sorted(contained_set),
                        }
                    )
            checks += 1
            if avoids and any(obs[kind] is not None for kind in OBSTRUCTION_KINDS):
                report.violations.append(
                    {
                        "suite": "diagram",
                        "check": "avoidance-implies-no-obstruction",
                        "w": str(w),
                        "obstructions": {
                            kind: None
                            if obs[kind] is None
                            else [[c.row, c.col] for c in obs[kind].cells]
                            for kind in OBSTRUCTION_KINDS
                        },
                    }
                )
    report.checks_run["diagram"] = checks


def _gvd_suite(n: int, report: LemmaReport, budget_limit: int) -> None:
    """Corner-deletion suites over S_k for k up to n: the link ideal
    matches the deletion permutation's ideal, new essential cells stay
    within the two allowed positions, avoidance is inherited, and the full
    hypothesis check passes for pattern-avoiding permutations."""
    checks = 0
    for k in range(2, n + 1):
        shape_order = RowLex((k, k))
        for w in symmetric_group(k):
            if coxeter_length(w) == 0:
                continue
            avoids, _ = avoids_all_eight(w)
            d_cells = rothe_diagram(w).cells
            for corner in sorted(lower_outside_corners(w)):
                w2 = delete_corner_permutation(w, corner)
                checks += 1
                if rothe_diagram(w2).cells != d_cells - {corner}:
                    report.violations.append(
                        {
                            "suite": "gvd",
                            "check": "deletion-diagram",
                            "w": str(w),
                            "corner": [corner.row, corner.col],
                            "w_prime": str(w2),
                        }
                    )
                split = split_on_corner(w, corner, shape_order)
                checks += 1
                if not ideals_equal(
                    split.n_generators(),
                    fulton_generators(w2),
                    shape_order,
                    Budget(budget_limit),
                ):
                    report.violations.append(
                        {
                            "suite": "gvd",
                            "check": "link-ideal-equals-deletion-ideal",
                            "w": str(w),
                            "corner": [corner.row, corner.col],
                            "w_prime": str(w2),
                        }
                    )
                checks += 1
                new_ess = essential_set(w2).cells - essential_set(w).cells
                allowed = {
                    Cell(corner.row - 1, corner.col),
                    Cell(corner.row, corner.col - 1),
                }
                if not new_ess <= allowed:
                    report.violations.append(
                        {
                            "suite": "gvd",
                            "check": "new-essential-cells",
                            "w": str(w),
                            "corner": [corner.row, corner.col],
                            "w_prime": str(w2),
                            "unexpected": [
                                [c.row, c.col] for c in sorted(new_ess - allowed)
                            ],
                        }
                    )
                if avoids:
                    checks += 1
                    avoids2, _ = avoids_all_eight(w2)
                    obs2 = obstructions(w2)
                    if not avoids2 or any(
                        obs2[kind] is not None for kind in OBSTRUCTION_KINDS
                    ):
                        report.violations.append(
                            {
                                "suite": "gvd",
                                "check": "avoidance-inherited",
                                "w": str(w),
                                "corner": [corner.row, corner.col],
                                "w_prime": str(w2),
                            }
                        )
                    checks += 1
                    kr = check_kr_hypotheses(
                        w, corner, shape_order, Budget(budget_limit)
                    )
                    if not kr.all_pass:
                        report.violations.append(
                            {
                                "suite": "gvd",
                                "check": "kr-hypotheses",
                                "w": str(w),
                                "corner": [corner.row, corner.col],
                                "report": kr.to_json(),
                            }
                        )
    report.checks_run["gvd"] = checks


def verify_lemmas(
    n: int, suite: str = "all", budget_limit: int = DEFAULT_BUDGET
) -> LemmaReport:
    """Run the structural-lemma suites exhaustively up to S_n.  The
    diagram suite is pure combinatorics; the corner-deletion suite runs
    ideal computations and is meant for n up to 5."""
    if suite not in ("diagram", "gvd", "all"):
        raise ValueError("suite must be one of diagram, gvd, all")
    start = time.perf_counter()
    report = LemmaReport(n=n, suite=suite)
    if suite in ("diagram", "all"):
        _diagram_suite(n, report)
    if suite in ("gvd", "all"):
        _gvd_suite(n, report, budget_limit)
    report.elapsed = time.perf_counter() - start
    return report


@dataclass
class FixtureReport:
    """Gröbner verdicts of the bundled rank-matrix fixtures; ok when both
    fail as the analysis predicts."""

    results: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return all(r["is_groebner"] is False for r in self.results.values())

    def to_json(self) -> dict:
        return {
            "results": self.results,
            "ok": self.ok,
            "elapsed_ms": round(self.elapsed * 1000.0, 3),
        }


def load_fixture(name: str) -> RankMatrix:
    """Read a bundled rank matrix by file name."""
    text = (
        resources.files("schubgb").joinpath("fixtures").joinpath(name).read_text()
    )
    return RankMatrix.parse(text)


def verify_rank_fixtures(budget_limit: int = DEFAULT_BUDGET) -> FixtureReport:
    """Both bundled rank matrices give generating sets that fail the
    Gröbner check under the row-major order; the report carries the
    failing S-pair witnesses."""
    start = time.perf_counter()
    report = FixtureReport()
    for name in ("N1", "N2"):
        R = load_fixture(f"{name}.txt")
        gens = rank_matrix_generators(R)
        shape = (R.rows, R.cols)
        rep = is_groebner(gens, RowLex(shape), Budget(budget_limit))
        report.results[name] = rep.to_json()
    report.elapsed = time.perf_counter() - start
    return report
