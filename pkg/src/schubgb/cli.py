"""Command-line interface.

Permutations are written in one-line notation: a digit string for n up to
9 (e.g. 315642) or comma-separated images beyond that (e.g.
10,1,2,3,4,5,6,7,8,9).  Every subcommand accepts --json for machine
output.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .groebner import is_groebner
from .gvd import (
    NotLowerOutsideCorner,
    check_kr_hypotheses,
    delete_corner_permutation,
    q_ideal,
    split_on_corner,
)
from .idealgen import generators_by_style, GENERATOR_STYLES
from .permcomb import (
    Cell,
    EIGHT_PATTERNS,
    OBSTRUCTION_KINDS,
    MalformedPermutation,
    Permutation,
    contains_pattern,
    coxeter_length,
    dominant_part,
    essential_set,
    lower_outside_corners,
    obstructions,
    rank_matrix,
    rothe_diagram,
)
from .polycore import (
    DEFAULT_BUDGET,
    Budget,
    BudgetExceeded,
    ORDER_NAMES,
    parse_order,
)
from .verifier import (
    SweepConfig,
    sweep,
    verify_lemmas,
    verify_rank_fixtures,
    write_csv,
)

LARGE_SWEEP_THRESHOLD = 6


def _cells(cells) -> list[list[int]]:
    return [[c.row, c.col] for c in sorted(cells)]


def _cells_text(cells) -> str:
    return " ".join(str(c) for c in sorted(cells)) or "(none)"


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def cmd_diagram(args) -> int:
    w = Permutation.parse(args.w)
    payload = {
        "w": str(w),
        "n": w.n,
        "coxeter_length": coxeter_length(w),
        "diagram": _cells(rothe_diagram(w).cells),
        "essential": _cells(essential_set(w)),
        "dominant": _cells(dominant_part(w)),
        "lower_outside_corners": _cells(lower_outside_corners(w)),
    }
    _emit(
        args,
        payload,
        [
            f"w = {w}  (n = {w.n}, coxeter length = {payload['coxeter_length']})",
            f"diagram:               {_cells_text(rothe_diagram(w).cells)}",
            f"essential:             {_cells_text(essential_set(w))}",
            f"dominant:              {_cells_text(dominant_part(w))}",
            f"lower outside corners: {_cells_text(lower_outside_corners(w))}",
        ],
    )
    return 0


def cmd_rank(args) -> int:
    w = Permutation.parse(args.w)
    R = rank_matrix(w)
    payload = {"w": str(w), "entries": [list(row) for row in R.entries]}
    _emit(args, payload, [f"rank matrix of {w}:", str(R)])
    return 0


def cmd_generators(args) -> int:
    w = Permutation.parse(args.w)
    order = parse_order(args.order, (w.n, w.n))
    gens = generators_by_style(w, args.style)
    payload = {
        "w": str(w),
        "style": args.style,
        "order": order.spec(),
        "count": len(gens),
        "generators": gens.records(order),
    }
    lines = [f"{args.style} generators of {w}: {len(gens)}"]
    for i, g in enumerate(gens, start=1):
        labels = "; ".join(str(lb) for lb in g.labels)
        lines.append(f"  g{i} (deg {g.degree}): {g.text(order)}  [{labels}]")
    _emit(args, payload, lines)
    return 0


def cmd_patterns(args) -> int:
    w = Permutation.parse(args.w)
    results = {}
    for p in EIGHT_PATTERNS:
        wit = contains_pattern(w, p) if p.n <= w.n else None
        results[str(p)] = (
            None
            if wit is None
            else {"positions": list(wit), "values": [w(i) for i in wit]}
        )
    avoids = all(v is None for v in results.values())
    payload = {"w": str(w), "avoids_all": avoids, "witnesses": results}
    lines = [f"w = {w}: {'avoids' if avoids else 'contains'} the eight patterns"]
    for name, wit in results.items():
        if wit is None:
            status = "avoided"
        else:
            pos = ",".join(map(str, wit["positions"]))
            vals = ",".join(map(str, wit["values"]))
            status = f"contained at positions ({pos}) with values ({vals})"
        lines.append(f"  {name}: {status}")
    _emit(args, payload, lines)
    return 0


def cmd_obstructions(args) -> int:
    w = Permutation.parse(args.w)
    obs = obstructions(w)
    payload = {
        "w": str(w),
        "obstructions": {
            kind: None if wit is None else [[c.row, c.col] for c in wit.cells]
            for kind, wit in obs.items()
        },
    }
    lines = [f"obstructions of {w}:"]
    for kind in OBSTRUCTION_KINDS:
        wit = obs[kind]
        lines.append(
            f"  {kind}: "
            + ("none" if wit is None else " ".join(str(c) for c in wit.cells))
        )
    _emit(args, payload, lines)
    return 0


def cmd_check(args) -> int:
    w = Permutation.parse(args.w)
    order = parse_order(args.order, (w.n, w.n))
    gens = generators_by_style(w, "cdg")
    try:
        report = is_groebner(gens, order, Budget(args.budget))
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    payload = {"w": str(w), **report.to_json()}
    lines = [
        f"w = {w}: dominant-zeroed generators are "
        + ("a" if report.is_groebner else "NOT a")
        + f" Groebner basis under {order.spec()}",
        f"  pairs checked: {report.pairs_checked}, skipped: {report.pairs_skipped}",
    ]
    if report.failing_pair is not None:
        fp = report.failing_pair
        lines.append(
            "  failing pair: "
            + " | ".join(
                ", ".join(str(lb) for lb in labels) for labels in fp.pair_labels
            )
        )
        lines.append(f"  remainder: {fp.remainder_text}")
    _emit(args, payload, lines)
    return 0


def _parse_corner(text: str) -> Cell:
    try:
        i, j = (int(part) for part in text.split(","))
    except ValueError:
        raise SystemExit(f"error: corner must be i,j (got {text!r})")
    return Cell(i, j)


def cmd_gvd(args) -> int:
    w = Permutation.parse(args.w)
    corner = _parse_corner(args.corner)
    order = parse_order(args.order, (w.n, w.n))
    try:
        split = split_on_corner(w, corner, order)
        w2 = delete_corner_permutation(w, corner)
        q = q_ideal(w, corner)
        kr = check_kr_hypotheses(w, corner, order, Budget(args.budget))
    except NotLowerOutsideCorner as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    payload = {
        "w_prime": str(w2),
        "pairs": len(split.pairs),
        "h_count": len(split.h_list),
        "q_generators": len(q),
        **kr.to_json(),
    }
    lines = [
        f"w = {w}, corner {corner}, y = x[{corner.row},{corner.col}]",
        f"  deletion permutation w' = {w2}",
        f"  split: {len(split.pairs)} pairs, {len(split.h_list)} y-free generators",
        f"  q-ideal generators: {len(q)}",
        f"  degenerate corner: {kr.degenerate}",
        f"  c_groebner={kr.c_groebner} n_groebner={kr.n_groebner} "
        f"two_minors_in_n={kr.two_minors_in_n} heights_ok={kr.heights_ok} "
        f"y_compatible={kr.order_y_compatible}",
        f"  all hypotheses pass: {kr.all_pass}",
    ]
    _emit(args, payload, lines)
    return 0


def cmd_sweep(args) -> int:
    if args.n >= LARGE_SWEEP_THRESHOLD and not args.allow_large:
        print(
            f"error: sweeps over S_{args.n} are gated; pass --allow-large to run",
            file=sys.stderr,
        )
        return 2
    orders = tuple(args.orders.split(","))
    for name in orders:
        if name not in ORDER_NAMES:
            print(f"error: unknown order {name!r}", file=sys.stderr)
            return 2
    subset = tuple(args.subset.split(",")) if args.subset else None
    cfg = SweepConfig(
        n=args.n,
        orders=orders,
        jobs=args.jobs,
        budget_limit=args.budget,
        out_path=args.out,
        subset=subset,
        only_pattern_containing=args.only_pattern_containing,
    )
    csv_records: list[dict] = []
    sink = csv_records.append if args.csv else None
    summary = sweep(cfg, records_sink=sink)
    if args.csv:
        write_csv(csv_records, args.csv)
    if args.json:
        print(json.dumps(summary.to_json(), indent=2, sort_keys=True))
    else:
        print(
            f"S_{summary.n} sweep under {', '.join(summary.orders)}: "
            f"{summary.total} permutations, {summary.cdg_count} Groebner"
        )
        for spec, failures in sorted(summary.non_cdg.items()):
            print(f"  not Groebner under {spec}: {' '.join(sorted(failures))}")
        print(f"  disagreements: {len(summary.disagreements)}")
        print(f"  budget errors: {len(summary.budget_errors)}")
        if summary.out_path:
            print(f"  records: {summary.out_path}")
    return summary.exit_code


def cmd_verify_lemmas(args) -> int:
    report = verify_lemmas(args.n, args.suite, args.budget)
    if args.json:
        print(json.dumps(report.to_json(), indent=2, sort_keys=True))
    else:
        print(
            f"lemma suite '{args.suite}' up to S_{args.n}: "
            f"{sum(report.checks_run.values())} checks, "
            f"{len(report.violations)} violations"
        )
        for v in report.violations:
            print(f"  violation: {json.dumps(v, sort_keys=True)}")
    return 0 if report.ok else 1


def cmd_verify_fixtures(args) -> int:
    report = verify_rank_fixtures(args.budget)
    if args.json:
        print(json.dumps(report.to_json(), indent=2, sort_keys=True))
    else:
        for name, result in sorted(report.results.items()):
            verdict = result["is_groebner"]
            print(f"{name}: is_groebner = {verdict} (expected False)")
            if result["failing_pair"]:
                print(f"  remainder: {result['failing_pair']['remainder']}")
        print(f"ok: {report.ok}")
    return 0 if report.ok else 1


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="emit JSON")


def _add_budget(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--budget",
        type=int,
        default=DEFAULT_BUDGET,
        help="reduction step budget per task",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schubgb",
        description="Schubert determinantal ideals and diagonal Groebner bases",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diagram", help="diagram, essential set, dominant part")
    p.add_argument("w")
    _add_common(p)
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("rank", help="rank matrix")
    p.add_argument("w")
    _add_common(p)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("generators", help="print a generating set")
    p.add_argument("w")
    p.add_argument("--style", choices=GENERATOR_STYLES, default="cdg")
    p.add_argument("--order", choices=ORDER_NAMES, default="rowlex")
    _add_common(p)
    p.set_defaults(func=cmd_generators)

    p = sub.add_parser("patterns", help="containment of the eight patterns")
    p.add_argument("w")
    _add_common(p)
    p.set_defaults(func=cmd_patterns)

    p = sub.add_parser("obstructions", help="diagram obstruction witnesses")
    p.add_argument("w")
    _add_common(p)
    p.set_defaults(func=cmd_obstructions)

    p = sub.add_parser("check", help="Groebner check of the generators")
    p.add_argument("w")
    p.add_argument("--order", choices=ORDER_NAMES, default="rowlex")
    _add_budget(p)
    _add_common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gvd", help="corner split and hypothesis checks")
    p.add_argument("w")
    p.add_argument("--corner", required=True, help="i,j")
    p.add_argument("--order", choices=ORDER_NAMES, default="rowlex")
    _add_budget(p)
    _add_common(p)
    p.set_defaults(func=cmd_gvd)

    p = sub.add_parser("sweep", help="classify a whole symmetric group")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--orders", default="rowlex", help="comma-separated order names")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="JSONL record path")
    p.add_argument("--csv", help="CSV summary path")
    p.add_argument("--subset", help="comma-separated one-line permutations")
    p.add_argument("--only-pattern-containing", action="store_true")
    p.add_argument("--allow-large", action="store_true")
    _add_budget(p)
    _add_common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify-lemmas", help="structural lemma suites")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--suite", choices=("diagram", "gvd", "all"), default="all")
    _add_budget(p)
    _add_common(p)
    p.set_defaults(func=cmd_verify_lemmas)

    p = sub.add_parser("verify-fixtures", help="bundled rank matrix fixtures")
    _add_budget(p)
    _add_common(p)
    p.set_defaults(func=cmd_verify_fixtures)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MalformedPermutation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
