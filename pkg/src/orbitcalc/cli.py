"""Command-line interface.

Subcommands: enumerate, poset, classes, verify, oracle, conjecture, chern.
Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .clans import (
    CASE_TAGS,
    CaseId,
    ClanError,
    case_from_params,
    enumerate_case_clans,
    enumerate_clans,
    leq,
    parse_clan,
    rank_table,
)
from .formulas import (
    FormulaError,
    all_classes,
    chern_factored,
    closed_class,
    formula_ring,
    verify_localization,
)
from .geometry import in_closure, measure_rank_numbers, representative_flag
from .orbits import (
    OrbitError,
    check_conjecture,
    full_closure_order,
    poset_json_text,
    poset_to_dot,
    weak_order_graph,
)
from .weyl import is_closed_clan

USAGE_ERROR = 2
VERIFY_ERROR = 1

DESK_RANKS = (
    ("a", 2, 2),
    ("b-so", 2, 1),
    ("c-spxsp", 2, 1),
    ("c-sp-gl", 2, 2),
    ("d-oxo-even", 2, 1),
    ("d-so-gl", 3, 3),
    ("d-oxo-odd", 1, 2),
)


@dataclass(frozen=True)
class RunConfig:
    case: CaseId | None
    fmt: str
    output: str | None
    factored: bool
    verify: bool
    threads: int
    max_nodes: int


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _resolve_case(args) -> CaseId:
    if args.case is None:
        raise ClanError("--case is required")
    if args.n is not None:
        if args.p is not None or args.q is not None:
            raise ClanError("give either --n or --p/--q, not both")
        p = q = args.n
    else:
        if args.p is None or args.q is None:
            raise ClanError("give --p and --q (or --n for the GL families)")
        p, q = args.p, args.q
    return case_from_params(args.case, p, q)


def _guardrail(cfg: RunConfig, case: CaseId) -> None:
    count = len(enumerate_case_clans(case))
    if count > cfg.max_nodes:
        print(
            f"warning: case {case.tag} ({case.p},{case.q}) has {count} orbits, "
            f"above the --max-nodes cap {cfg.max_nodes}; this may take long",
            file=sys.stderr,
        )


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_enumerate(cfg: RunConfig, args) -> int:
    case = _resolve_case(args)
    _guardrail(cfg, case)
    clans = enumerate_case_clans(case)
    if cfg.fmt == "json":
        data = {
            "case": {"tag": case.tag, "p": case.p, "q": case.q},
            "count": len(clans),
            "clans": [c.to_text() for c in clans],
        }
        _emit(cfg, json.dumps(data, indent=2, sort_keys=True) + "\n")
    else:
        _emit(cfg, "".join(c.to_text() + "\n" for c in clans))
    return 0


def cmd_poset(cfg: RunConfig, args) -> int:
    case = _resolve_case(args)
    _guardrail(cfg, case)
    poset = weak_order_graph(case)
    if args.full:
        poset = full_closure_order(poset)
    if cfg.fmt == "dot":
        _emit(cfg, poset_to_dot(poset))
    else:
        _emit(cfg, poset_json_text(poset))
    return 0


def cmd_classes(cfg: RunConfig, args) -> int:
    case = _resolve_case(args)
    _guardrail(cfg, case)
    poset = weak_order_graph(case)
    classes = all_classes(case, poset)
    if cfg.verify:
        report = verify_localization(case, classes=classes, threads=cfg.threads)
        if not report.ok:
            for line in report.failures:
                print(f"verify: {line}", file=sys.stderr)
            return VERIFY_ERROR
    ordered = sorted(poset.nodes, key=lambda c: (poset.ranks[c], c.sort_key()))

    def render(c) -> str:
        if cfg.factored and is_closed_clan(case, c):
            return closed_class(case, c).to_text()
        return classes[c].to_text()

    if cfg.fmt == "json":
        data = {
            "case": {"tag": case.tag, "p": case.p, "q": case.q},
            "classes": {c.to_text(): render(c) for c in ordered},
        }
        _emit(cfg, json.dumps(data, indent=2, sort_keys=True) + "\n")
    else:
        width = max(len(c.to_text()) for c in ordered)
        lines = [f"{c.to_text():<{width}}  {render(c)}" for c in ordered]
        _emit(cfg, "".join(line + "\n" for line in lines))
    return 0


def cmd_verify(cfg: RunConfig, args) -> int:
    if args.case is None:
        targets = [case_from_params(t, p, q) for t, p, q in DESK_RANKS]
    else:
        targets = [_resolve_case(args)]
    lines = []
    failed = False
    for case in targets:
        _guardrail(cfg, case)
        report = verify_localization(case, threads=cfg.threads)
        status = "OK" if report.ok else "FAIL"
        support = (
            f"support pairs {report.support_pairs_checked}"
            if report.support_checked
            else "support skipped (no fixed-point dictionary)"
        )
        lines.append(
            f"{status}  {case.tag} ({case.p},{case.q}): "
            f"closed points {report.closed_points_checked}, {support}, "
            f"dense {'ok' if report.dense_ok else 'FAIL'}"
        )
        if not report.ok:
            failed = True
            lines.extend(f"      {f}" for f in report.failures)
    _emit(cfg, "".join(line + "\n" for line in lines))
    return VERIFY_ERROR if failed else 0


def cmd_oracle(cfg: RunConfig, args) -> int:
    closure_max = args.max_n
    measure_max = args.measure_max_n
    mismatches = []
    measured = 0
    compared = 0
    for n in range(1, measure_max + 1):
        for p in range(0, n + 1):
            q = n - p
            for c in enumerate_clans(p, q):
                measured += 1
                if measure_rank_numbers(representative_flag(c), p, q) != rank_table(c):
                    mismatches.append(f"measure mismatch at {c.to_text()} ({p},{q})")
    for n in range(1, closure_max + 1):
        for p in range(0, n + 1):
            q = n - p
            clans = enumerate_clans(p, q)
            flags = {c: representative_flag(c) for c in clans}
            for g in clans:
                for t in clans:
                    compared += 1
                    if in_closure(flags[g], t) != leq(g, t):
                        mismatches.append(
                            f"closure mismatch: {g.to_text()} vs {t.to_text()} ({p},{q})"
                        )
    status = "OK" if not mismatches else "FAIL"
    out = [
        f"{status}  measured {measured} representative flags (p+q <= {measure_max}), "
        f"compared {compared} closure pairs (p+q <= {closure_max})"
    ]
    out.extend("      " + m for m in mismatches)
    _emit(cfg, "".join(line + "\n" for line in out))
    return VERIFY_ERROR if mismatches else 0


def cmd_conjecture(cfg: RunConfig, args) -> int:
    case = _resolve_case(args)
    _guardrail(cfg, case)
    try:
        report = check_conjecture(case)
    except OrbitError as exc:
        print(f"containment violated: {exc}", file=sys.stderr)
        return VERIFY_ERROR
    if cfg.fmt == "json":
        data = {
            "case": {"tag": case.tag, "p": case.p, "q": case.q},
            "coincides": report.coincides,
            "witnesses": [
                [a.to_text(), b.to_text()] for a, b in report.witnesses
            ],
        }
        _emit(cfg, json.dumps(data, indent=2, sort_keys=True) + "\n")
        return 0
    if report.coincides:
        _emit(
            cfg,
            f"case {case.tag} ({case.p},{case.q}): computed closure order "
            "coincides with the rank-number order\n",
        )
    else:
        lines = [
            f"case {case.tag} ({case.p},{case.q}): computed closure order is "
            f"strictly finer; {len(report.witnesses)} induced-only pairs:"
        ]
        lines.extend(
            f"  {a.to_text()} < {b.to_text()} only for rank numbers"
            for a, b in report.witnesses
        )
        _emit(cfg, "".join(line + "\n" for line in lines))
    return 0


def cmd_chern(cfg: RunConfig, args) -> int:
    case = _resolve_case(args)
    if args.clan is None:
        raise ClanError("--clan is required for chern")
    P, Q = case.ambient_shape
    c = parse_clan(args.clan, P, Q)
    formula = chern_factored(case, c)
    if cfg.fmt == "json":
        data = {
            "case": {"tag": case.tag, "p": case.p, "q": case.q},
            "clan": c.to_text(),
            "chern": formula.to_text(),
        }
        _emit(cfg, json.dumps(data, indent=2, sort_keys=True) + "\n")
    else:
        _emit(cfg, formula.to_text() + "\n")
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitcalc",
        description="Exact computation of orbit posets and equivariant "
        "classes for two-block flag-variety orbit families.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, case_required: bool = True) -> None:
        p.add_argument("--case", choices=sorted(CASE_TAGS),
                       required=False, default=None,
                       help="orbit family selector")
        p.add_argument("--p", type=int, default=None)
        p.add_argument("--q", type=int, default=None)
        p.add_argument("--n", type=int, default=None,
                       help="shorthand for --p N --q N (GL families)")
        p.add_argument("--format", dest="fmt", default="text",
                       choices=["text", "json", "dot"])
        p.add_argument("--output", default=None, help="write to file")
        p.add_argument("--factored", action="store_true")
        p.add_argument("--verify", action="store_true",
                       help="run localization checks before emitting")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--max-nodes", type=int, default=5000,
                       help="warn when the family is larger than this")

    for name, fn in [
        ("enumerate", cmd_enumerate),
        ("poset", cmd_poset),
        ("classes", cmd_classes),
        ("verify", cmd_verify),
        ("oracle", cmd_oracle),
        ("conjecture", cmd_conjecture),
        ("chern", cmd_chern),
    ]:
        p = sub.add_parser(name)
        common(p)
        p.set_defaults(fn=fn)

    sub.choices["poset"].add_argument(
        "--full", action="store_true",
        help="saturate and include the full closure order")
    sub.choices["chern"].add_argument("--clan", default=None)
    sub.choices["oracle"].add_argument("--max-n", type=int, default=4)
    sub.choices["oracle"].add_argument("--measure-max-n", type=int, default=5)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already
        return int(exc.code or 0)
    cfg = RunConfig(
        case=None,
        fmt=args.fmt,
        output=args.output,
        factored=args.factored,
        verify=args.verify,
        threads=args.threads,
        max_nodes=args.max_nodes,
    )
    try:
        return args.fn(cfg, args)
    except (ClanError, FormulaError, OrbitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
