"""Command-line interface: ``levelfair <command> [flags]``.

Exit codes: 0 success, 1 a fairness check or bound failed, 2 input or
configuration error, 3 oracle budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from levelfair.audit import MODES, OracleBudget, OracleInfeasible, audit, mms_value
from levelfair.counterexample import narrative, reproduce_flaw
from levelfair.experiments import SweepConfig, records_to_csv, run_sweep, sweep_ok
from levelfair.generator import GenConfig, gen_leveled, gen_nonleveled
from levelfair.instance import (
    InputError,
    allocation_from_json,
    dumps,
    instance_from_json,
)
from levelfair.sdq import run_sdq

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_ORACLE = 0, 1, 2, 3


class _Ctx:
    def __init__(self, args: argparse.Namespace) -> None:
        self.quiet = args.quiet
        self.canonical = args.canonical_json

    def info(self, msg: str) -> None:
        if not self.quiet:
            print(msg, file=sys.stderr)

    def emit(self, text: str, path: str | None) -> None:
        if not text.endswith("\n"):
            text += "\n"
        if path:
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)

    def emit_json(self, obj: Any, path: str | None) -> None:
        self.emit(dumps(obj, self.canonical), path)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _budget(args: argparse.Namespace) -> OracleBudget:
    return OracleBudget(args.max_agents, args.max_items, args.max_nodes)


def _parse_order(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"--order must be comma-separated integers, got {text!r}") from None


def cmd_solve(args: argparse.Namespace, ctx: _Ctx) -> int:
    instance = instance_from_json(_read(args.instance))
    allocation = run_sdq(instance, _parse_order(args.order))
    ctx.emit_json(allocation.to_json_obj(), args.output)
    return EXIT_OK


def cmd_audit(args: argparse.Namespace, ctx: _Ctx) -> int:
    instance = instance_from_json(_read(args.instance))
    allocation = allocation_from_json(_read(args.allocation))
    report = audit(instance, allocation, args.mode, _budget(args), efx_only=args.efx_only)
    ctx.emit_json(report.to_json_obj(), args.output)
    if not args.efx_only and not report.ratios_computed:
        ctx.info(f"error: {report.ratios_unavailable}")
        return EXIT_ORACLE
    if not report.quota_respected:
        ctx.info("note: bundle sizes do not match the quota plan")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_mms(args: argparse.Namespace, ctx: _Ctx) -> int:
    instance = instance_from_json(_read(args.instance))
    result = mms_value(instance, args.agent, args.mode, _budget(args))
    ctx.emit_json(result.to_json_obj(), args.output)
    return EXIT_OK


def cmd_gen(args: argparse.Namespace, ctx: _Ctx) -> int:
    config = GenConfig(args.n, args.m, args.base_max, args.seed, args.identical)
    instance = gen_nonleveled(config) if args.nonleveled else gen_leveled(config)
    ctx.emit_json(instance.to_json_obj(), args.output)
    return EXIT_OK


def cmd_counterexample(args: argparse.Namespace, ctx: _Ctx) -> int:
    report = reproduce_flaw(args.a, args.b)
    ctx.emit_json(report.to_json_obj(), args.output)
    ctx.info(narrative(report))
    return EXIT_OK if report.flaw_confirmed and report.corrected_bound_holds else EXIT_FAIL


def cmd_sweep(args: argparse.Namespace, ctx: _Ctx) -> int:
    text = _read(args.config)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"sweep config: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    config = SweepConfig.from_json_obj(obj)
    records, summary = run_sweep(config, workers=args.workers)
    ctx.emit(records_to_csv(records), args.output)
    if args.summary:
        ctx.emit_json(summary, args.summary)
    else:
        ctx.info(dumps(summary, ctx.canonical))
    return EXIT_OK if sweep_ok(records) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help="suppress messages on stderr")
    common.add_argument(
        "--canonical-json", action="store_true", default=argparse.SUPPRESS, help="compact, whitespace-free JSON output"
    )

    parser = argparse.ArgumentParser(prog="levelfair", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    def oracle_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--mode", choices=MODES, default="unrestricted")
        p.add_argument("--max-agents", type=int, default=OracleBudget.max_agents)
        p.add_argument("--max-items", type=int, default=OracleBudget.max_items)
        p.add_argument("--max-nodes", type=int, default=None)

    p = sub.add_parser("solve", parents=[common], help="run the quota picking sequence")
    p.add_argument("--instance", required=True)
    p.add_argument("--order", help="comma-separated picking order, identity by default")
    p.add_argument("--output")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("audit", parents=[common], help="EF/EFX/alpha-MMS report for an allocation")
    p.add_argument("--instance", required=True)
    p.add_argument("--allocation", required=True)
    p.add_argument("--efx-only", action="store_true")
    oracle_flags(p)
    p.add_argument("--output")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("mms", parents=[common], help="exact maximin share of one agent")
    p.add_argument("--instance", required=True)
    p.add_argument("--agent", type=int, default=0)
    oracle_flags(p)
    p.add_argument("--output")
    p.set_defaults(func=cmd_mms)

    p = sub.add_parser("gen", parents=[common], help="generate a seeded random instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--base-max", type=int, default=10)
    p.add_argument("--identical", action="store_true")
    p.add_argument("--nonleveled", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("counterexample", parents=[common], help="replay the ten-item counterexample")
    p.add_argument("--a", type=int, default=7)
    p.add_argument("--b", type=int, default=9)
    p.add_argument("--output")
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("sweep", parents=[common], help="run a seeded experiment sweep")
    p.add_argument("--config", required=True)
    p.add_argument("--output", help="CSV path, stdout by default")
    p.add_argument("--summary", help="per-cell summary JSON path, stderr by default")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.quiet = getattr(args, "quiet", False)
    args.canonical_json = getattr(args, "canonical_json", False)
    ctx = _Ctx(args)
    try:
        return args.func(args, ctx)
    except OracleInfeasible as exc:
        ctx.info(f"error: {exc}")
        return EXIT_ORACLE
    except (InputError, ValueError) as exc:
        ctx.info(f"error: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
