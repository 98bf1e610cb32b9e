"""Command-line entry point.

    polyglot-forge <subcommand> --config pipeline.json [flags]

Subcommands: ingest, clean, dedup, stats, codefilter, mix, chunk, report,
all. Flags override the matching config keys. Exit codes: 0 success,
1 validation/usage error, 2 data error (partial artifacts are kept).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import os
import sys
from pathlib import Path

from .config import ConfigError, load_config
from .mixer import MixPlanError
from .pipeline import DataError, StageRunner, run_all

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_DATA = 2

SUBCOMMANDS = ("ingest", "clean", "dedup", "stats", "codefilter", "mix", "chunk", "report", "all")


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the pipeline reserves 2 for data errors
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_VALIDATION)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="polyglot-forge", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="pipeline config JSON")
        p.add_argument("--seed", type=int, default=None, help="override config seed")
        p.add_argument("--threads", type=int, default=None, help="override worker count")
        p.add_argument("--output-dir", default=None, help="override output directory")
        p.add_argument(
            "--input",
            action="append",
            default=None,
            metavar="KIND:PATH",
            help="replace config inputs (repeatable); KIND is mono, bi, or code",
        )
        if name in ("clean", "all"):
            p.add_argument("--audit-drops", action="store_true", help="also write dropped records as JSONL")
        if name in ("mix", "all"):
            p.add_argument("--plan-only", action="store_true", help="compute the mix plan without sampling")
        if name in ("chunk", "all"):
            p.add_argument("--strict-listing", action="store_true", help="trailing space on non-final document lines")
            p.add_argument("--drop-remainder", action="store_true", help="discard the final short document per direction")
    return parser


def _threads_override(args: argparse.Namespace) -> int | None:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("POLYGLOT_FORGE_THREADS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ConfigError([f"POLYGLOT_FORGE_THREADS is not an integer: {env!r}"])
    return None


def _parse_inputs(values: list[str] | None) -> list[dict] | None:
    if values is None:
        return None
    parsed = []
    for value in values:
        kind, sep, path = value.partition(":")
        if not sep or kind not in ("mono", "bi", "code"):
            raise ConfigError([f"--input must be KIND:PATH with KIND in mono|bi|code, got {value!r}"])
        parsed.append({"path": path, "kind": kind, "collection": Path(path).stem, "source": Path(path).stem})
    return parsed


def run(subcommand: str, args: argparse.Namespace) -> int:
    overrides = {
        "seed": args.seed,
        "threads": _threads_override(args),
        "output_dir": args.output_dir,
        "inputs": _parse_inputs(args.input),
    }
    cfg = load_config(args.config, overrides)
    runner = StageRunner(cfg)

    if subcommand == "ingest":
        manifest = runner.run_ingest()
    elif subcommand == "clean":
        manifest = runner.run_clean(audit_drops=getattr(args, "audit_drops", False))
    elif subcommand == "dedup":
        manifest = runner.run_dedup()
    elif subcommand == "stats":
        manifest = runner.run_stats()
    elif subcommand == "codefilter":
        manifest = runner.run_codefilter()
    elif subcommand == "mix":
        manifest, plan = runner.run_mix(plan_only=getattr(args, "plan_only", False))
        print(plan.render_table())
    elif subcommand == "chunk":
        chunk = dataclasses.replace(
            cfg.chunk,
            strict_listing=cfg.chunk.strict_listing or getattr(args, "strict_listing", False),
            drop_remainder=cfg.chunk.drop_remainder or getattr(args, "drop_remainder", False),
        )
        runner = StageRunner(dataclasses.replace(cfg, chunk=chunk))
        manifest = runner.run_chunk()
    elif subcommand == "report":
        report = runner.run_report()
        print(json.dumps(report, indent=2, sort_keys=True))
        return EXIT_OK
    elif subcommand == "all":
        if getattr(args, "strict_listing", False) or getattr(args, "drop_remainder", False):
            chunk = dataclasses.replace(
                cfg.chunk,
                strict_listing=cfg.chunk.strict_listing or getattr(args, "strict_listing", False),
                drop_remainder=cfg.chunk.drop_remainder or getattr(args, "drop_remainder", False),
            )
            runner = StageRunner(dataclasses.replace(cfg, chunk=chunk))
        run_all(
            runner,
            audit_drops=getattr(args, "audit_drops", False),
            plan_only=getattr(args, "plan_only", False),
        )
        return EXIT_OK
    else:  # pragma: no cover - argparse rejects unknown subcommands
        return EXIT_VALIDATION

    counts = manifest.get("counts", {})
    logger.info("%s done: %s", subcommand, counts)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args.subcommand, args)
    except ConfigError as e:
        for message in e.messages:
            print(f"config error: {message}", file=sys.stderr)
        return EXIT_VALIDATION
    except (DataError, MixPlanError) as e:
        print(f"data error: {e}", file=sys.stderr)
        return EXIT_DATA
    except OSError as e:
        print(f"data error: {e}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    raise SystemExit(main())
