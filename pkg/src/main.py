"""Command-line interface for the lattice-coefficient univalent function search."""
import argparse
import asyncio
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field

from src import config
from src.core.exact import Lattice
from src.errors import LatticeSchlichtError
from src.geometry.boundary import boundary_trace
from src.geometry.report import GeometryReporter
from src.geometry.svg import render_svg
from src.observability.logger import generate_correlation_id, get_logger, setup_logging
from src.reconstruct.catalog import match_catalog, representatives, resolve_function
from src.reconstruct.verify import verify_candidate
from src.search.config import Rational, SearchConfig
from src.search.orchestrator import SearchOrchestrator

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INCOMPLETE = 2
EXIT_VERIFY_FAILED = 3
EXIT_INTERRUPTED = 130

# Flags that do not change results and are left out of output files.
_NON_RESULT_FIELDS = {"jobs", "out", "trace", "config", "verbose"}


class UsageError(LatticeSchlichtError):
    """Invalid command-line usage."""


class RunConfig(BaseModel):
    """
    Validated flag set of one CLI run, embedded in every output file.

    Only fields relevant to the subcommand are populated; the rest stay None.
    """
    model_config = ConfigDict(extra="forbid")

    command: str
    lattice: Optional[int] = Field(default=None, ge=1)
    max_depth: Optional[int] = Field(default=None, ge=4)
    jobs: int = Field(default=config.MAX_WORKERS, ge=1)
    function: Optional[str] = None
    all: Optional[bool] = None
    grunsky_order: Optional[int] = Field(default=None, ge=0)
    prawitz: Optional[List[Rational]] = None
    depth: Optional[int] = Field(default=None, ge=2)
    prawitz_depth: Optional[int] = Field(default=None, ge=1)
    samples: Optional[int] = Field(default=None, ge=16)
    out: Optional[str] = None
    trace: Optional[str] = None
    config: Optional[str] = None
    verbose: bool = False

    def for_output(self) -> Dict[str, Any]:
        data = self.model_dump(mode="json", exclude=_NON_RESULT_FIELDS)
        return {k: v for k, v in data.items() if v is not None}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _alphas(text: str) -> List[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="python -m src.main",
        description="Univalent functions with lattice coefficients: search, verify, report, plot",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  Integer coefficients (nine functions):
    python -m src.main search --lattice 1 --out m1.json

  Half-integer coefficients with a trace and four workers:
    python -m src.main search --lattice 2 --out m2.json --trace m2.jsonl --jobs 4

  Necessary conditions for a literal (a/b(c) means a/(b*c)):
    python -m src.main verify --function "z(2+z^3)/2(1+z^3)"

  Geometry table and figures:
    python -m src.main report --all --out report.md
    python -m src.main plot --function f4 --out f4.svg
        """,
    )
    parser.add_argument("--verbose", action="store_true", default=None, help="Log at INFO level on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    search = sub.add_parser("search", help="Branch-and-prune search over a coefficient lattice")
    search.add_argument("--lattice", type=int, help="Lattice denominator m for (1/m)Z")
    search.add_argument("--max-depth", type=int, help=f"Deepest coefficient (default: {config.SEARCH_DEFAULTS['max_depth']})")
    search.add_argument("--out", type=str, help="Results JSON path")
    search.add_argument("--trace", type=str, help="Optional JSON-lines trace path")
    search.add_argument("--jobs", type=int, help=f"Worker processes (default: {config.MAX_WORKERS})")

    verify = sub.add_parser("verify", help="Check necessary univalence conditions for one function")
    verify.add_argument("--function", type=str, help="Catalog id, alias or P/Q literal")
    verify.add_argument("--lattice", type=int, help="Lattice denominator for the membership check (default: 2)")
    verify.add_argument("--grunsky-order", type=int, help="Certify Grunsky orders 1..n")
    verify.add_argument("--prawitz", type=_alphas, help="Comma-separated exponents, e.g. 2/3,1")
    verify.add_argument("--depth", type=int, help="Membership and area depth K")
    verify.add_argument("--prawitz-depth", type=int, help="Prawitz truncation order M")
    verify.add_argument("--out", type=str, help="Report JSON path (default: stdout)")

    for name, help_text in (("report", "Geometry table (Markdown and JSON)"), ("plot", "SVG boundary figures")):
        cmd = sub.add_parser(name, help=help_text)
        target = cmd.add_mutually_exclusive_group()
        target.add_argument("--function", type=str, help="Catalog id or alias")
        target.add_argument("--all", action="store_true", default=None, help="The six representatives f1..f6")
        cmd.add_argument("--samples", type=int, help=f"Samples per circle (default: {config.GEOMETRY_DEFAULTS['samples']})")
        cmd.add_argument("--out", type=str, help="Output file (plot --all: directory)")

    for cmd in sub.choices.values():
        cmd.add_argument("--config", type=str, help="YAML or JSON file with flag defaults")
    return parser


_DEFAULTS: Dict[str, Dict[str, Any]] = {
    "search": {"max_depth": config.SEARCH_DEFAULTS["max_depth"]},
    "verify": {
        "lattice": 2,
        "grunsky_order": config.VERIFY_DEFAULTS["n_cert"],
        "prawitz": [str(a) for a in config.VERIFY_DEFAULTS["prawitz_alphas"]],
        "depth": config.VERIFY_DEFAULTS["membership_depth"],
        "prawitz_depth": config.VERIFY_DEFAULTS["prawitz_depth"],
    },
    "report": {"samples": config.GEOMETRY_DEFAULTS["samples"], "out": "report.md"},
    "plot": {"samples": config.GEOMETRY_DEFAULTS["samples"]},
}


def load_run_config(argv: Optional[List[str]] = None) -> RunConfig:
    """
    Parse flags, layering built-in defaults < --config file < explicit flags.

    Raises:
        UsageError: bad flags or config file contents
    """
    args = vars(build_parser().parse_args(argv))
    merged: Dict[str, Any] = dict(_DEFAULTS.get(args["command"], {}))
    if args.get("config"):
        with open(args["config"], encoding="utf-8") as fh:
            loaded = yaml.safe_load(fh) or {}
        if not isinstance(loaded, dict):
            raise UsageError(f"{args['config']}: expected a mapping of flag defaults")
        merged.update({str(k).replace("-", "_"): v for k, v in loaded.items()})
    merged.update({k: v for k, v in args.items() if v is not None})
    if isinstance(merged.get("prawitz"), str):
        merged["prawitz"] = _alphas(merged["prawitz"])
    return RunConfig(**merged)


def write_json(data: Dict[str, Any], path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, sort_keys=True, indent=2) + "\n", encoding="utf-8")


async def cmd_search(run: RunConfig) -> int:
    if run.lattice is None:
        raise UsageError("search needs --lattice")
    if not run.out:
        raise UsageError("search needs --out")
    cfg = SearchConfig(lattice=run.lattice, max_depth=run.max_depth)
    orchestrator = SearchOrchestrator(jobs=run.jobs, correlation_id=generate_correlation_id())
    outcome = await orchestrator.search(cfg)

    payload = {"config": run.for_output()}
    payload.update(outcome.to_dict())
    write_json(payload, Path(run.out))
    if run.trace:
        trace_path = Path(run.trace)
        trace_path.parent.mkdir(parents=True, exist_ok=True)
        with open(trace_path, "w", encoding="utf-8") as fh:
            for record in outcome.trace:
                fh.write(json.dumps(record.to_dict(), sort_keys=True) + "\n")

    print(f"Lattice (1/{run.lattice})Z, max depth {cfg.max_depth}")
    print(f"Complete: {outcome.complete}")
    print(f"Candidates: {len(outcome.candidates)}")
    for c in outcome.candidates:
        tag = " (via symmetry)" if c.via_symmetry else ""
        print(f"  {c.catalog_id or '-':<12} {c.fn.expression()}{tag}")
    if outcome.rejected:
        print(f"Rejected: {len(outcome.rejected)}")
    if outcome.unresolved:
        print(f"Unresolved: {len(outcome.unresolved)}")
    print(f"Results saved to: {run.out}")
    return EXIT_OK if outcome.complete and not outcome.unresolved else EXIT_INCOMPLETE


def cmd_verify(run: RunConfig) -> int:
    if not run.function:
        raise UsageError("verify needs --function")
    label, R = resolve_function(run.function)
    report = verify_candidate(
        R,
        Lattice(run.lattice),
        K=run.depth,
        n_cert=run.grunsky_order,
        alphas=[Fraction(a) for a in run.prawitz],
        M=run.prawitz_depth,
    )
    entry = match_catalog(R)
    payload = {"config": run.for_output(), "label": label, "catalog_id": entry.id if entry else None}
    payload.update(report.to_dict())

    if run.out:
        write_json(payload, Path(run.out))
    else:
        print(json.dumps(payload, sort_keys=True, indent=2))
    status = "PASS" if report.passed else "FAIL (" + ", ".join(report.failures()) + ")"
    print(f"{label}: {status}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def _targets(run: RunConfig):
    if run.function:
        label, R = resolve_function(run.function)
        entry = match_catalog(R)
        return [(run.function, entry.id if entry else label, R)]
    if run.all:
        return [(alias, entry.id, entry.fn) for alias, entry in representatives()]
    raise UsageError("pass --function <id> or --all")


def cmd_report(run: RunConfig) -> int:
    targets = _targets(run)
    reporter = GeometryReporter(samples=run.samples)
    report = reporter.build(targets)
    out = Path(run.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(reporter.to_markdown(report), encoding="utf-8")
    data = reporter.to_dict(report)
    data["config"] = run.for_output()
    write_json(data, out.with_suffix(".json"))
    print(f"Report saved to: {out}")
    return EXIT_OK


def cmd_plot(run: RunConfig) -> int:
    targets = _targets(run)
    if run.all:
        directory = Path(run.out or "figures")
        directory.mkdir(parents=True, exist_ok=True)
        paths = [directory / f"{alias}.svg" for alias, _, _ in targets]
    else:
        paths = [Path(run.out or f"{targets[0][0]}.svg")]
        paths[0].parent.mkdir(parents=True, exist_ok=True)
    for (alias, _, R), path in zip(targets, paths):
        render_svg([boundary_trace(R, 1.0, run.samples, label=alias)], path)
        print(f"Figure saved to: {path}")
    return EXIT_OK


COMMANDS = {"search": cmd_search, "verify": cmd_verify, "report": cmd_report, "plot": cmd_plot}


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for CLI; returns the process exit code."""
    logger = get_logger(__name__)
    try:
        run = load_run_config(argv)
        if run.verbose:
            setup_logging("INFO")
        handler = COMMANDS[run.command]
        if asyncio.iscoroutinefunction(handler):
            return asyncio.run(handler(run))
        return handler(run)
    except KeyboardInterrupt:
        print("\nInterrupted by user.", file=sys.stderr)
        return EXIT_INTERRUPTED
    except (LatticeSchlichtError, ValueError, KeyError, OSError) as e:
        logger.error("command_failed", error=str(e), error_type=type(e).__name__)
        print(f"ERROR: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
