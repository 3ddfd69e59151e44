# blockdet/cli.py
"""Command-line front end: python -m blockdet <command> ..."""
import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from . import advisor, bench, reports
from .advisor import Method
from .blockcompute import Kind
from .config import ArithmeticMode, configure_logging, get_settings
from .errors import BlockDetError, DomainError, SpecError
from .generator import generate
from .matrix_io import parse_matrix, write_matrix
from .schemas import GenReport, GenSpec, RunConfig

logger = logging.getLogger(__name__)

FORMATS = ["dense-csv", "matrix-market", "json"]


class _Parser(argparse.ArgumentParser):
    """argparse with exit code 1 for usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"error: {message}\n")


def _count(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _emit(text: str, output_path: Optional[str]) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if output_path:
        with open(output_path, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _load(cfg: RunConfig):
    if not cfg.input_path:
        raise DomainError(f"'{cfg.command}' needs an input matrix")
    return parse_matrix(cfg.input_path, cfg.format, cfg.arithmetic)


def cmd_analyze(cfg: RunConfig, args) -> str:
    return reports.analyze_report(_load(cfg)).model_dump_json(indent=2)


def cmd_bpartitions(cfg: RunConfig, args) -> str:
    return reports.bpartitions_report(_load(cfg), limit=args.limit).model_dump_json(indent=2)


def _value(cfg: RunConfig, args, kind: Kind) -> str:
    report = reports.value_report(
        _load(cfg), kind, cfg.method,
        epsilon=cfg.epsilon,
        timing=args.timing,
        workers=args.workers,
        bordered=args.bordered or None,
    )
    return report.model_dump_json(indent=2)


def cmd_det(cfg: RunConfig, args) -> str:
    return _value(cfg, args, Kind.DET)


def cmd_per(cfg: RunConfig, args) -> str:
    return _value(cfg, args, Kind.PER)


def cmd_advise(cfg: RunConfig, args) -> str:
    epsilon = cfg.epsilon
    if args.effective_epsilon:
        epsilon = advisor.measure_effective_epsilon(seed=cfg.seed)
    if args.curve:
        if args.n is None or args.delta is None:
            raise DomainError("--curve needs --n and --delta")
        points = advisor.curve_points(args.n, args.delta, epsilon, range(1, args.k_max + 1), kind=args.kind)
        return advisor.curve_csv(points)
    if cfg.input_path:
        return reports.advise_report(_load(cfg), epsilon).model_dump_json(indent=2)
    if args.n is None or args.delta is None:
        raise DomainError("advise needs an input matrix or --n and --delta")
    return reports.bound_report(args.n, args.delta, args.k, epsilon).model_dump_json(indent=2)


def cmd_bench(cfg: RunConfig, args) -> str:
    return bench.bench_csv(bench.run_bench(seed=cfg.seed))


def cmd_gen(cfg: RunConfig, args) -> str:
    if not cfg.input_path:
        raise SpecError("'gen' needs a GenSpec JSON file")
    try:
        with open(cfg.input_path, "r", encoding="utf-8") as f:
            spec = GenSpec.model_validate_json(f.read())
    except ValidationError as e:
        raise SpecError(f"invalid generator spec: {e.errors()[0]['msg']}") from e
    if args.seed is not None:
        spec = spec.model_copy(update={"seed": args.seed})
    m, expected = generate(spec)
    if args.matrix:
        write_matrix(m, args.matrix, cfg.format)
    report = GenReport(spec=spec, matrix_path=args.matrix, decomposition=reports.decomposition_report(expected))
    return report.model_dump_json(indent=2)


COMMANDS = {
    "analyze": cmd_analyze,
    "bpartitions": cmd_bpartitions,
    "det": cmd_det,
    "per": cmd_per,
    "advise": cmd_advise,
    "bench": cmd_bench,
    "gen": cmd_gen,
}


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="dense-csv", help="Input matrix format.")
    common.add_argument("--arithmetic", choices=[m.value for m in ArithmeticMode],
                        default=settings.arithmetic.value, help="Exact (int/rational) or float arithmetic.")
    common.add_argument("-o", "--output", dest="output_path", help="Write the report here instead of stdout.")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logs.")

    parser = _Parser(description="Block-decomposition determinants and permanents.")
    subparsers = parser.add_subparsers(dest="command", required=True, help="Available commands")

    p = subparsers.add_parser("analyze", parents=[common], help="Blocks, cut-vertices and cut-indices.")
    p.add_argument("input", help="Matrix file.")

    p = subparsers.add_parser("bpartitions", parents=[common], help="Count (and list) B-partitions.")
    p.add_argument("input", help="Matrix file.")
    p.add_argument("--limit", type=_count, default=0, help="List at most this many partitions.")

    for name, what in (("det", "determinant"), ("per", "permanent")):
        p = subparsers.add_parser(name, parents=[common], help=f"Compute the {what}.")
        p.add_argument("input", help="Matrix file.")
        p.add_argument("--method", choices=[m.value for m in Method], default=Method.AUTO.value)
        p.add_argument("--epsilon", type=float, default=settings.epsilon)
        p.add_argument("--workers", type=int, default=None, help="Threads for the summand cache fill.")
        p.add_argument("--bordered", action="store_true", help="Fill det summands by bordered updates.")
        p.add_argument("--timing", action="store_true", help="Add wall_time_ms to the report.")

    p = subparsers.add_parser("advise", parents=[common], help="Blockwise-vs-dense recommendation and bounds.")
    p.add_argument("input", nargs="?", help="Matrix file (optional with --n/--delta).")
    p.add_argument("--n", type=int)
    p.add_argument("--delta", type=int)
    p.add_argument("--k", type=int, default=1, help="Number of blocks for the bound.")
    p.add_argument("--epsilon", type=float, default=settings.epsilon)
    p.add_argument("--curve", action="store_true", help="Print the Gamma-vs-k curve as CSV.")
    p.add_argument("--k-max", type=int, default=32)
    p.add_argument("--kind", choices=["det", "per"], default="det")
    p.add_argument("--effective-epsilon", action="store_true", help="Measure epsilon on this machine.")
    p.add_argument("--seed", type=int, default=0)

    p = subparsers.add_parser("bench", parents=[common], help="Time blockwise vs dense on generated chains.")
    p.add_argument("--seed", type=int, default=0)

    p = subparsers.add_parser("gen", parents=[common], help="Generate a matrix from a GenSpec JSON file.")
    p.add_argument("input", help="GenSpec JSON file.")
    p.add_argument("--matrix", help="Write the generated matrix here (in --format).")
    p.add_argument("--seed", type=int, default=None, help="Override the seed from the GenSpec file.")
    return parser


def _run_config(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        input_path=getattr(args, "input", None),
        format=args.format,
        arithmetic=args.arithmetic,
        method=getattr(args, "method", Method.AUTO.value),
        epsilon=getattr(args, "epsilon", None) or get_settings().epsilon,
        seed=getattr(args, "seed", None) or 0,
        output_path=args.output_path,
        verbosity=args.verbose,
    )


def main(argv: Optional[List[str]] = None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        configure_logging(args.verbose)
        cfg = _run_config(args)
        logger.debug("run config: %s", cfg.model_dump())
        _emit(COMMANDS[cfg.command](cfg, args), cfg.output_path)
    except BlockDetError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except (ValidationError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
