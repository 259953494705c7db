"""
Cut Set Command-Line Interface
Minimal path sets, minimal cut sets, benchmarks and criticality rankings
for topology files.

Exit codes: 0 ok, 1 input error, 2 invalid pair, 3 verification or
agreement failure, 4 engine timeout.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional, Tuple

from loguru import logger
from pydantic import ValidationError

from cli.settings import Settings
from cutsets.bench import (
    all_agree,
    compute_mcs,
    read_records_csv,
    run_bench,
    select_pairs,
    summarize,
    verify_pair,
    write_plot_data,
    write_records_csv,
    write_summary_json,
)
from cutsets.budget import BudgetExceeded, StepBudget
from cutsets.criticality import rank_elements
from cutsets.generator import generate_topology
from cutsets.models import CliConfig, GeneratorParams, Method
from cutsets.mps import find_mps
from cutsets.topology import EDGE_LIST, FORMATS, PairError, Topology, load_topology, serialize_topology

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_PAIR = 2
EXIT_MISMATCH = 3
EXIT_TIMEOUT = 4

DIRECT_EDGE_NOTE = "pair directly connected; no cut set over interior elements"
EDGE_MODE_NOTE = "edge elements included; a reported cut set may leave the pair connected (check with --verify)"


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors are input errors (exit 1); exit 2 is reserved for invalid pairs."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def setup_logging(settings: Settings, verbosity: int = 0):
    """Configure loguru sinks: console on stderr, optional rotating file."""
    logger.remove()

    if verbosity >= 2:
        level = "DEBUG"
    elif verbosity == 1:
        level = "INFO"
    else:
        level = settings.log_level.upper()

    logger.add(
        sys.stderr,
        level=level,
        format="<green>{time:HH:mm:ss}</green> | <level>{level}</level> | {message}",
        serialize=settings.log_json
    )

    if settings.log_dir:
        log_dir = Path(settings.log_dir)
        log_dir.mkdir(parents=True, exist_ok=True)
        logger.add(
            log_dir / "fast_mcs_{time}.log",
            rotation="10 MB",
            retention="30 days",
            level="DEBUG" if verbosity >= 2 else "INFO",
            format="{time:YYYY-MM-DD HH:mm:ss} | {level} | {message}",
            serialize=settings.log_json
        )


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _note(message: str):
    print(f"note: {message}", file=sys.stderr)


def _or_default(value, default):
    return default if value is None else value


def _parse_methods(text: str) -> List[str]:
    return [m.strip() for m in text.split(",") if m.strip()]


def _parse_pairs(text: str) -> List[Tuple[str, str]]:
    pairs = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        src, sep, dst = item.partition(":")
        if not sep or not src or not dst:
            raise ValueError(f"pairs must look like 'u:v', got '{item}'")
        pairs.append((src, dst))
    return pairs


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="fast-mcs",
        description="Minimal path sets and minimal cut sets of network topologies"
    )
    parser.add_argument(
        '-v', '--verbose',
        action='count',
        default=0,
        help='More logging on standard error (-v info, -vv debug)'
    )
    subparsers = parser.add_subparsers(dest='subcommand', required=True)

    def add_pair_args(sub):
        sub.add_argument('topology', help='Topology file (edge list, or JSON when the suffix is .json)')
        sub.add_argument('--src', required=True, help='Source node label')
        sub.add_argument('--dst', required=True, help='Destination node label')
        sub.add_argument(
            '--include-edges',
            action='store_true',
            help='Treat edges as failable elements too'
        )

    mps = subparsers.add_parser('mps', help='Enumerate minimal path sets of a pair')
    add_pair_args(mps)
    mps.add_argument('--format', choices=['table', 'json'], default='table', help='Output format (default: table)')

    mcs = subparsers.add_parser('mcs', help='Compute minimal cut sets of a pair')
    add_pair_args(mcs)
    mcs.add_argument('--method', choices=[m.value for m in Method], default=Method.FAST.value,
                     help='Cut set engine (default: fast)')
    mcs.add_argument('--format', choices=['json', 'table'], default='json', help='Output format (default: json)')
    mcs.add_argument('--timeout', type=float, help='Engine timeout in seconds (default: FAST_MCS_TIMEOUT or 30)')
    mcs.add_argument('--verify', action='store_true', help='Check the result by reachability (exit 3 on mismatch)')

    bench = subparsers.add_parser('bench', help='Benchmark engines over every pair of topologies')
    bench.add_argument('topologies', nargs='*', help='Topology files')
    bench.add_argument('--methods', default='fast', help='Comma-separated engines (default: fast)')
    bench.add_argument('--pairs', help="Comma-separated pairs 'u:v' (default: all pairs)")
    bench.add_argument('--generate', action='append', default=[], metavar='n=..,p=..,seed=..',
                       help='Add a generated topology (repeatable)')
    bench.add_argument('--timeout', type=float, help='Per-engine timeout in seconds (default: FAST_MCS_TIMEOUT or 30)')
    bench.add_argument('--repetitions', type=int, help='Timed runs per measurement (default: FAST_MCS_REPETITIONS or 3)')
    bench.add_argument('--threads', type=int, help='Worker processes (capped by FAST_MCS_THREADS)')
    bench.add_argument('--include-edges', action='store_true', help='Treat edges as failable elements too')
    bench.add_argument('--out', help='Records CSV (default: standard output)')
    bench.add_argument('--summary', help='Summary JSON (default: the --out path with suffix .summary.json)')

    plot = subparsers.add_parser('plot-data', help='Aggregate a records CSV into plot data')
    plot.add_argument('records', help='Records CSV written by bench')
    plot.add_argument('--out', help='Plot-data CSV (default: standard output)')

    generate = subparsers.add_parser('generate', help='Write a seeded random connected topology')
    generate.add_argument('--n', type=int, required=True, help='Number of nodes')
    generate.add_argument('--p', type=float, required=True, help='Edge probability')
    generate.add_argument('--seed', type=int, default=0, help='Random seed (default: 0)')
    generate.add_argument('--format', choices=list(FORMATS), default=EDGE_LIST, help='Output format (default: edge-list)')
    generate.add_argument('--out', help='Output file (default: standard output)')

    critical = subparsers.add_parser('critical', help='Rank elements by cut set participation')
    critical.add_argument('topology', help='Topology file')
    critical.add_argument('--pairs', help="Comma-separated pairs 'u:v' (default: all pairs)")
    critical.add_argument('--method', choices=[m.value for m in Method], default=Method.FAST.value,
                          help='Cut set engine (default: fast)')
    critical.add_argument('--include-edges', action='store_true', help='Treat edges as failable elements too')
    critical.add_argument('--timeout', type=float, help='Engine timeout in seconds per pair')
    critical.add_argument('--format', choices=['json', 'table'], default='json', help='Output format (default: json)')

    return parser


def build_config(args: argparse.Namespace, settings: Settings) -> CliConfig:
    """Merge parsed arguments over the environment settings and validate them."""
    threads = settings.threads
    if getattr(args, 'threads', None) is not None:
        threads = args.threads
        if 'threads' in settings.model_fields_set:
            threads = min(threads, settings.threads)

    if args.subcommand == 'bench':
        methods = _parse_methods(args.methods)
        paths = args.topologies
    elif args.subcommand in ('mcs', 'critical'):
        methods = [args.method]
        paths = [args.topology]
    else:
        methods = [Method.FAST.value]
        paths = [getattr(args, 'topology', None) or getattr(args, 'records', None)]

    pairs = _parse_pairs(args.pairs) if getattr(args, 'pairs', None) else None

    return CliConfig(
        subcommand=args.subcommand,
        topology_paths=[p for p in paths if p],
        src=getattr(args, 'src', None),
        dst=getattr(args, 'dst', None),
        methods=methods,
        include_edges=getattr(args, 'include_edges', False),
        timeout=_or_default(getattr(args, 'timeout', None), settings.timeout),
        repetitions=_or_default(getattr(args, 'repetitions', None), settings.repetitions),
        threads=threads,
        output=getattr(args, 'out', None),
        summary=getattr(args, 'summary', None),
        format=getattr(args, 'format', 'json'),
        generate=[GeneratorParams.parse(g) for g in getattr(args, 'generate', [])],
        pairs=pairs,
        verify=getattr(args, 'verify', False)
    )


def _load_single(config: CliConfig) -> Topology:
    return load_topology(config.topology_paths[0])


def cmd_mps(config: CliConfig, settings: Settings) -> int:
    topology = _load_single(config)
    result = find_mps(topology, config.src, config.dst, include_edges=config.include_edges)
    paths = result.labelled_paths(topology)

    if config.format == 'json':
        print(json.dumps(paths, separators=(",", ":")))
        return EXIT_OK

    for path in paths:
        interior = ",".join(path[1:-1]) or "-"
        print(f"{' - '.join(path):<40} interior: {interior}")
    logger.info(f"{len(paths)} minimal path set(s)")
    return EXIT_OK


def cmd_mcs(config: CliConfig, settings: Settings) -> int:
    topology = _load_single(config)
    result = find_mps(topology, config.src, config.dst, include_edges=config.include_edges)
    universe = topology.interior_universe(result.src, result.dst, config.include_edges)
    method = config.methods[0]

    family = compute_mcs(method, result.interiors, universe, StepBudget(timeout=config.timeout))
    labels = family.to_labels(topology.element_label)

    if config.format == 'json':
        print(json.dumps(labels, separators=(",", ":")))
    else:
        for cut in labels:
            print("{" + ",".join(cut) + "}")
    if result.interiors.contains_empty_set():
        _note(DIRECT_EDGE_NOTE)
    if config.include_edges:
        _note(EDGE_MODE_NOTE)

    if config.verify:
        verdict = verify_pair(topology, result.src, result.dst, family, verify_limit=settings.verify_limit)
        if not verdict:
            return _fail(f"verification failed: {verdict.reason}", EXIT_MISMATCH)
        if not verdict.complete:
            _note(f"partial verification: {verdict.reason}")
        logger.info("verification passed")
    return EXIT_OK


def cmd_bench(config: CliConfig, settings: Settings, verbosity: int = 0) -> int:
    topologies = [load_topology(p) for p in config.topology_paths]
    topologies += [generate_topology(g) for g in config.generate]
    if not topologies:
        return _fail("bench needs at least one topology file or --generate", EXIT_INPUT)

    records = run_bench(
        topologies,
        config.methods,
        pairs=config.pairs,
        timeout=config.timeout,
        repetitions=config.repetitions,
        workers=config.threads,
        include_edges=config.include_edges,
        progress=verbosity > 0
    )

    write_records_csv(records, config.output or sys.stdout)

    summary_path = config.summary
    if summary_path is None and config.output:
        summary_path = str(Path(config.output).with_suffix(".summary.json"))
    if summary_path:
        write_summary_json(summarize(records), summary_path)

    if not all_agree(records):
        return _fail("engines disagree on at least one pair", EXIT_MISMATCH)
    return EXIT_OK


def cmd_plot_data(config: CliConfig, settings: Settings) -> int:
    records = read_records_csv(config.topology_paths[0])
    skipped = write_plot_data(records, config.output or sys.stdout)
    if skipped:
        _note(f"{skipped} timeout/error record(s) excluded from the totals")
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    params = GeneratorParams(n=args.n, p=args.p, seed=args.seed)
    text = serialize_topology(generate_topology(params), args.format)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        logger.info(f"Wrote topology to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_critical(config: CliConfig, settings: Settings) -> int:
    topology = _load_single(config)
    method = config.methods[0]
    families = []
    for s, d in select_pairs(topology, config.pairs):
        result = find_mps(topology, s, d, include_edges=config.include_edges)
        universe = topology.interior_universe(s, d, config.include_edges)
        families.append(compute_mcs(method, result.interiors, universe, StepBudget(timeout=config.timeout)))

    ranking = rank_elements(topology, families)
    if config.format == 'json':
        print(json.dumps([c.model_dump(exclude={"element"}) for c in ranking], indent=2))
    else:
        print(f"{'element':<16} {'min_order':>9} {'mcs_count':>9} {'pair_count':>10}")
        for c in ranking:
            print(f"{c.label:<16} {c.min_order:>9} {c.mcs_count:>9} {c.pair_count:>10}")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        settings = Settings()
    except ValidationError as e:
        print(f"error: invalid FAST_MCS_* environment: {e}", file=sys.stderr)
        return EXIT_INPUT
    setup_logging(settings, args.verbose)

    try:
        if args.subcommand == 'generate':
            return cmd_generate(args)

        config = build_config(args, settings)
        if config.src is not None and config.src == config.dst:
            raise PairError(f"source and destination must differ (got '{config.src}' twice)")

        if config.subcommand == 'mps':
            return cmd_mps(config, settings)
        if config.subcommand == 'mcs':
            return cmd_mcs(config, settings)
        if config.subcommand == 'bench':
            return cmd_bench(config, settings, args.verbose)
        if config.subcommand == 'plot-data':
            return cmd_plot_data(config, settings)
        return cmd_critical(config, settings)

    except PairError as e:
        return _fail(str(e), EXIT_PAIR)
    except BudgetExceeded as e:
        return _fail(f"engine timed out: {e}", EXIT_TIMEOUT)
    except (ValueError, OSError) as e:
        return _fail(str(e), EXIT_INPUT)


if __name__ == "__main__":
    sys.exit(main())
