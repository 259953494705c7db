"""
Performance Ordering Check
Benchmarks the three cut set engines on seeded random topologies with a
single worker and checks that the decision-tree engine is no slower than
Shannon expansion and at least 10x faster than the combinatorial search.

Exit code 0 when both orderings hold, 3 otherwise.
"""

import argparse
import random
import sys
from pathlib import Path

import pandas as pd
from loguru import logger

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from cutsets.bench import records_frame, run_bench, write_records_csv
from cutsets.generator import generate_topology
from cutsets.models import GeneratorParams, Method


def sample_pairs(topology, count: int, seed: int):
    """Deterministic sample of unordered pairs, as label tuples."""
    pairs = topology.pairs()
    if count < len(pairs):
        pairs = sorted(random.Random(seed).sample(pairs, count))
    return [(topology.nodes[u], topology.nodes[v]) for u, v in pairs]


def method_totals(frame: pd.DataFrame) -> pd.Series:
    """Total time per method; a timeout counts at its budget."""
    frame = frame.assign(total_ns=frame["mps_time_ns"] + frame["mcs_time_ns"])
    return frame.groupby("method")["total_ns"].sum()


def main():
    parser = argparse.ArgumentParser(description="Check engine performance ordering on generated topologies")
    parser.add_argument(
        '--graphs',
        nargs='+',
        default=['n=17,p=0.25,seed=7', 'n=24,p=0.2,seed=11'],
        help='Generator parameters, one topology each'
    )
    parser.add_argument(
        '--pairs',
        type=int,
        default=40,
        help='Pairs sampled per topology (default: 40)'
    )
    parser.add_argument(
        '--timeout',
        type=float,
        default=30.0,
        help='Per-engine timeout in seconds (default: 30)'
    )
    parser.add_argument(
        '--repetitions',
        type=int,
        default=1,
        help='Timed runs per measurement (default: 1)'
    )
    parser.add_argument(
        '--ratio',
        type=float,
        default=10.0,
        help='Required combinatorial / fast total time ratio (default: 10)'
    )
    parser.add_argument(
        '--out',
        type=str,
        help='Optional records CSV'
    )

    args = parser.parse_args()

    methods = [Method.FAST, Method.SHANNON, Method.COMBINATORIAL]
    records = []
    for index, params in enumerate(args.graphs):
        topology = generate_topology(GeneratorParams.parse(params))
        pairs = sample_pairs(topology, args.pairs, seed=index)
        logger.info(f"{topology.name}: {len(pairs)} pairs")
        records += run_bench(
            [topology],
            methods,
            pairs=pairs,
            timeout=args.timeout,
            repetitions=args.repetitions,
            workers=1
        )

    if args.out:
        write_records_csv(records, args.out)

    totals = method_totals(records_frame(records))
    fast = int(totals.get(Method.FAST.value, 0))
    shannon = int(totals.get(Method.SHANNON.value, 0))
    combinatorial = int(totals.get(Method.COMBINATORIAL.value, 0))

    for method, total in totals.items():
        logger.info(f"{method:<14} {total / 1e9:10.3f} s")

    fast_not_slower = fast <= shannon
    combinatorial_slower = combinatorial >= args.ratio * fast
    print(f"fast <= shannon: {fast_not_slower} ({fast / 1e9:.3f}s vs {shannon / 1e9:.3f}s)")
    print(
        f"combinatorial >= {args.ratio:g} x fast: {combinatorial_slower} "
        f"({combinatorial / 1e9:.3f}s vs {fast / 1e9:.3f}s)"
    )

    sys.exit(0 if fast_not_slower and combinatorial_slower else 3)


if __name__ == "__main__":
    main()
