"""
Benchmark Harness
Times the path-set phase and every cut set engine over the source-destination
pairs of a set of topologies, checks engine agreement and writes the records,
summary and plot-data files.
"""

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, NamedTuple, Optional, Sequence, TextIO, Tuple, Union

import numpy as np
import pandas as pd
from loguru import logger
from pydantic import ValidationError
from tqdm import tqdm

from cutsets.budget import BudgetExceeded, StepBudget
from cutsets.mcs_baselines import SopSuccess, combinatorial_mcs, shannon_mcs
from cutsets.mcs_fast import fast_mcs
from cutsets.models import (
    PLOT_COLUMNS,
    RECORD_COLUMNS,
    BenchRecord,
    BenchSummary,
    Method,
    MethodTotals,
    RecordStatus,
    TopologySummary,
)
from cutsets.mps import find_mps, mps_oracle
from cutsets.setfamily import ElementSet, SetFamily, iter_ids
from cutsets.topology import NodeRef, PairError, Topology, is_connected_after_removal

PathLike = Union[str, Path]


def compute_mcs(
    method: Union[Method, str],
    interiors: SetFamily,
    universe: ElementSet,
    budget: Optional[StepBudget] = None
) -> SetFamily:
    """Run one cut set engine on a pair's path interiors."""
    method = Method(method)
    if method == Method.FAST:
        return fast_mcs(interiors, budget)
    if method == Method.SHANNON:
        return shannon_mcs(SopSuccess(interiors), budget)
    return combinatorial_mcs(interiors, universe, budget)


class PairTask(NamedTuple):
    """Unit of work handed to a bench worker."""
    topology: Topology
    src: int
    dst: int
    methods: Tuple[Method, ...]
    timeout: float
    repetitions: int
    include_edges: bool = False


def _median_ns(samples: List[int]) -> int:
    return int(np.median(samples))


def bench_pair(task: PairTask) -> List[BenchRecord]:
    """
    Benchmark every requested engine on one pair.

    The path sets are computed once and shared by the engines. A timeout or
    failure becomes the record's status; it never propagates.
    """
    topology = task.topology
    mps_times = []
    for _ in range(task.repetitions):
        start = time.perf_counter_ns()
        mps = find_mps(topology, task.src, task.dst, include_edges=task.include_edges)
        mps_times.append(time.perf_counter_ns() - start)
    mps_time = _median_ns(mps_times)
    universe = topology.interior_universe(task.src, task.dst, task.include_edges)

    src_label, dst_label = topology.nodes[task.src], topology.nodes[task.dst]
    budget_ns = int(task.timeout * 1e9)
    results: List[Tuple[Method, RecordStatus, int, Optional[SetFamily]]] = []

    for method in task.methods:
        times = []
        family: Optional[SetFamily] = None
        status = RecordStatus.OK
        try:
            for _ in range(task.repetitions):
                budget = StepBudget(timeout=task.timeout)
                start = time.perf_counter_ns()
                family = compute_mcs(method, mps.interiors, universe, budget)
                times.append(time.perf_counter_ns() - start)
        except BudgetExceeded:
            status = RecordStatus.TIMEOUT
            logger.warning(f"{topology.name} {src_label}-{dst_label}: {method.value} timed out after {task.timeout}s")
        except Exception as e:
            status = RecordStatus.ERROR
            logger.error(f"{topology.name} {src_label}-{dst_label}: {method.value} failed: {e}")

        if status == RecordStatus.OK:
            results.append((method, status, _median_ns(times), family))
        else:
            results.append((method, status, budget_ns if status == RecordStatus.TIMEOUT else 0, None))

    reference_method = Method.FAST if Method.FAST in task.methods else task.methods[0]
    reference = next(family for method, _, _, family in results if method == reference_method)

    records = []
    for method, status, mcs_time, family in results:
        if family is None or reference is None:
            agreement = None
        else:
            agreement = family == reference
        records.append(BenchRecord(
            topology=topology.name,
            num_nodes=topology.num_nodes,
            num_edges=topology.num_edges,
            src=src_label,
            dst=dst_label,
            method=method,
            status=status,
            mps_time_ns=mps_time,
            mcs_time_ns=mcs_time,
            num_mps=len(mps),
            num_mcs=None if family is None else len(family),
            agreement=agreement
        ))
        if agreement is False:
            logger.error(
                f"{topology.name} {src_label}-{dst_label}: {method.value} disagrees with {reference_method.value}"
            )
    return records


def select_pairs(
    topology: Topology,
    pairs: Optional[Sequence[Tuple[NodeRef, NodeRef]]] = None
) -> List[Tuple[int, int]]:
    """
    Unordered pairs (u, v), u < v, in canonical order.

    Without an explicit list every pair of the topology is selected.
    """
    if pairs is None:
        return topology.pairs()
    selected = set()
    for src, dst in pairs:
        s, d = topology.index_of(src), topology.index_of(dst)
        if s == d:
            raise PairError(f"source and destination must differ (got '{topology.nodes[s]}' twice)")
        selected.add((min(s, d), max(s, d)))
    return sorted(selected)


def run_bench(
    topologies: Sequence[Topology],
    methods: Iterable[Union[Method, str]],
    pairs: Optional[Sequence[Tuple[NodeRef, NodeRef]]] = None,
    timeout: float = 30.0,
    repetitions: int = 3,
    workers: int = 1,
    include_edges: bool = False,
    progress: bool = False
) -> List[BenchRecord]:
    """
    Benchmark cut set engines over topologies and pairs.

    Args:
        topologies: Topologies to benchmark, in output order
        methods: Engines to run; agreement is checked against fast when it
            is requested, otherwise against the first method
        pairs: Explicit pairs applied to every topology (all pairs when None)
        timeout: Per-engine budget in seconds
        repetitions: Runs per measurement; the median is recorded
        workers: Worker processes (1 = run in this process)
        include_edges: Put edge elements into the cut set universe
        progress: Show a progress bar on standard error

    Returns:
        Records ordered by topology, pair, then method
    """
    methods = tuple(dict.fromkeys(Method(m) for m in methods))
    if not methods:
        raise ValueError("at least one method is required")
    if timeout <= 0:
        raise ValueError(f"timeout must be positive, got {timeout}")
    if repetitions < 1:
        raise ValueError(f"repetitions must be at least 1, got {repetitions}")

    tasks = [
        PairTask(topology, s, d, methods, timeout, repetitions, include_edges)
        for topology in topologies
        for s, d in select_pairs(topology, pairs)
    ]
    logger.info(
        f"Benchmarking {len(tasks)} pairs over {len(topologies)} topologies "
        f"with {', '.join(m.value for m in methods)} ({workers} worker(s))"
    )

    records: List[BenchRecord] = []
    bar = tqdm(total=len(tasks), desc="pairs", unit="pair", disable=not progress)
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(bench_pair, task) for task in tasks]
            for future in futures:
                records.extend(future.result())
                bar.update(1)
    else:
        for task in tasks:
            records.extend(bench_pair(task))
            bar.update(1)
    bar.close()

    logger.info(f"Bench finished: {len(records)} records")
    return records


def records_frame(records: Sequence[BenchRecord]) -> pd.DataFrame:
    frame = pd.DataFrame([r.csv_row() for r in records], columns=RECORD_COLUMNS)
    frame["num_mcs"] = frame["num_mcs"].astype("Int64")
    return frame


def summarize(records: Sequence[BenchRecord]) -> BenchSummary:
    """
    Aggregate records per topology and method.

    Engine time of timeout and error records is left out of the totals;
    they are counted instead.
    """
    summary = BenchSummary()
    if not records:
        return summary

    frame = records_frame(records)
    for topology, group in frame.groupby("topology", sort=False):
        topology_summary = TopologySummary(agreement=not group["agreement"].isin(["false"]).any())
        for method, rows in group.groupby("method", sort=False):
            ok = rows["status"] == RecordStatus.OK.value
            topology_summary.methods[method] = MethodTotals(
                total_mps_time_ns=int(rows["mps_time_ns"].sum()),
                total_mcs_time_ns=int(rows.loc[ok, "mcs_time_ns"].sum()),
                pairs=len(rows),
                timeouts=int((rows["status"] == RecordStatus.TIMEOUT.value).sum()),
                errors=int((rows["status"] == RecordStatus.ERROR.value).sum())
            )
        summary.topologies[topology] = topology_summary
    return summary


def all_agree(records: Iterable[BenchRecord]) -> bool:
    return all(r.agreement is not False for r in records)


def write_records_csv(records: Sequence[BenchRecord], path: Union[PathLike, TextIO]) -> None:
    records_frame(records).to_csv(path, index=False)
    logger.info(f"Wrote {len(records)} records to {getattr(path, 'name', path)}")


def _parse_agreement(value: str) -> Optional[bool]:
    if value == "":
        return None
    if value in ("true", "false"):
        return value == "true"
    raise ValueError(f"agreement must be 'true', 'false' or empty, got '{value}'")


def read_records_csv(path: PathLike) -> List[BenchRecord]:
    """Load a records CSV; a wrong header or unparsable row raises ValueError."""
    frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    if list(frame.columns) != RECORD_COLUMNS:
        raise ValueError(f"{path}: unexpected header {','.join(frame.columns)}")

    records = []
    for row_no, row in enumerate(frame.to_dict(orient="records"), start=2):
        try:
            row["num_mcs"] = row["num_mcs"] or None
            row["agreement"] = _parse_agreement(row["agreement"])
            records.append(BenchRecord.model_validate(row))
        except (ValidationError, ValueError) as e:
            raise ValueError(f"{path}: line {row_no}: {e}") from e
    return records


def write_summary_json(summary: BenchSummary, path: PathLike) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(summary.to_json_dict(), f, indent=2)
        f.write("\n")
    logger.info(f"Wrote summary to {path}")


def plot_data(records: Sequence[BenchRecord]) -> pd.DataFrame:
    """Per (topology, method) time totals over ok records."""
    frame = records_frame(records)
    frame = frame[frame["status"] == RecordStatus.OK.value]
    totals = (
        frame.groupby(["topology", "method"], sort=False)[["mps_time_ns", "mcs_time_ns"]]
        .sum()
        .reset_index()
        .rename(columns={"mps_time_ns": "total_mps_time_ns", "mcs_time_ns": "total_mcs_time_ns"})
    )
    return totals.reindex(columns=PLOT_COLUMNS)


def write_plot_data(records: Sequence[BenchRecord], path: Union[PathLike, TextIO]) -> int:
    """
    Write the plot-data CSV.

    Returns:
        Number of records left out because they did not finish
    """
    plot_data(records).to_csv(path, index=False)
    skipped = sum(1 for r in records if r.status != RecordStatus.OK)
    logger.info(f"Wrote plot data to {getattr(path, 'name', path)}")
    return skipped


@dataclass(frozen=True)
class Verification:
    """
    Outcome of checking a cut set family against the definition.

    `complete` is False when the completeness check was skipped, in which
    case `ok` only covers disconnection and minimality of the members.
    """
    ok: bool
    complete: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_pair(
    topology: Topology,
    src: NodeRef,
    dst: NodeRef,
    family: SetFamily,
    verify_limit: int = 16
) -> Verification:
    """
    Check a cut set family of a pair by reachability.

    Every member must disconnect the pair and every member minus one element
    must not. Completeness is checked against an exhaustive search over the
    interior nodes when the universe has at most `verify_limit` elements and
    the family has no edge elements.
    """
    s, d = topology.index_of(src), topology.index_of(dst)
    if s == d:
        raise PairError(f"source and destination must differ (got '{topology.nodes[s]}' twice)")

    endpoints = (1 << s) | (1 << d)
    for member in family:
        names = ",".join(topology.labels(member)) or "{}"
        if member.mask & endpoints:
            return Verification(False, True, f"{names} contains the source or destination")
        if is_connected_after_removal(topology, member, s, d):
            return Verification(False, True, f"{names} does not disconnect the pair")
        for element in iter_ids(member.mask):
            if not is_connected_after_removal(topology, member.without(element), s, d):
                return Verification(
                    False, True,
                    f"{names} is not minimal: still a cut without {topology.element_label(element)}"
                )

    if any(topology.is_edge_element(e) for e in family.elements()):
        return Verification(True, False, "completeness not checked for edge elements")
    universe = topology.interior_universe(s, d)
    if len(universe) > verify_limit:
        return Verification(True, False, f"completeness not checked above {verify_limit} elements")

    expected = combinatorial_mcs(mps_oracle(topology, s, d), universe)
    missing = expected.masks - family.masks
    if missing:
        first = ElementSet(min(missing, key=lambda m: (m.bit_count(), m)))
        return Verification(
            False, True,
            f"{len(missing)} cut set(s) missing, e.g. {','.join(topology.labels(first)) or '{}'}"
        )
    return Verification(True, True)
