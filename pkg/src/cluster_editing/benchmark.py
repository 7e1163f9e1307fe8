"""
Benchmark tables for the exact and frontier DPs on random 1D point graphs,
plus the large-read scaling run of the adaptive solver.
"""

import logging
import time
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import polars as pl

from cluster_editing.config import (
    AlignParams,
    InputValidationError,
    PointGraphParams,
)
from cluster_editing.exact_dp import exact_dp_weighted
from cluster_editing.graph import build_alignment_graph, generate_point_graph
from cluster_editing.heuristics import (
    HeuristicVariant,
    heuristic_cost_report,
    heuristic_dp,
)
from cluster_editing.ordering import adaptive_cluster_edit
from cluster_editing.simulate import simulate_reads

logger = logging.getLogger(__name__)

EXACT = "exact"
VARIANT_ORDER = [EXACT] + [v.value for v in HeuristicVariant]


def bench_run(n: int, l: float, seed: int) -> list[dict[str, Any]]:
    """Solve one random point graph with all three DPs."""
    _, graph = generate_point_graph(PointGraphParams(n=n, l=l, seed=seed))
    rows = []

    exact = exact_dp_weighted(graph)
    results = [(EXACT, exact, exact.cost)]
    for variant in HeuristicVariant:
        result = heuristic_dp(graph, variant=variant)
        results.append(
            (variant.value, result, heuristic_cost_report(graph, result.clustering))
        )

    for name, result, cost in results:
        clusters = len(result.clustering)
        rows.append(
            {
                "variant": name,
                "n": n,
                "l": l,
                "seed": seed,
                "cost": cost,
                "opcount": result.opcount,
                "clusters": clusters,
                "mean_cluster_size": n / clusters if clusters else 0.0,
                "peak_storage": result.peak_storage,
            }
        )
    return rows


@dataclass
class BenchReport:
    """Per (variant, l) means over all runs, plus the raw per-run rows."""

    summary: pl.DataFrame
    runs: pl.DataFrame
    seed_base: int

    def save(self, output_dir: str | Path) -> None:
        output_dir = Path(output_dir)
        output_dir.mkdir(parents=True, exist_ok=True)
        self.runs.write_parquet(
            output_dir / "bench_runs.parquet", compression="zstd", use_pyarrow=True
        )
        self.runs.select(["variant", "n", "l", "cost", "opcount"]).write_csv(
            output_dir / "bench_runs.tsv", separator="\t"
        )
        self.summary.write_csv(output_dir / "bench_report.tsv", separator="\t")
        logger.info(f"Saved benchmark report to {output_dir}")


def summarize_runs(runs: pl.DataFrame, seed_base: int) -> pl.DataFrame:
    rank = {name: i for i, name in enumerate(VARIANT_ORDER)}
    return (
        runs.group_by(["variant", "l"])
        .agg(
            [
                pl.col("cost").mean().alias("mean_cost"),
                pl.col("opcount").mean().alias("mean_opcount"),
                pl.col("clusters").mean().alias("mean_clusters"),
                pl.col("mean_cluster_size").mean().alias("mean_cluster_size"),
                pl.len().alias("runs"),
            ]
        )
        .with_columns(
            [
                pl.lit(seed_base).alias("seed_base"),
                pl.col("variant").replace_strict(rank).alias("variant_rank"),
            ]
        )
        .sort(["l", "variant_rank"], descending=[True, False])
        .drop("variant_rank")
    )


def bench_tables(
    n: int,
    l_values: Sequence[float],
    runs: int,
    seed: int = 0,
    workers: int = 1,
) -> BenchReport:
    """
    Average cost, opcount and cluster statistics of every DP over seeded runs.

    Run r of every l uses seed + r, so the l values see the same point sets.

    Args:
        n: points per graph
        l_values: distance thresholds to tabulate
        runs: runs per threshold
        seed: seed of run 0
        workers: processes to spread runs over

    Returns:
        BenchReport
    """
    if runs < 1 or not l_values:
        raise InputValidationError("Need at least one run and one l value")
    jobs = [(n, l, seed + r) for l in l_values for r in range(runs)]
    logger.info(f"Running {len(jobs)} benchmark solves on {workers} workers")

    start_time = time.time()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(bench_run, *zip(*jobs)))
    else:
        batches = [bench_run(*job) for job in jobs]
    logger.info(f"Benchmark solves finished in {time.time() - start_time:.2f} seconds")

    raw = pl.DataFrame([row for batch in batches for row in batch])
    return BenchReport(summary=summarize_runs(raw, seed), runs=raw, seed_base=seed)


def scaling_run(
    n_reads: int, params: AlignParams, coverage: float = 15.0, seed: int = 0
) -> dict[str, float]:
    """
    Simulate reads so each overlaps about ``coverage`` others, then solve with
    the adaptive order.
    """
    # a read overlaps those starting within one mean length on either side
    genome_length = 2.0 * params.mu * n_reads / coverage
    sim = simulate_reads(genome_length, [], n_reads, params, seed=seed)

    start_time = time.time()
    graph = build_alignment_graph(sim.reads, params)
    built = time.time()
    result = adaptive_cluster_edit(graph)
    solved = time.time()

    stats = {
        "n": float(n_reads),
        "pairs": float(graph.pair_count),
        "clusters": float(len(result.clustering)),
        "opcount": float(result.opcount),
        "peak_storage": float(result.peak_storage),
        "build_seconds": built - start_time,
        "solve_seconds": solved - built,
    }
    logger.info(f"Scaling run: {stats}")
    return stats
