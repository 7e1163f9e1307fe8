"""
Batch pipeline: simulate -> build graph -> cluster -> predict -> postprocess ->
evaluate -> validate. Every phase reads and writes TSV files in one run
directory, so phases can be rerun on their own.
"""

import logging
import time
from collections.abc import Sequence
from enum import Enum
from pathlib import Path

import polars as pl

from cluster_editing import tsv_io
from cluster_editing.config import (
    AlignParams,
    InputValidationError,
    PipelineConfig,
    PValueMode,
)
from cluster_editing.exact_dp import DPResult, clustering_cost, exact_dp_weighted
from cluster_editing.graph import Graph, build_alignment_graph
from cluster_editing.heuristics import HeuristicVariant, heuristic_dp
from cluster_editing.ordering import adaptive_cluster_edit
from cluster_editing.predictions import (
    attach_pvalues,
    evaluate_predictions,
    remove_overlaps,
    select_significant,
    summarize_cluster,
)
from cluster_editing.simulate import SimEvent, simulate_reads
from cluster_editing.validate_outputs import (
    CANDIDATES_FILE,
    CLUSTERS_FILE,
    FINAL_FILE,
    PREDICTIONS_FILE,
    READS_FILE,
    OutputValidator,
)

logger = logging.getLogger(__name__)

EVENTS_FILE = "events.tsv"
GRAPH_FILE = "graph.tsv"
CLUSTER_REPORT_FILE = "cluster_report.tsv"
EVALUATION_FILE = "evaluation.tsv"

ALL_STEPS = [
    "simulate",
    "build-graph",
    "cluster",
    "predict",
    "postprocess",
    "evaluate",
    "validate",
]


class ClusterAlgorithm(str, Enum):
    EXACT = "exact"
    H1 = "h1"
    H2 = "h2"
    ADAPTIVE = "adaptive"


def cluster_graph(
    graph: Graph,
    algo: ClusterAlgorithm,
    order: Sequence[int] | None = None,
    start: int = 0,
) -> DPResult:
    """
    Run one of the solvers and fill in the clustering cost.

    Args:
        graph: graph to cluster
        algo: solver to use
        order: vertex order for the DP solvers, identity when omitted
        start: first vertex of the adaptive order

    Returns:
        DPResult whose ``cost`` is set
    """
    if algo == ClusterAlgorithm.EXACT:
        return exact_dp_weighted(graph, order)
    if algo == ClusterAlgorithm.ADAPTIVE:
        result = adaptive_cluster_edit(graph, start=start)
    else:
        variant = (
            HeuristicVariant.FRONTIER_PLUS_ONE
            if algo == ClusterAlgorithm.H1
            else HeuristicVariant.FRONTIER_OR_POSITIVE_EDGE
        )
        result = heuristic_dp(graph, order, variant)
    result.cost = clustering_cost(graph, result.clustering)
    return result


def setup_run_dir(run_dir: str | Path) -> Path:
    path = Path(run_dir)
    path.mkdir(parents=True, exist_ok=True)
    logger.info(f"Using run directory: {path}")
    return path


def run_simulation(
    run_dir: Path,
    genome_length: float,
    events: Sequence[SimEvent],
    n: int,
    params: AlignParams,
    seed: int = 0,
) -> None:
    logger.info("=== Starting read simulation phase ===")
    start_time = time.time()
    sim = simulate_reads(genome_length, events, n, params, seed=seed)
    tsv_io.write_events(events, run_dir / EVENTS_FILE)
    tsv_io.write_reads(sim.reads, run_dir / READS_FILE)
    logger.info(f"Simulation completed in {time.time() - start_time:.2f} seconds")


def run_graph_build(run_dir: Path, params: AlignParams) -> None:
    logger.info("=== Starting graph construction phase ===")
    start_time = time.time()
    reads = tsv_io.read_reads(run_dir / READS_FILE)
    graph = build_alignment_graph(reads, params)
    tsv_io.write_graph(graph, [r.id for r in reads], run_dir / GRAPH_FILE)
    logger.info(
        f"Graph construction completed in {time.time() - start_time:.2f} seconds"
    )


def run_clustering(
    run_dir: Path,
    params: AlignParams,
    algo: ClusterAlgorithm = ClusterAlgorithm.ADAPTIVE,
    start: int = 0,
) -> DPResult:
    """
    Cluster the reads of a run, using graph.tsv when present.

    Args:
        run_dir: run directory
        params: insert-size model, used when the graph has to be rebuilt
        algo: solver
        start: first vertex for the adaptive solver

    Returns:
        DPResult of the solve
    """
    logger.info("=== Starting clustering phase ===")
    start_time = time.time()
    reads = tsv_io.read_reads(run_dir / READS_FILE)
    graph_path = run_dir / GRAPH_FILE
    if graph_path.exists():
        graph: Graph = tsv_io.read_graph(
            graph_path, [r.id for r in reads], params.w_max
        )
    else:
        logger.warning(f"{graph_path} not found, rebuilding the graph from reads")
        graph = build_alignment_graph(reads, params)

    result = cluster_graph(graph, algo, start=start)
    tsv_io.write_clustering(
        result.clustering, [r.id for r in reads], run_dir / CLUSTERS_FILE
    )
    pl.DataFrame(
        {
            "algo": [algo.value],
            "n": [graph.n],
            "clusters": [len(result.clustering)],
            "cost": [result.cost],
            "opcount": [result.opcount],
            "peak_storage": [result.peak_storage],
        }
    ).write_csv(run_dir / CLUSTER_REPORT_FILE, separator="\t")
    logger.info(f"Clustering completed in {time.time() - start_time:.2f} seconds")
    return result


def run_prediction(
    run_dir: Path, config: PipelineConfig, pvalues_file: Path | None = None
) -> None:
    logger.info("=== Starting prediction phase ===")
    start_time = time.time()
    reads = tsv_io.read_reads(run_dir / READS_FILE)
    clustering = tsv_io.read_clustering(run_dir / CLUSTERS_FILE, [r.id for r in reads])
    drafts = [summarize_cluster(c, reads, config.align) for c in clustering]

    if config.pvalue_mode == PValueMode.EXTERNAL:
        if pvalues_file is None:
            raise InputValidationError("External p-value mode needs a p-value file")
        external = tsv_io.read_pvalues(pvalues_file)
        candidates = attach_pvalues(drafts, config.align, external)
    else:
        candidates = attach_pvalues(drafts, config.align)

    selected = select_significant(candidates, config.fdr_rate)
    tsv_io.write_predictions(candidates, run_dir / CANDIDATES_FILE)
    tsv_io.write_predictions(selected, run_dir / PREDICTIONS_FILE)
    logger.info(f"Prediction completed in {time.time() - start_time:.2f} seconds")


def run_postprocess(run_dir: Path) -> None:
    logger.info("=== Starting overlap removal phase ===")
    start_time = time.time()
    predictions = tsv_io.read_predictions(run_dir / PREDICTIONS_FILE)
    kept = remove_overlaps(predictions)
    logger.info(f"Kept {len(kept)} of {len(predictions)} predictions")
    tsv_io.write_predictions(kept, run_dir / FINAL_FILE)
    logger.info(f"Overlap removal completed in {time.time() - start_time:.2f} seconds")


def run_evaluation(run_dir: Path) -> pl.DataFrame:
    logger.info("=== Starting evaluation phase ===")
    start_time = time.time()
    events = tsv_io.read_events(run_dir / EVENTS_FILE)
    predictions = tsv_io.read_predictions(run_dir / FINAL_FILE)
    report = evaluate_predictions(predictions, [e.as_tuple() for e in events])
    report.write_csv(run_dir / EVALUATION_FILE, separator="\t")
    logger.info(f"Evaluation completed in {time.time() - start_time:.2f} seconds")
    return report


def run_validation(run_dir: Path) -> None:
    logger.info("=== Starting output validation phase ===")
    start_time = time.time()
    validator = OutputValidator(run_dir)
    validator.validate_all()
    validator.print_summary()
    validator.save_results()
    logger.info(f"Output validation completed in {time.time() - start_time:.2f} seconds")

    if not validator.all_valid:
        logger.warning("Validation FAILED - see validation_results.json for details")
        raise ValueError("Validation FAILED")

    logger.info("Validation PASSED")


def run_pipeline(
    run_dir: str | Path,
    steps: Sequence[str],
    config: PipelineConfig,
    genome_length: float = 100_000.0,
    events: Sequence[SimEvent] = (),
    n_reads: int = 10_000,
    seed: int = 0,
    algo: ClusterAlgorithm = ClusterAlgorithm.ADAPTIVE,
    pvalues_file: Path | None = None,
) -> None:
    """
    Run the complete pipeline or selected steps.

    Args:
        run_dir: directory for every intermediate file
        steps: subset of ALL_STEPS, run in pipeline order
        config: pipeline settings
        genome_length: simulated reference length
        events: variants planted by the simulation step
        n_reads: reads to simulate
        seed: simulation seed
        algo: clustering solver
        pvalues_file: p-values for external mode, one per cluster
    """
    unknown = set(steps) - set(ALL_STEPS)
    if unknown:
        raise InputValidationError(f"Unknown pipeline steps: {sorted(unknown)}")
    logger.info(f"Starting cluster editing pipeline with steps: {list(steps)}")
    path = setup_run_dir(run_dir)

    if "simulate" in steps:
        run_simulation(path, genome_length, events, n_reads, config.align, seed)
    if "build-graph" in steps:
        run_graph_build(path, config.align)
    if "cluster" in steps:
        run_clustering(path, config.align, algo, config.start_vertex)
    if "predict" in steps:
        run_prediction(path, config, pvalues_file)
    if "postprocess" in steps:
        run_postprocess(path)
    if "evaluate" in steps:
        run_evaluation(path)
    if "validate" in steps:
        run_validation(path)

    logger.info("Pipeline completed successfully!")
