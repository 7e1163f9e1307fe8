import argparse
import logging
import sys
from pathlib import Path

import polars as pl
from pydantic import ValidationError

from cluster_editing import tsv_io
from cluster_editing.benchmark import bench_tables, scaling_run
from cluster_editing.config import (
    AlignParams,
    InputValidationError,
    PipelineConfig,
    PValueMode,
    SignConvention,
)
from cluster_editing.graph import Graph, Read, build_alignment_graph
from cluster_editing.oracles import enumerate_maximal_cliques
from cluster_editing.ordering import lookahead_order
from cluster_editing.pipeline import (
    ALL_STEPS,
    ClusterAlgorithm,
    cluster_graph,
    run_pipeline,
)
from cluster_editing.predictions import (
    attach_pvalues,
    evaluate_predictions,
    remove_overlaps,
    select_significant,
    summarize_cluster,
)
from cluster_editing.simulate import SimEvent, random_events, simulate_reads

logger = logging.getLogger(__name__)


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper()),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
    )


def align_params(args: argparse.Namespace) -> AlignParams:
    return AlignParams(
        mu=args.mu,
        sigma=args.sigma,
        threshold=args.threshold,
        sign_convention=SignConvention(args.weight_sign),
        w_max=args.wmax,
    )


# Subcommand flag -> PipelineConfig field; unset flags keep the model defaults
CONFIG_FLAGS = {
    "fdr": "fdr_rate",
    "start": "start_vertex",
    "lookahead": "lookahead",
    "max_active": "max_active_cliques",
    "runs": "bench_runs",
    "workers": "bench_workers",
}


def pipeline_config(args: argparse.Namespace) -> PipelineConfig:
    fields: dict[str, object] = {
        field: getattr(args, flag)
        for flag, field in CONFIG_FLAGS.items()
        if getattr(args, flag, None) is not None
    }
    pvalues = getattr(args, "pvalues", PValueMode.PLACEHOLDER.value)
    if pvalues != PValueMode.PLACEHOLDER.value:
        fields["pvalue_mode"] = PValueMode.EXTERNAL
    return PipelineConfig.model_validate({"align": align_params(args), **fields})


def load_graph(args: argparse.Namespace, reads: list[Read]) -> Graph:
    params = align_params(args)
    if getattr(args, "graph", None):
        return tsv_io.read_graph(args.graph, [r.id for r in reads], params.w_max)
    return build_alignment_graph(reads, params)


def cmd_build_graph(args: argparse.Namespace) -> None:
    reads = tsv_io.read_reads(args.reads)
    graph = build_alignment_graph(reads, align_params(args))
    tsv_io.write_graph(graph, [r.id for r in reads], args.out)


def cmd_cluster(args: argparse.Namespace) -> None:
    reads = tsv_io.read_reads(args.reads)
    graph = load_graph(args, reads)
    order = tsv_io.read_order(args.order) if args.order else None
    algo = ClusterAlgorithm(args.algo)
    config = pipeline_config(args)
    result = cluster_graph(graph, algo, order=order, start=config.start_vertex)
    tsv_io.write_clustering(result.clustering, [r.id for r in reads], args.out)

    if args.report:
        pl.DataFrame(
            {
                "variant": [algo.value],
                "n": [graph.n],
                "cost": [result.cost],
                "opcount": [result.opcount],
            }
        ).write_csv(args.report, separator="\t")
    logger.info(
        f"{algo.value}: {len(result.clustering)} clusters, cost {result.cost}, "
        f"opcount {result.opcount}"
    )


def cmd_order(args: argparse.Namespace) -> None:
    reads = tsv_io.read_reads(args.reads)
    graph = load_graph(args, reads)
    config = pipeline_config(args)
    order = lookahead_order(graph, h=config.lookahead, start=config.start_vertex)
    tsv_io.write_order(order, args.out)


def cmd_cliques(args: argparse.Namespace) -> None:
    reads = tsv_io.read_reads(args.reads)
    graph = load_graph(args, reads)
    max_active = pipeline_config(args).max_active_cliques
    cliques = enumerate_maximal_cliques(reads, graph, max_active=max_active)
    tsv_io.write_cliques(cliques, [r.id for r in reads], args.out)


def cmd_bench(args: argparse.Namespace) -> None:
    if args.scaling_reads:
        stats = scaling_run(args.scaling_reads, align_params(args), seed=args.seed)
        print(pl.DataFrame([stats]))
        return
    config = pipeline_config(args)
    report = bench_tables(
        args.n,
        args.l,
        runs=config.bench_runs,
        seed=args.seed,
        workers=config.bench_workers,
    )
    report.save(args.out_dir)
    print(report.summary)


def load_events(args: argparse.Namespace) -> list[SimEvent]:
    if args.events:
        return tsv_io.read_events(args.events)
    return random_events(
        args.genome_length,
        args.random_events,
        (args.event_min, args.event_max),
        seed=args.seed,
    )


def cmd_simulate(args: argparse.Namespace) -> None:
    events = load_events(args)
    params = align_params(args)
    sim = simulate_reads(args.genome_length, events, args.n, params, args.seed)
    out_dir = Path(args.out_dir)
    tsv_io.write_reads(sim.reads, out_dir / "reads.tsv")
    tsv_io.write_events(events, out_dir / "events.tsv")


def cmd_predict(args: argparse.Namespace) -> None:
    config = pipeline_config(args)
    params = config.align
    reads = tsv_io.read_reads(args.reads)
    clustering = tsv_io.read_clustering(args.clusters, [r.id for r in reads])
    drafts = [summarize_cluster(c, reads, params) for c in clustering]
    if config.pvalue_mode == PValueMode.PLACEHOLDER:
        candidates = attach_pvalues(drafts, params)
    else:
        candidates = attach_pvalues(drafts, params, tsv_io.read_pvalues(args.pvalues))
    tsv_io.write_predictions(select_significant(candidates, config.fdr_rate), args.out)


def cmd_postprocess(args: argparse.Namespace) -> None:
    predictions = tsv_io.read_predictions(args.predictions)
    tsv_io.write_predictions(remove_overlaps(predictions), args.out)


def cmd_evaluate(args: argparse.Namespace) -> None:
    predictions = tsv_io.read_predictions(args.predictions)
    events = tsv_io.read_events(args.events)
    report = evaluate_predictions(predictions, [e.as_tuple() for e in events])
    report.write_csv(args.out, separator="\t")
    print(report)


def cmd_pipeline(args: argparse.Namespace) -> None:
    steps = ALL_STEPS if args.steps == "all" else args.steps.split(",")
    config = pipeline_config(args)
    external = config.pvalue_mode == PValueMode.EXTERNAL
    events = load_events(args)
    run_pipeline(
        args.run_dir,
        steps,
        config,
        genome_length=args.genome_length,
        events=events,
        n_reads=args.n,
        seed=args.seed,
        algo=ClusterAlgorithm(args.algo),
        pvalues_file=Path(args.pvalues) if external else None,
    )


def add_simulation_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--genome-length", type=float, default=100_000.0)
    parser.add_argument("--n", type=int, default=10_000, help="Number of reads")
    parser.add_argument("--events", help="Events TSV (position, kind, length)")
    parser.add_argument(
        "--random-events",
        type=int,
        default=20,
        help="Number of random events when no events file is given",
    )
    parser.add_argument("--event-min", type=float, default=50.0)
    parser.add_argument("--event-max", type=float, default=99.0)
    parser.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Cluster editing of 1D point graphs and read alignment graphs"
    )
    parser.add_argument("--threshold", type=float, default=0.4, help="Tail probability T")
    parser.add_argument("--mu", type=float, default=112.0, help="Mean insert size")
    parser.add_argument("--sigma", type=float, default=15.0, help="Insert size std dev")
    parser.add_argument(
        "--weight-sign",
        choices=[s.value for s in SignConvention],
        default=SignConvention.CORRECTED.value,
    )
    parser.add_argument("--wmax", type=float, default=1e15, help="Stand-in for +inf")
    parser.add_argument("--log-level", default="INFO")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-graph", help="Reads TSV -> graph dump")
    p.add_argument("--reads", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build_graph)

    p = sub.add_parser("cluster", help="Cluster reads")
    p.add_argument("--reads", required=True)
    p.add_argument("--graph", help="Graph dump; rebuilt from reads when omitted")
    p.add_argument(
        "--algo", choices=[a.value for a in ClusterAlgorithm], default="adaptive"
    )
    p.add_argument("--order", help="Vertex order file for exact/h1/h2")
    p.add_argument("--start", type=int)
    p.add_argument("--out", required=True)
    p.add_argument("--report", help="Write variant, n, cost and opcount here")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("order", help="Greedy vertex order")
    p.add_argument("--reads", required=True)
    p.add_argument("--graph")
    p.add_argument("--lookahead", type=int, help="Look-ahead depth h (default: 1)")
    p.add_argument("--start", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("cliques", help="Maximal clique enumeration")
    p.add_argument("--reads", required=True)
    p.add_argument("--graph")
    p.add_argument("--max-active", type=int, help="Active clique cap (default: 10000)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_cliques)

    p = sub.add_parser("bench", help="Benchmark tables on random point graphs")
    p.add_argument("--n", type=int, default=10_000)
    p.add_argument("--l", type=float, nargs="+", default=[0.1, 0.01, 0.001])
    p.add_argument("--runs", type=int, help="Runs per l (default: 100)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, help="Worker processes (default: 1)")
    p.add_argument("--out-dir", default="bench")
    p.add_argument("--scaling-reads", type=int, help="Run the read scaling test instead")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("simulate", help="Simulate reads over planted variants")
    add_simulation_arguments(p)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("predict", help="Clusters -> BH-filtered predictions")
    p.add_argument("--reads", required=True)
    p.add_argument("--clusters", required=True)
    p.add_argument("--fdr", type=float, help="FDR rate (default: 0.1)")
    p.add_argument("--pvalues", default="placeholder", help="File or 'placeholder'")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("postprocess-overlaps", help="Remove overlapping predictions")
    p.add_argument("--predictions", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_postprocess)

    p = sub.add_parser("evaluate", help="Precision and recall against events")
    p.add_argument("--predictions", required=True)
    p.add_argument("--events", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("pipeline", help="Run the end-to-end pipeline")
    p.add_argument("--run-dir", default="run")
    p.add_argument(
        "--steps",
        default="all",
        help=f"Comma-separated list of steps to run: {','.join(ALL_STEPS)}",
    )
    add_simulation_arguments(p)
    p.add_argument(
        "--algo", choices=[a.value for a in ClusterAlgorithm], default="adaptive"
    )
    p.add_argument("--start", type=int)
    p.add_argument("--fdr", type=float, help="FDR rate (default: 0.1)")
    p.add_argument("--pvalues", default="placeholder", help="File or 'placeholder'")
    p.set_defaults(func=cmd_pipeline)

    return parser


def main(argv: list[str] | None = None) -> int:
    """Main entry point for the script."""
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        args.func(args)
    except (InputValidationError, ValidationError) as e:
        logger.error(f"Invalid input: {e}")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
