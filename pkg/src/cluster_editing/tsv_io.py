"""
Tab-separated files exchanged between pipeline steps.

Every table has a fixed schema. Headers are optional on input: a first line
whose first field parses as a number is treated as data.
"""

import logging
from collections.abc import Sequence
from pathlib import Path

import numpy as np
import polars as pl

from cluster_editing.config import DEFAULT_W_MAX, InputValidationError
from cluster_editing.exact_dp import Clustering
from cluster_editing.graph import Read, WeightedGraph
from cluster_editing.oracles import CliqueSet
from cluster_editing.predictions import (
    Prediction,
    VariantKind,
    frame_to_predictions,
    predictions_to_frame,
)
from cluster_editing.simulate import SimEvent

logger = logging.getLogger(__name__)

SCHEMAS: dict[str, dict[str, pl.DataType]] = {
    "reads": {"id": pl.Int64(), "left": pl.Float64(), "length": pl.Float64()},
    "graph": {"idA": pl.Int64(), "idB": pl.Int64(), "weight": pl.Float64()},
    "clusters": {"cluster_id": pl.Int64(), "members": pl.String()},
    "order": {"vertex": pl.Int64()},
    "cliques": {"clique_id": pl.Int64(), "members": pl.String()},
    "events": {"position": pl.Float64(), "kind": pl.String(), "length": pl.Float64()},
    "pvalues": {"p_value": pl.Float64()},
    "predictions": {
        "start": pl.Float64(),
        "end": pl.Float64(),
        "kind": pl.String(),
        "deviation": pl.Float64(),
        "support": pl.Int64(),
        "p_value": pl.Float64(),
        "p_value_source": pl.String(),
    },
}

# Plain one-value-per-line files carry no header
HEADERLESS = {"order", "pvalues"}


def _first_line(path: Path) -> str:
    with open(path, encoding="utf-8") as handle:
        return handle.readline().rstrip("\r\n")


def _looks_like_header(line: str) -> bool:
    first = line.split("\t")[0]
    try:
        float(first)
    except ValueError:
        return True
    return False


def read_table(path: str | Path, table: str) -> pl.DataFrame:
    """
    Read one of the known tables, with or without a header line.

    Args:
        path: TSV file
        table: key into SCHEMAS

    Returns:
        DataFrame with exactly the schema's columns, in schema order
    """
    path = Path(path)
    schema = SCHEMAS[table]
    if not path.is_file():
        raise InputValidationError(f"No such file: {path}")
    line = _first_line(path)
    if not line.strip():
        return pl.DataFrame(schema=schema)

    try:
        if _looks_like_header(line):
            header = line.split("\t")
            missing = [column for column in schema if column not in header]
            if missing:
                raise InputValidationError(f"{path} is missing columns {missing}")
            df = pl.read_csv(path, separator="\t", schema_overrides=schema).select(
                list(schema)
            )
        else:
            df = pl.read_csv(path, separator="\t", has_header=False, schema=schema)
    except pl.exceptions.PolarsError as e:
        raise InputValidationError(f"Cannot parse {path} as {table}: {e}") from e

    logger.debug(f"Read {df.height} rows of {table} from {path}")
    return df


def write_table(df: pl.DataFrame, path: str | Path, table: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    df.select(list(SCHEMAS[table])).write_csv(
        path, separator="\t", include_header=table not in HEADERLESS
    )
    logger.info(f"Wrote {df.height} rows of {table} to {path}")


def read_reads(path: str | Path) -> list[Read]:
    df = read_table(path, "reads")
    return [Read(id=i, left=left, length=length) for i, left, length in df.iter_rows()]


def write_reads(reads: Sequence[Read], path: str | Path) -> None:
    df = pl.DataFrame(
        {
            "id": [r.id for r in reads],
            "left": [r.left for r in reads],
            "length": [r.length for r in reads],
        },
        schema=SCHEMAS["reads"],
    )
    write_table(df, path, "reads")


def _vertex_index(read_ids: Sequence[int], path: Path) -> dict[int, int]:
    vertex_of = {read_id: v for v, read_id in enumerate(read_ids)}
    if len(vertex_of) != len(read_ids):
        raise InputValidationError(f"Duplicate read ids while reading {path}")
    return vertex_of


def _join_ids(members: Sequence[int], read_ids: Sequence[int]) -> str:
    return ",".join(str(read_ids[v]) for v in members)


def _split_ids(
    field: str | None, vertex_of: dict[int, int], path: Path, row: int
) -> list[int]:
    if field is None or not field.strip():
        raise InputValidationError(f"{path} row {row} has no members")
    try:
        ids = [int(token) for token in field.split(",")]
    except ValueError as e:
        raise InputValidationError(f"{path} row {row} has a bad member list") from e
    unknown = [read_id for read_id in ids if read_id not in vertex_of]
    if unknown:
        raise InputValidationError(f"{path} row {row} names unknown reads {unknown[:5]}")
    return [vertex_of[read_id] for read_id in ids]


def write_graph(graph: WeightedGraph, read_ids: Sequence[int], path: str | Path) -> None:
    """Dump the stored pairs by read id, lower vertex first; absent pairs weigh -inf."""
    pairs = list(graph.pairs())
    df = pl.DataFrame(
        {
            "idA": [read_ids[a] for a, _, _ in pairs],
            "idB": [read_ids[b] for _, b, _ in pairs],
            "weight": [w for _, _, w in pairs],
        },
        schema=SCHEMAS["graph"],
    )
    write_table(df, path, "graph")


def read_graph(
    path: str | Path, read_ids: Sequence[int], w_max: float = DEFAULT_W_MAX
) -> WeightedGraph:
    """Load a graph dump whose ids name the given reads, in vertex order."""
    path = Path(path)
    df = read_table(path, "graph")
    if df.null_count().sum_horizontal().item():
        raise InputValidationError(f"{path} has empty fields")
    vertex_of = _vertex_index(read_ids, path)
    unknown = (set(df["idA"].to_list()) | set(df["idB"].to_list())) - vertex_of.keys()
    if unknown:
        raise InputValidationError(
            f"Graph {path} names unknown reads {sorted(unknown)[:5]}"
        )
    return WeightedGraph.from_pairs(
        len(read_ids),
        ((vertex_of[a], vertex_of[b], w) for a, b, w in df.iter_rows()),
        w_max,
    )


def write_clustering(
    clustering: Clustering, read_ids: Sequence[int], path: str | Path
) -> None:
    """One row per cluster, numbered from 0: its read ids, comma separated."""
    canonical = clustering.canonical()
    df = pl.DataFrame(
        {
            "cluster_id": list(range(len(canonical))),
            "members": [_join_ids(cluster, read_ids) for cluster in canonical],
        },
        schema=SCHEMAS["clusters"],
    )
    write_table(df, path, "clusters")


def read_clustering(path: str | Path, read_ids: Sequence[int]) -> Clustering:
    path = Path(path)
    df = read_table(path, "clusters").sort("cluster_id")
    vertex_of = _vertex_index(read_ids, path)
    return Clustering.from_lists(
        _split_ids(members, vertex_of, path, row)
        for row, members in enumerate(df["members"].to_list())
    )


def write_order(order: Sequence[int], path: str | Path) -> None:
    df = pl.DataFrame({"vertex": list(order)}, schema=SCHEMAS["order"])
    write_table(df, path, "order")


def read_order(path: str | Path) -> list[int]:
    return read_table(path, "order")["vertex"].to_list()


def write_cliques(cliques: CliqueSet, read_ids: Sequence[int], path: str | Path) -> None:
    df = pl.DataFrame(
        {
            "clique_id": list(range(len(cliques))),
            "members": [_join_ids(clique, read_ids) for clique in cliques.cliques],
        },
        schema=SCHEMAS["cliques"],
    )
    write_table(df, path, "cliques")


def read_events(path: str | Path) -> list[SimEvent]:
    df = read_table(path, "events")
    try:
        return [
            SimEvent(position=position, kind=VariantKind(kind), length=length)
            for position, kind, length in df.iter_rows()
        ]
    except ValueError as e:
        raise InputValidationError(f"Bad event in {path}: {e}") from e


def write_events(events: Sequence[SimEvent], path: str | Path) -> None:
    df = pl.DataFrame(
        {
            "position": [e.position for e in events],
            "kind": [e.kind.value for e in events],
            "length": [e.length for e in events],
        },
        schema=SCHEMAS["events"],
    )
    write_table(df, path, "events")


def read_pvalues(path: str | Path) -> list[float]:
    values = read_table(path, "pvalues")["p_value"]
    if values.is_null().any():
        raise InputValidationError(f"{path} has empty p-value lines")
    array = values.to_numpy()
    if np.any((array < 0) | (array > 1)):
        raise InputValidationError(f"{path} has p-values outside [0, 1]")
    return values.to_list()


def read_predictions(path: str | Path) -> list[Prediction]:
    return frame_to_predictions(read_table(path, "predictions"))


def write_predictions(predictions: Sequence[Prediction], path: str | Path) -> None:
    write_table(predictions_to_frame(predictions), path, "predictions")
