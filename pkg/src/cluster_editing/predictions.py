"""
Turning clusters of reads into insertion/deletion predictions.

Each cluster is summarised into a draft (span, kind, length deviation, support),
given a p-value, filtered with Benjamini-Hochberg separately per kind and
finally thinned so that no two kept predictions overlap.
"""

import bisect
import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np
import polars as pl

from cluster_editing.config import (
    LENGTH_RANGES,
    AlignParams,
    InputValidationError,
    PValueMode,
)
from cluster_editing.graph import Read
from cluster_editing.weights import std_normal_sf

logger = logging.getLogger(__name__)


class VariantKind(str, Enum):
    INSERTION = "insertion"
    DELETION = "deletion"


@dataclass(frozen=True)
class PredictionDraft:
    start: float
    end: float
    kind: VariantKind
    deviation: float
    support: int


@dataclass(frozen=True)
class Prediction:
    """A called variant on [start, end) with its p-value and supporting reads."""

    start: float
    end: float
    kind: VariantKind
    p_value: float
    support: int
    deviation: float = 0.0
    p_value_source: PValueMode = PValueMode.EXTERNAL

    def __post_init__(self) -> None:
        if not self.end > self.start:
            raise InputValidationError(
                f"Prediction span [{self.start}, {self.end}) is empty"
            )
        if not 0.0 <= self.p_value <= 1.0:
            raise InputValidationError(f"p-value {self.p_value} outside [0, 1]")
        if self.support < 1:
            raise InputValidationError(f"Support must be at least 1, got {self.support}")

    def overlaps(self, other: "Prediction") -> bool:
        return self.start < other.end and other.start < self.end


def bh_select(
    pvalues: Sequence[float], rate: float, total: int | None = None
) -> list[int]:
    """
    Benjamini-Hochberg step-up selection.

    Finds the largest m such that the m-th smallest p-value is at most
    rate * m / total and selects the m smallest.

    Args:
        pvalues: one p-value per candidate
        rate: false discovery rate r in (0, 1]
        total: number of candidates c the threshold is scaled by, defaults to
            len(pvalues)

    Returns:
        Ascending original indices of the selected p-values
    """
    if not 0 < rate <= 1:
        raise InputValidationError(f"FDR rate must be in (0, 1], got {rate}")
    count = len(pvalues)
    total = count if total is None else total
    if total < count:
        raise InputValidationError(
            f"Candidate count {total} is smaller than the {count} p-values given"
        )
    if count == 0:
        return []

    values = np.asarray(pvalues, dtype=np.float64)
    ranking = np.argsort(values, kind="stable")
    thresholds = rate * np.arange(1, count + 1) / total
    passing = np.flatnonzero(values[ranking] <= thresholds)
    if not passing.size:
        return []
    m = int(passing[-1]) + 1
    return sorted(int(i) for i in ranking[:m])


def remove_overlaps(predictions: Iterable[Prediction]) -> list[Prediction]:
    """
    Keep predictions greedily by ascending p-value (ties by start) while they
    stay disjoint from everything kept so far.
    """
    starts: list[float] = []
    ends: list[float] = []
    kept: list[Prediction] = []
    for prediction in sorted(predictions, key=lambda p: (p.p_value, p.start, p.end)):
        # kept spans are disjoint, so only the neighbours by start can overlap
        slot = bisect.bisect_left(starts, prediction.start)
        if slot > 0 and ends[slot - 1] > prediction.start:
            continue
        if slot < len(starts) and starts[slot] < prediction.end:
            continue
        starts.insert(slot, prediction.start)
        ends.insert(slot, prediction.end)
        kept.append(prediction)

    return kept


def summarize_cluster(
    cluster: Sequence[int], reads: Sequence[Read], params: AlignParams
) -> PredictionDraft:
    """
    Draft prediction for one cluster of reads.

    Span is the intersection of the member spans, or [median left, median right)
    when they share no common position. Reads shorter than mu on average point at
    an insertion, longer ones at a deletion.

    Args:
        cluster: vertex indices into ``reads``
        reads: the reads the clustering was computed on
        params: insert-size model

    Returns:
        PredictionDraft without a p-value
    """
    if not cluster:
        raise InputValidationError("Cannot summarise an empty cluster")
    members = [reads[v] for v in cluster]
    lefts = np.array([r.left for r in members])
    lengths = np.array([r.length for r in members])
    rights = lefts + lengths

    start, end = float(lefts.max()), float(rights.min())
    if not start < end:
        start, end = float(np.median(lefts)), float(np.median(rights))

    mean_length = float(lengths.mean())
    kind = VariantKind.INSERTION if mean_length < params.mu else VariantKind.DELETION
    return PredictionDraft(
        start=start,
        end=end,
        kind=kind,
        deviation=abs(mean_length - params.mu),
        support=len(members),
    )


def placeholder_pvalue(draft: PredictionDraft, sigma: float) -> float:
    """Two-sided normal tail of the mean deviation, scaled by sigma / sqrt(support)."""
    z = draft.deviation / (sigma / math.sqrt(draft.support))
    return min(1.0, 2.0 * std_normal_sf(z))


def attach_pvalues(
    drafts: Sequence[PredictionDraft],
    params: AlignParams,
    pvalues: Sequence[float] | None = None,
) -> list[Prediction]:
    """
    Give every draft a p-value.

    With ``pvalues`` the values are taken as given (one per draft, same order);
    without, the placeholder z-test is used. Placeholder values are not a model
    of read evidence and are marked as such on each prediction.
    """
    if pvalues is None:
        values = [placeholder_pvalue(d, params.sigma) for d in drafts]
        source = PValueMode.PLACEHOLDER
    else:
        if len(pvalues) != len(drafts):
            raise InputValidationError(
                f"Got {len(pvalues)} p-values for {len(drafts)} clusters"
            )
        values = [float(p) for p in pvalues]
        source = PValueMode.EXTERNAL

    return [
        Prediction(
            start=d.start,
            end=d.end,
            kind=d.kind,
            p_value=p,
            support=d.support,
            deviation=d.deviation,
            p_value_source=source,
        )
        for d, p in zip(drafts, values)
    ]


def select_significant(
    predictions: Sequence[Prediction], rate: float
) -> list[Prediction]:
    """BH filtering done separately for insertions and deletions."""
    selected: list[Prediction] = []
    for kind in VariantKind:
        group = [p for p in predictions if p.kind == kind]
        chosen = bh_select([p.p_value for p in group], rate, len(group))
        selected.extend(group[i] for i in chosen)
        logger.info(f"BH kept {len(chosen)} of {len(group)} {kind.value} candidates")
    return selected


def predictions_to_frame(predictions: Sequence[Prediction]) -> pl.DataFrame:
    return pl.DataFrame(
        {
            "start": [p.start for p in predictions],
            "end": [p.end for p in predictions],
            "kind": [p.kind.value for p in predictions],
            "deviation": [p.deviation for p in predictions],
            "support": [p.support for p in predictions],
            "p_value": [p.p_value for p in predictions],
            "p_value_source": [p.p_value_source.value for p in predictions],
        },
        schema={
            "start": pl.Float64,
            "end": pl.Float64,
            "kind": pl.String,
            "deviation": pl.Float64,
            "support": pl.Int64,
            "p_value": pl.Float64,
            "p_value_source": pl.String,
        },
    )


def frame_to_predictions(df: pl.DataFrame) -> list[Prediction]:
    return [
        Prediction(
            start=row["start"],
            end=row["end"],
            kind=VariantKind(row["kind"]),
            p_value=row["p_value"],
            support=row["support"],
            deviation=row["deviation"],
            p_value_source=PValueMode(row["p_value_source"]),
        )
        for row in df.iter_rows(named=True)
    ]


def _event_span(position: float, kind: VariantKind, length: float) -> tuple[float, float]:
    if kind == VariantKind.DELETION:
        return position, position + length
    return position, position + 1.0


def _intersects_any(
    span: tuple[float, float], others: Sequence[tuple[float, float]]
) -> bool:
    return any(start < span[1] and span[0] < end for start, end in others)


def _range_label(value: float, ranges: Sequence[tuple[int, int]]) -> int | None:
    for index, (low, high) in enumerate(ranges):
        if low <= value < high + 1:
            return index
    return None


def evaluate_predictions(
    predictions: Sequence[Prediction],
    events: Iterable[tuple[float, VariantKind, float]],
    length_ranges: Sequence[tuple[int, int]] = LENGTH_RANGES,
) -> pl.DataFrame:
    """
    Precision and recall per variant kind and length range.

    A prediction matches an event of the same kind when their spans intersect;
    deletions span [pos, pos + length) and insertions [pos, pos + 1).
    Predictions are bucketed by their deviation, events by their true length.

    Args:
        predictions: final predictions
        events: (position, kind, length) of the true variants
        length_ranges: (low, high) buckets holding values low <= v < high + 1

    Returns:
        One row per (kind, range) with counts, precision and recall (null when
        the bucket is empty)
    """
    truth = [
        (kind, _event_span(position, kind, length), length)
        for position, kind, length in events
    ]

    rows = []
    for kind in VariantKind:
        kind_events = [(span, length) for k, span, length in truth if k == kind]
        kind_predictions = [p for p in predictions if p.kind == kind]
        prediction_spans = [(p.start, p.end) for p in kind_predictions]
        event_spans = [span for span, _ in kind_events]

        for index, (low, high) in enumerate(length_ranges):
            bucket_predictions = [
                p
                for p in kind_predictions
                if _range_label(p.deviation, length_ranges) == index
            ]
            bucket_events = [
                span
                for span, length in kind_events
                if _range_label(length, length_ranges) == index
            ]
            matched = sum(
                _intersects_any((p.start, p.end), event_spans)
                for p in bucket_predictions
            )
            found = sum(_intersects_any(span, prediction_spans) for span in bucket_events)
            rows.append(
                {
                    "kind": kind.value,
                    "range_low": low,
                    "range_high": high,
                    "predictions": len(bucket_predictions),
                    "matched": matched,
                    "precision": (
                        matched / len(bucket_predictions) if bucket_predictions else None
                    ),
                    "events": len(bucket_events),
                    "detected": found,
                    "recall": found / len(bucket_events) if bucket_events else None,
                }
            )

    return pl.DataFrame(
        rows,
        schema={
            "kind": pl.String,
            "range_low": pl.Int64,
            "range_high": pl.Int64,
            "predictions": pl.Int64,
            "matched": pl.Int64,
            "precision": pl.Float64,
            "events": pl.Int64,
            "detected": pl.Int64,
            "recall": pl.Float64,
        },
    )
