"""Synthetic paired-end reads over a genome carrying known insertions and deletions."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from cluster_editing.config import AlignParams, InputValidationError
from cluster_editing.graph import Read
from cluster_editing.predictions import VariantKind

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimEvent:
    position: float
    kind: VariantKind
    length: float

    def __post_init__(self) -> None:
        if not self.length > 0:
            raise InputValidationError(
                f"Event length must be positive, got {self.length}"
            )

    @property
    def span(self) -> tuple[float, float]:
        """Reference positions affected: the deleted stretch, or the insertion point."""
        if self.kind == VariantKind.DELETION:
            return self.position, self.position + self.length
        return self.position, self.position + 1.0

    def as_tuple(self) -> tuple[float, VariantKind, float]:
        return self.position, self.kind, self.length


@dataclass
class SimResult:
    reads: list[Read]
    # index into events of the variant each read spans, -1 for none
    spanned: NDArray[np.int64]


def check_events(events: Sequence[SimEvent], genome_length: float) -> None:
    for event in events:
        if not 0 <= event.position < genome_length:
            raise InputValidationError(
                f"Event at {event.position} lies outside [0, {genome_length})"
            )
    spans = sorted(event.span for event in events)
    for (_, previous_end), (start, _) in zip(spans, spans[1:]):
        if start < previous_end:
            raise InputValidationError(f"Events overlap at position {start}")


def simulate_reads(
    genome_length: float,
    events: Sequence[SimEvent],
    n: int,
    params: AlignParams,
    seed: int = 0,
) -> SimResult:
    """
    Sample n reads with uniform left endpoints and normal(mu, sigma) fragment sizes.

    A fragment [left, left + size) spans a deletion at p when left <= p < left +
    size; its apparent length grows by the deletion length. It spans an insertion
    when the insertion point falls inside the shortened alignment, which is
    size - length long. A read carries at most one event, the first it spans.

    Args:
        genome_length: reference length, left endpoints are drawn from [0, it)
        events: pairwise disjoint variants
        n: number of reads
        params: insert-size model
        seed: RNG seed

    Returns:
        SimResult with reads sorted by left endpoint and ids 0..n-1
    """
    if genome_length <= 0:
        raise InputValidationError(
            f"Genome length must be positive, got {genome_length}"
        )
    check_events(events, genome_length)
    rng = np.random.default_rng(seed)

    lefts = np.empty(0, dtype=np.float64)
    sizes = np.empty(0, dtype=np.float64)
    while lefts.size < n:
        missing = n - lefts.size
        batch_left = rng.uniform(0.0, genome_length, size=missing)
        batch_size = rng.normal(params.mu, params.sigma, size=missing)
        keep = batch_size > 0
        lefts = np.concatenate([lefts, batch_left[keep]])
        sizes = np.concatenate([sizes, batch_size[keep]])

    lengths = sizes.copy()
    spanned = np.full(n, -1, dtype=np.int64)
    for index, event in enumerate(events):
        if event.kind == VariantKind.DELETION:
            hit = (lefts <= event.position) & (event.position < lefts + sizes)
            shift = event.length
        else:
            hit = (lefts <= event.position) & (
                event.position < lefts + sizes - event.length
            )
            shift = -event.length
        hit &= spanned == -1
        lengths[hit] += shift
        spanned[hit] = index

    order = np.argsort(lefts, kind="stable")
    reads = [
        Read(id=i, left=float(lefts[k]), length=float(lengths[k]))
        for i, k in enumerate(order)
    ]
    spanned = spanned[order]
    logger.info(
        f"Simulated {n} reads over {genome_length:.0f} bp, "
        f"{int((spanned >= 0).sum())} spanning one of {len(events)} events"
    )
    return SimResult(reads=reads, spanned=spanned)


def random_events(
    genome_length: float,
    count: int,
    length_range: tuple[float, float],
    seed: int = 0,
    kinds: Sequence[VariantKind] = (VariantKind.DELETION, VariantKind.INSERTION),
) -> list[SimEvent]:
    """Evenly spaced events with random kind and length, jittered inside their slot."""
    rng = np.random.default_rng(seed)
    slot = genome_length / max(count, 1)
    low, high = length_range
    if count and high >= slot / 2:
        raise InputValidationError(
            f"{count} events of length up to {high} do not fit in {genome_length} bp"
        )
    events = []
    for i in range(count):
        length = float(rng.integers(int(low), int(high) + 1))
        offset = float(rng.uniform(0.0, slot / 2 - length))
        kind = kinds[int(rng.integers(len(kinds)))]
        position = i * slot + slot / 4 + offset
        events.append(SimEvent(position=position, kind=kind, length=length))
    return events
