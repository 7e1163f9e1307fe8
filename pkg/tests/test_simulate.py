import math

import numpy as np
import pytest

from cluster_editing.config import AlignParams, InputValidationError
from cluster_editing.predictions import VariantKind
from cluster_editing.simulate import SimEvent, check_events, random_events, simulate_reads


def test_no_reads():
    result = simulate_reads(1000.0, [], 0, AlignParams())
    assert result.reads == []
    assert result.spanned.size == 0


def test_reads_are_sorted_and_numbered():
    result = simulate_reads(5000.0, [], 500, AlignParams(), seed=3)
    lefts = [r.left for r in result.reads]
    assert lefts == sorted(lefts)
    assert [r.id for r in result.reads] == list(range(500))
    assert all(0 <= left < 5000.0 for left in lefts)
    assert all(r.length > 0 for r in result.reads)


def test_simulation_is_seeded():
    first = simulate_reads(5000.0, [], 100, AlignParams(), seed=5)
    again = simulate_reads(5000.0, [], 100, AlignParams(), seed=5)
    other = simulate_reads(5000.0, [], 100, AlignParams(), seed=6)
    assert first.reads == again.reads
    assert first.reads != other.reads


def test_mean_length_without_events():
    params = AlignParams()
    n = 20_000
    result = simulate_reads(1e6, [], n, params, seed=0)
    mean = float(np.mean([r.length for r in result.reads]))
    assert abs(mean - params.mu) <= 4 * params.sigma / math.sqrt(n)
    assert (result.spanned == -1).all()


def test_deletion_stretches_spanning_reads():
    params = AlignParams()
    event = SimEvent(position=500.0, kind=VariantKind.DELETION, length=100.0)
    result = simulate_reads(1000.0, [event], 5000, params, seed=1)

    spanning = [r for r, s in zip(result.reads, result.spanned) if s == 0]
    assert spanning
    for read in spanning:
        assert read.left <= 500.0 < read.left + read.length - 100.0
    lengths = np.array([r.length for r in spanning])
    # longer fragments are more likely to reach the deletion point
    size_biased_mean = params.mu + params.sigma**2 / params.mu
    bound = 4 * params.sigma / math.sqrt(len(spanning))
    assert abs(lengths.mean() - (size_biased_mean + 100.0)) <= bound


def test_deletion_shift_is_exact_per_read():
    params = AlignParams(sigma=1e-9)
    event = SimEvent(position=500.0, kind=VariantKind.DELETION, length=100.0)
    result = simulate_reads(1000.0, [event], 2000, params, seed=2)
    for read, spanned in zip(result.reads, result.spanned):
        expected = params.mu + 100.0 if spanned == 0 else params.mu
        assert read.length == pytest.approx(expected, abs=1e-6)
        if spanned == 0:
            assert read.left <= 500.0 < read.left + params.mu + 1e-6


def test_insertion_shrinks_spanning_reads():
    params = AlignParams(sigma=1e-9)
    event = SimEvent(position=500.0, kind=VariantKind.INSERTION, length=40.0)
    result = simulate_reads(1000.0, [event], 2000, params, seed=4)
    spanning = [r for r, s in zip(result.reads, result.spanned) if s == 0]
    assert spanning
    for read in spanning:
        assert read.length == pytest.approx(params.mu - 40.0, abs=1e-6)
        assert read.left <= 500.0 < read.left + read.length


def test_events_must_fit_and_be_disjoint():
    params = AlignParams()
    outside = SimEvent(position=1500.0, kind=VariantKind.DELETION, length=10.0)
    with pytest.raises(InputValidationError):
        simulate_reads(1000.0, [outside], 10, params)

    first = SimEvent(position=100.0, kind=VariantKind.DELETION, length=50.0)
    second = SimEvent(position=120.0, kind=VariantKind.INSERTION, length=10.0)
    with pytest.raises(InputValidationError):
        check_events([first, second], 1000.0)

    with pytest.raises(InputValidationError):
        SimEvent(position=0.0, kind=VariantKind.DELETION, length=0.0)
    with pytest.raises(InputValidationError):
        simulate_reads(0.0, [], 10, params)


def test_event_spans():
    deletion = SimEvent(position=10.0, kind=VariantKind.DELETION, length=25.0)
    insertion = SimEvent(position=10.0, kind=VariantKind.INSERTION, length=25.0)
    assert deletion.span == (10.0, 35.0)
    assert insertion.span == (10.0, 11.0)
    assert deletion.as_tuple() == (10.0, VariantKind.DELETION, 25.0)


def test_random_events_are_disjoint_and_in_range():
    events = random_events(100_000.0, 40, (50, 99), seed=9)
    assert len(events) == 40
    check_events(events, 100_000.0)
    assert all(50 <= e.length <= 99 for e in events)
    assert {e.kind for e in events} == {VariantKind.DELETION, VariantKind.INSERTION}


def test_random_events_need_room():
    with pytest.raises(InputValidationError):
        random_events(1000.0, 20, (50, 99))
