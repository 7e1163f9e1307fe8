"""
Extended-real edge weights.

Weights are plain floats. -inf is stored exactly for non-overlapping pairs and
+inf is never stored: every positive weight saturates at ``w_max``. IEEE
arithmetic already gives ``-inf + x == -inf`` for finite x, and since +inf is
never a weight, DP sums cannot produce ``inf - inf``.
"""

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import special

from cluster_editing.config import (
    DEFAULT_W_MAX,
    AlignParams,
    InputValidationError,
    SignConvention,
)

NEG_INF = -math.inf
SQRT2 = math.sqrt(2.0)


def positive_part(w: float) -> float:
    """w+ = max(w, 0), the cost of cutting an edge."""
    return w if w > 0 else 0.0


def negative_part(w: float, w_max: float = DEFAULT_W_MAX) -> float:
    """w- = max(-w, 0), saturated at w_max so a -inf pair costs w_max."""
    if w >= 0:
        return 0.0
    return min(-w, w_max)


def positive_parts(w: NDArray[np.float64]) -> NDArray[np.float64]:
    return np.maximum(w, 0.0)


def negative_parts(
    w: NDArray[np.float64], w_max: float = DEFAULT_W_MAX
) -> NDArray[np.float64]:
    return np.minimum(np.maximum(-w, 0.0), w_max)


def std_normal_sf(x: float) -> float:
    """P(X >= x) for X ~ N(0, 1)."""
    return float(special.ndtr(-x))


def log_std_normal_sf(x: float | NDArray[np.float64]) -> NDArray[np.float64]:
    """ln P(X >= x), accurate far into the upper tail."""
    return np.asarray(special.log_ndtr(-np.asarray(x, dtype=np.float64)))


def span_overlap(
    left_a: ArrayLike, length_a: ArrayLike, left_b: ArrayLike, length_b: ArrayLike
) -> NDArray[np.float64]:
    """Length of [left, left + length) intersections; 0 when disjoint or touching."""
    la = np.asarray(left_a, dtype=np.float64)
    lb = np.asarray(left_b, dtype=np.float64)
    ra = la + np.asarray(length_a, dtype=np.float64)
    rb = lb + np.asarray(length_b, dtype=np.float64)
    return np.maximum(np.minimum(ra, rb) - np.maximum(la, lb), 0.0)


def weight_terms(
    delta: ArrayLike,
    mean_size: ArrayLike,
    overlap: ArrayLike,
    params: AlignParams,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """
    Size and overlap terms of the alignment weight, before the min and the cap.

    Under the corrected convention each term is ln(tail probability) - ln(T);
    the published convention negates both.

    Args:
        delta: |I(a) - I(b)|, difference of the insert sizes
        mean_size: (I(a) + I(b)) / 2
        overlap: length of the span intersection
        params: insert-size model

    Returns:
        (w_size, w_overlap)
    """
    if params.sigma <= 0:
        raise InputValidationError(f"sigma must be positive, got {params.sigma}")

    delta = np.asarray(delta, dtype=np.float64)
    u = np.asarray(mean_size, dtype=np.float64) - np.asarray(
        overlap, dtype=np.float64
    )

    # P(|X| >= z) = 2 P(X >= z)
    size_z = delta / (SQRT2 * params.sigma)
    log_p_size = np.minimum(math.log(2.0) + log_std_normal_sf(size_z), 0.0)
    overlap_z = SQRT2 * (u - params.mu) / params.sigma
    log_p_overlap = log_std_normal_sf(overlap_z)

    # Underflowed tails saturate before the sign is applied
    log_p_size = np.maximum(log_p_size, -params.w_max)
    log_p_overlap = np.maximum(log_p_overlap, -params.w_max)

    log_t = math.log(params.threshold)
    if params.sign_convention == SignConvention.CORRECTED:
        return log_p_size - log_t, log_p_overlap - log_t
    return log_t - log_p_size, log_t - log_p_overlap


def pair_weights(
    left_a: ArrayLike,
    length_a: ArrayLike,
    left_b: ArrayLike,
    length_b: ArrayLike,
    params: AlignParams,
) -> NDArray[np.float64]:
    """
    Vectorised alignment weight of read pairs.

    The weight is min(w_size, w_overlap), capped at w_max. Pairs that do not
    overlap get -inf.

    Args:
        left_a, length_a: left endpoints and insert sizes of the first reads
        left_b, length_b: left endpoints and insert sizes of the second reads
        params: insert-size model

    Returns:
        Array of extended-real weights
    """
    size_a = np.asarray(length_a, dtype=np.float64)
    size_b = np.asarray(length_b, dtype=np.float64)
    overlap = span_overlap(left_a, size_a, left_b, size_b)
    w_size, w_overlap = weight_terms(
        np.abs(size_a - size_b), (size_a + size_b) / 2.0, overlap, params
    )
    weight = np.minimum(np.minimum(w_size, w_overlap), params.w_max)
    return np.where(overlap > 0, weight, NEG_INF)


def f_l_weights(
    distance: ArrayLike, l: float, w_max: float = DEFAULT_W_MAX
) -> NDArray[np.float64]:
    """(l^2 - a^2) / (l a), with f(0) = +inf replaced by w_max."""
    a = np.asarray(distance, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        w = (l * l - a * a) / (l * a)
    w = np.where(a > 0, w, w_max)
    return np.minimum(w, w_max)


def f_l_weight(distance: float, l: float, w_max: float = DEFAULT_W_MAX) -> float:
    return float(f_l_weights(distance, l, w_max))


def unit_weights(distance: ArrayLike, l: float) -> NDArray[np.float64]:
    """Unweighted point graph: 1 within distance l, -1 beyond."""
    a = np.asarray(distance, dtype=np.float64)
    return np.where(a <= l, 1.0, -1.0)


def unit_point_weight(distance: float, l: float) -> float:
    return float(unit_weights(distance, l))
