"""
Truncated zero-sums over critical-line zeros and hypothetical off-line zeros.

Differences t - gamma are always formed in offset space; sums t + gamma have
like signs and are formed from absolute heights.
"""

import logging
from decimal import Decimal
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from .bounds import main_lower_bound, n_lower, n_upper
from .errors import DomainError
from .models import (
    TAIL_ACCEPT_REL_ERROR,
    TAIL_REL_TOL,
    BoundParams,
    EpsilonVariant,
    EvalPoint,
    HypotheticalZero,
    ZeroTable,
)
from .utils import base_shift, offset_differences, quad_or_raise
from .zerodata import table_window

logger = logging.getLogger(__name__)


def _lorentz(numerator, difference) -> np.ndarray:
    """numerator / (numerator^2 + difference^2), 0 wherever the numerator is 0."""
    numerator, difference = np.broadcast_arrays(
        np.asarray(numerator, dtype=np.float64), np.asarray(difference, dtype=np.float64)
    )
    denominator = numerator * numerator + difference * difference
    return np.divide(
        numerator, denominator, out=np.zeros(numerator.shape), where=numerator != 0
    )


def _table_differences(
    table: ZeroTable, t_base: Decimal, t_offset, k_range: Optional[range]
) -> Tuple[np.ndarray, np.ndarray]:
    """(t - gamma, t + gamma) for every zero of the window."""
    offsets = table.offsets[table_window(table, k_range)]
    minus = offset_differences(t_base, t_offset, table.base_height, offsets)
    plus = float(Decimal(t_base) + table.base_height) + t_offset + offsets
    return minus, plus


# ==================== Critical-line zeros ====================


def re_sum_critical(
    point: EvalPoint, table: ZeroTable, k_range: Optional[range] = None
) -> float:
    """
    Re sum 1/(s - rho) over the zeros 1/2 + i*gamma_k, k in k_range, paired
    with their conjugates.

    Args:
        point: Evaluation point sigma + i*(t_base + t_offset)
        table: Zero table holding the ordinates
        k_range: 1-based zero indices; None sums the whole table

    Returns:
        sum of (sigma - 1/2)/((sigma - 1/2)^2 + (t -/+ gamma_k)^2)
    """
    d = point.sigma - 0.5
    if d == 0:
        return 0.0
    minus, plus = _table_differences(table, point.t_base, point.t_offset, k_range)
    return float(np.sum(_lorentz(d, minus)) + np.sum(_lorentz(d, plus)))


def s1_s2(
    point: EvalPoint, table: ZeroTable, k_range: Optional[range] = None
) -> Tuple[float, float]:
    """The (t - gamma) and (t + gamma) halves of (sigma - 1/2) * re_sum_critical."""
    d = point.sigma - 0.5
    d2 = d * d
    minus, plus = _table_differences(table, point.t_base, point.t_offset, k_range)
    s1 = float(np.sum(d2 / (d2 + minus * minus))) if d2 else 0.0
    s2 = float(np.sum(d2 / (d2 + plus * plus))) if d2 else 0.0
    return s1, s2


def re_sum_critical_grid(
    sigmas: np.ndarray,
    t_offsets: np.ndarray,
    table: ZeroTable,
    k_range: Optional[range] = None,
    t_base: Decimal = Decimal(0),
) -> np.ndarray:
    """re_sum_critical on a lattice; rows follow t_offsets, columns sigmas."""
    d = np.asarray(sigmas, dtype=np.float64)[np.newaxis, :] - 0.5
    rows = np.asarray(t_offsets, dtype=np.float64)
    total = np.zeros((len(rows), d.shape[1]))
    shift = base_shift(t_base, table.base_height)
    absolute = float(Decimal(t_base) + table.base_height)
    for offset in table.offsets[table_window(table, k_range)]:
        minus = ((rows - offset) + shift)[:, np.newaxis]
        plus = (absolute + rows + offset)[:, np.newaxis]
        total += _lorentz(d, minus) + _lorentz(d, plus)
    return total


def lorentz_sums(
    t_offset: float,
    table: ZeroTable,
    a: float,
    b: float,
    k_range: Optional[range] = None,
    t_base: Decimal = Decimal(0),
) -> Tuple[float, float]:
    """sum 1/(a^2 + b^2 (t - gamma)^2) and sum 1/(a^2 + b^2 (t + gamma)^2)."""
    minus, plus = _table_differences(table, t_base, t_offset, k_range)
    a2, b2 = a * a, b * b
    return (
        float(np.sum(1.0 / (a2 + b2 * minus * minus))),
        float(np.sum(1.0 / (a2 + b2 * plus * plus))),
    )


# ==================== Tails ====================


def kernel_tail(width: float, t: float, T_cut: float) -> Tuple[float, float]:
    """
    Upper bounds for the sums over gamma > T_cut of width/(width^2 + (t -/+ gamma)^2).

    Partial summation against the zero count N(u) with N(T_cut) >= n_lower and
    N(u) <= n_upper gives, for a kernel f decreasing beyond T_cut,

        tail <= int_{T_cut}^inf (n_upper(u) - max(n_lower(T_cut), 0)) (-f'(u)) du
    """
    width = abs(width)
    if width == 0:
        return 0.0, 0.0
    if T_cut <= abs(t) + 1:
        raise DomainError(f"T_cut must exceed |t| + 1 = {abs(t) + 1}, got {T_cut}")

    floor_count = max(n_lower(T_cut), 0.0)
    w2 = width * width

    def integrate(center_sign: float) -> float:
        # x = u -/+ t >= T_cut -/+ t > 0, where the kernel is decreasing
        start = T_cut - center_sign * t

        def integrand(x):
            u = x + center_sign * t
            return (n_upper(u) - floor_count) * 2.0 * width * x / (w2 + x * x) ** 2

        value, abs_error, _ = quad_or_raise(
            integrand, start, np.inf, TAIL_REL_TOL, accept_rel_error=TAIL_ACCEPT_REL_ERROR
        )
        return value + abs_error

    return integrate(1.0), integrate(-1.0)


def truncation_tail_estimate(point: EvalPoint, T_cut: float) -> float:
    """
    Upper bound on the part of re_sum_critical contributed by zeros above T_cut
    (both the t - gamma and t + gamma kernels).
    """
    t = point.t
    if T_cut <= t + 1:
        raise DomainError(f"T_cut must exceed t + 1 = {t + 1}, got {T_cut}")
    minus, plus = kernel_tail(point.sigma - 0.5, t, T_cut)
    return minus + plus


def lorentz_tails(t: float, a: float, b: float, T_cut: float) -> Tuple[float, float]:
    """Tails of lorentz_sums above T_cut: 1/(a^2 + b^2 x^2) = (1/(a b)) w/(w^2 + x^2), w = a/b."""
    minus, plus = kernel_tail(a / b, t, T_cut)
    return minus / (a * b), plus / (a * b)


# ==================== Hypothetical zeros ====================


def _hypo_differences(zero: HypotheticalZero, t_base: Decimal, t_offset):
    minus = (t_offset - zero.gamma) + base_shift(t_base, zero.base)
    plus = float(Decimal(t_base) + zero.base) + t_offset + zero.gamma
    return minus, plus


def hypo_contribution(point: EvalPoint, zeros: Iterable[HypotheticalZero]) -> float:
    """
    The four-term block per hypothetical zero: rho, its conjugate and the two
    reflections 1 - rho, 1 - conj(rho).
    """
    return float(
        hypo_contribution_grid([point.sigma], [point.t_offset], zeros, point.t_base)[0, 0]
    )


def hypo_dominant_contribution(point: EvalPoint, zeros: Iterable[HypotheticalZero]) -> float:
    """sum (sigma - beta)/((sigma - beta)^2 + (t - gamma)^2), one term per zero."""
    return float(
        hypo_contribution_grid(
            [point.sigma], [point.t_offset], zeros, point.t_base, full_block=False
        )[0, 0]
    )


def hypo_contribution_grid(
    sigmas: Sequence[float],
    t_offsets: Sequence[float],
    zeros: Iterable[HypotheticalZero],
    t_base: Decimal = Decimal(0),
    full_block: bool = True,
) -> np.ndarray:
    """Hypothetical-zero contributions on a lattice; rows follow t_offsets."""
    sigma = np.asarray(sigmas, dtype=np.float64)[np.newaxis, :]
    rows = np.asarray(t_offsets, dtype=np.float64)
    total = np.zeros((len(rows), sigma.shape[1]))
    for zero in zeros:
        minus, plus = _hypo_differences(zero, t_base, rows)
        minus = minus[:, np.newaxis]
        total += _lorentz(sigma - zero.beta, minus)
        if full_block:
            plus = plus[:, np.newaxis]
            reflected = sigma - (1.0 - zero.beta)
            total += _lorentz(sigma - zero.beta, plus)
            total += _lorentz(reflected, minus) + _lorentz(reflected, plus)
    return total


# ==================== Desk check of the main lower bound ====================


def theorem_desk_check(
    point: EvalPoint,
    table: ZeroTable,
    params: BoundParams,
    variant: EpsilonVariant = EpsilonVariant.LEMMA_CONSISTENT,
    k_range: Optional[range] = None,
) -> Tuple[float, float, float]:
    """
    (truncated sum, main lower bound, tail allowance above the table).

    Missing zeros only add positive terms for sigma > 1/2, so the lower bound
    is consistent with the data when sum + tail >= bound.
    """
    total = re_sum_critical(point, table, k_range)
    bound = main_lower_bound(point.sigma, point.t, params, variant)
    tail = truncation_tail_estimate(point, table.max_height)
    logger.debug(
        "Desk check at (%s, %s): sum %.6g, bound %.6g, tail %.3g",
        point.sigma,
        point.t,
        total,
        bound,
        tail,
    )
    return total, bound, tail
