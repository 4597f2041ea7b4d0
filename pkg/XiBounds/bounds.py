"""
Explicit bounds: the N(T) envelope, the Lambert-W constant, g(t), the
integral and sum lower bounds, epsilon(t), A(t), B(t), the hypothetical
tail bound, and the sign-change root finder for 0.28 - epsilon(t).

Everything here is a pure function of its arguments.
"""

import logging
import math
from functools import lru_cache
from typing import Callable, Tuple

import numpy as np
from scipy.optimize import bisect, brentq

from .errors import DomainError, MultipleSignChanges, NoSignChange
from .models import (
    GAMMA_1,
    LOG_2PI,
    RH_VERIFIED_HEIGHT,
    THRESHOLD_CONSTANT,
    THRESHOLD_REL_TOL,
    THRESHOLD_SCAN_FACTOR,
    THRESHOLD_WINDOW,
    TWO_PI,
    BoundParams,
    EpsilonVariant,
    SignScan,
)

logger = logging.getLogger(__name__)

E = math.e
LOG_2 = math.log(2.0)

# N(T) envelope
MAIN_TERM_CONST = 7.0 / 8.0
ENVELOPE_LOG = 0.110
ENVELOPE_LOGLOG = 0.290
ENVELOPE_CONST = 2.290
ENVELOPE_RECIPROCAL = 25.0 / (48.0 * math.pi)

# Sum lower bound over the (t - gamma) kernel
MINUS_LOG = 0.22
MINUS_LOGLOG = 0.58
MINUS_CONST = 4.58
MINUS_RECIPROCAL = 0.166
MINUS_RATIO = 2.411

# Sum lower bound over the (t + gamma) kernel
PLUS_NEAR = 3.811
PLUS_CONST = 0.045

# Printed rounding of 0.166 * (1 + 2.411)
EPSILON_RECIPROCAL = 0.566

# Main terms of A(t) and B(t)
A_LOG = 0.12
A_LOGLOG = 2.32
A_CONST = 18.432
B_LOG = 0.49
B_LOGLOG = 0.58
B_CONST = 4.603


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise DomainError(message)


# ==================== Zero counting ====================


def n_main(T: float) -> float:
    """Centered term T/(2 pi) log(T/(2 pi e)) + 7/8 of the zero count."""
    _require(T >= E, f"N(T) envelope needs T >= e, got {T}")
    return T / TWO_PI * math.log(T / (TWO_PI * E)) + MAIN_TERM_CONST


def n_error(T: float) -> float:
    """Half-width 0.110 log T + 0.290 log log T + 2.290 + 25/(48 pi T)."""
    _require(T >= E, f"N(T) envelope needs T >= e, got {T}")
    log_T = math.log(T)
    return (
        ENVELOPE_LOG * log_T
        + ENVELOPE_LOGLOG * math.log(log_T)
        + ENVELOPE_CONST
        + ENVELOPE_RECIPROCAL / T
    )


def n_envelope(T: float) -> Tuple[float, float]:
    main = n_main(T)
    error = n_error(T)
    return main - error, main + error


def n_lower(T: float) -> float:
    return n_envelope(T)[0]


def n_upper(T: float) -> float:
    return n_envelope(T)[1]


# ==================== Lambert-W constant ====================


@lru_cache(maxsize=None)
def lambert_a() -> float:
    """
    a = 1 + W0(-2/e^2)/2 ~ 0.7968, the positive root of log(1 - x) + 2x.

    w e^w = -2 e^-2 has the roots -2 and W0 in (-1, 0); brentq on (-1, 0)
    isolates the principal branch.
    """
    target = -2.0 * math.exp(-2.0)
    w = brentq(lambda w: w * math.exp(w) - target, -1.0, 0.0, xtol=1e-15)
    return 1.0 + w / 2.0


def lemma3_gap(x: float) -> float:
    """log(1 - x) + 2x; positive on (0, a), negative beyond a."""
    _require(x < 1.0, f"log(1 - x) needs x < 1, got {x}")
    return math.log1p(-x) + 2.0 * x


# ==================== Integral lower bounds ====================


def g_components(t: float, params: BoundParams) -> Tuple[float, float, float]:
    """The three terms of g(t), in the order they are printed."""
    alpha = params.alpha
    _require(t > 2.0 * alpha, f"g(t) needs t > 2*alpha = {2.0 * alpha}, got {t}")
    a, b = params.kernels(t)
    _require(a > 0 and b > 0, f"kernels must be positive at t = {t}, got a={a}, b={b}")

    a2, b2 = a * a, b * b
    ratio = alpha / t
    first = math.log(t / TWO_PI) / (b2 * (t - alpha))
    second = math.log1p(t * t * b2 / (4.0 * a2)) / (t * b2)
    third = (ratio * math.log(ratio) - ratio + (1.0 + LOG_2) / 2.0) / (
        a2 + b2 * (t - alpha) ** 2
    )
    return first, second, third


def g_t(t: float, params: BoundParams) -> float:
    return math.fsum(g_components(t, params))


def integral_lower_minus(t: float, params: BoundParams) -> float:
    """
    pi/(a b) log(t/(2 pi)) - g(t), a lower bound for
    int_alpha^inf log(u/(2 pi)) du / (a^2 + b^2 (u - t)^2).
    """
    _require(t > 2.0 * params.alpha, f"needs t > 2*alpha = {2.0 * params.alpha}, got {t}")
    a, b = params.kernels(t)
    _require((t - params.alpha) * b > a, f"needs (t - alpha) b(t) > a(t) at t = {t}")
    return math.pi / (a * b) * math.log(t / TWO_PI) - g_t(t, params)


def integral_lower_plus(t: float, params: BoundParams) -> float:
    """
    log(t/(2 pi))/(4 t b^2) - alpha/(t^2 b^2) log(alpha/(2 pi)), a lower bound for
    int_alpha^inf log(u/(2 pi)) du / (a^2 + b^2 (u + t)^2).
    """
    alpha = params.alpha
    _require(t > alpha, f"needs t > alpha = {alpha}, got {t}")
    a, b = params.kernels(t)
    _require(t * b > a, f"needs t b(t) > a(t) at t = {t}")
    b2 = b * b
    return math.log(t / TWO_PI) / (4.0 * t * b2) - alpha / (t * t * b2) * math.log(
        alpha / TWO_PI
    )


# ==================== Sum lower bounds ====================


def sum_lower_minus(t: float, params: BoundParams, integral_value: float) -> float:
    """Lower bound for the sum over gamma > 0 of 1/(a^2 + b^2 (t - gamma)^2)."""
    _require(t > params.gamma1, f"needs t > gamma_1 = {params.gamma1}, got {t}")
    a, b = params.kernels(t)
    a2 = a * a
    log_t = math.log(t)
    return (
        integral_value / TWO_PI
        - (MINUS_LOG * log_t + MINUS_LOGLOG * math.log(log_t) + MINUS_CONST) / a2
        - MINUS_RECIPROCAL / (t * a2) * (1.0 + MINUS_RATIO * a / b)
    )


def sum_lower_plus(t: float, params: BoundParams, integral_value: float) -> float:
    """Lower bound for the sum over gamma > 0 of 1/(a^2 + b^2 (t + gamma)^2)."""
    _require(t > params.gamma1, f"needs t > gamma_1 = {params.gamma1}, got {t}")
    a, b = params.kernels(t)
    return (
        integral_value / TWO_PI
        - PLUS_NEAR / (a * a + b * b * (params.gamma1 + t) ** 2)
        - PLUS_CONST / (a * b)
    )


# ==================== epsilon(t) and the main lower bound ====================


def _epsilon_printed(t: float, variant: EpsilonVariant) -> float:
    log_t = math.log(t)
    loglog_t = math.log(log_t)
    ratio = GAMMA_1 / t

    near = 1.0 + t * (GAMMA_1 + t) ** 2
    if variant == EpsilonVariant.AS_PRINTED:
        inner = (1.0 + log_t) / 2.0
    else:
        inner = (1.0 + LOG_2) / 2.0

    first_line = (
        LOG_2PI / (TWO_PI * log_t)
        + MINUS_LOGLOG * loglog_t / log_t
        + MINUS_CONST / log_t
        + EPSILON_RECIPROCAL / (t * log_t)
    )
    second_line = (
        -math.log(t / TWO_PI) / (4.0 * t * log_t)
        + GAMMA_1 / (t * t * log_t) * math.log(GAMMA_1 / TWO_PI)
        + PLUS_NEAR / (near * log_t)
        + PLUS_CONST / log_t
    )
    third_line = (
        math.log(t / TWO_PI) / ((t - GAMMA_1) * log_t)
        + math.log1p(t * t / 4.0) / (t * log_t)
        + (ratio * math.log(ratio) - ratio + inner) / ((1.0 + (t - GAMMA_1) ** 2) * log_t)
    ) / TWO_PI
    return math.fsum([first_line, second_line, third_line])


def _epsilon_composed(t: float) -> float:
    params = BoundParams.default()
    s1 = sum_lower_minus(t, params, integral_lower_minus(t, params))
    s2 = sum_lower_plus(t, params, integral_lower_plus(t, params))
    return THRESHOLD_CONSTANT - (s1 + s2)


def epsilon_t(t: float, variant: EpsilonVariant = EpsilonVariant.LEMMA_CONSISTENT) -> float:
    """
    The error term of the main lower bound.

    as_printed follows the display verbatim; lemma_consistent differs only in
    the third line, where (1 + log t)/2 becomes the (1 + log 2)/2 of g(t);
    composed is 0.28 minus the two implemented sum bounds.
    """
    _require(t > 2.0 * GAMMA_1, f"epsilon(t) needs t > 2*gamma_1 = {2.0 * GAMMA_1}, got {t}")
    variant = EpsilonVariant(variant)
    if variant == EpsilonVariant.COMPOSED:
        return _epsilon_composed(t)
    return _epsilon_printed(t, variant)


def main_lower_bound(
    sigma: float,
    t: float,
    params: BoundParams,
    variant: EpsilonVariant = EpsilonVariant.LEMMA_CONSISTENT,
) -> float:
    """(0.28 - epsilon(t)) c / (sigma - 1/2) on 1/2 + 1/sqrt(log t) < sigma < 1."""
    _require(t > E, f"needs t > e, got {t}")
    edge = 0.5 + 1.0 / math.sqrt(math.log(t))
    _require(edge < sigma < 1.0, f"needs {edge} < sigma < 1 at t = {t}, got sigma = {sigma}")
    margin = THRESHOLD_CONSTANT - epsilon_t(t, variant)
    _require(margin > 0, f"t = {t} is below the {EpsilonVariant(variant).value} threshold")
    return margin * params.c / (sigma - 0.5)


# ==================== Threshold root finding ====================


def threshold_margin(t: float, variant: EpsilonVariant) -> float:
    return THRESHOLD_CONSTANT - epsilon_t(t, variant)


def threshold_scan(
    variant: EpsilonVariant = EpsilonVariant.LEMMA_CONSISTENT,
    window: Tuple[float, float] = THRESHOLD_WINDOW,
    factor: float = THRESHOLD_SCAN_FACTOR,
) -> SignScan:
    """Scan 0.28 - epsilon(t) on a geometric grid and collect its sign changes."""
    lo, hi = window
    _require(0 < lo < hi, f"window must satisfy 0 < lo < hi, got {window}")
    _require(factor > 1.0, f"scan factor must exceed 1, got {factor}")

    # epsilon(t) is only defined above 2*gamma_1
    start = max(lo, np.nextafter(2.0 * GAMMA_1, np.inf))
    if start >= hi:
        return SignScan(grid_points=0, sign_changes=0, brackets=[])

    count = int(math.ceil(math.log(hi / start) / math.log(factor))) + 1
    grid = start * factor ** np.arange(count)
    grid[-1] = hi
    grid = grid[grid <= hi]
    signs = np.sign([threshold_margin(float(t), variant) for t in grid])

    brackets = []
    for i in range(len(grid) - 1):
        if signs[i] == 0:
            brackets.append((float(grid[i]), float(grid[i])))
        elif signs[i] * signs[i + 1] < 0:
            brackets.append((float(grid[i]), float(grid[i + 1])))
    if signs[-1] == 0:
        brackets.append((float(grid[-1]), float(grid[-1])))

    logger.debug("Threshold scan %s: %d points, %d sign changes", variant, len(grid), len(brackets))
    return SignScan(grid_points=len(grid), sign_changes=len(brackets), brackets=brackets)


def find_threshold(
    variant: EpsilonVariant = EpsilonVariant.LEMMA_CONSISTENT,
    window: Tuple[float, float] = THRESHOLD_WINDOW,
) -> float:
    """
    The unique root of 0.28 - epsilon(t) in the window.

    A geometric pre-scan must certify exactly one sign change before the
    bracket is bisected to relative tolerance 1e-6.
    """
    variant = EpsilonVariant(variant)
    scan = threshold_scan(variant, window)
    if scan.sign_changes == 0:
        raise NoSignChange(
            f"0.28 - epsilon(t) ({variant.value}) does not change sign in "
            f"[{window[0]:g}, {window[1]:g}] ({scan.grid_points} grid points)"
        )
    if scan.sign_changes > 1:
        raise MultipleSignChanges(
            f"0.28 - epsilon(t) ({variant.value}) changes sign {scan.sign_changes} times "
            f"in [{window[0]:g}, {window[1]:g}]: {scan.brackets}"
        )

    lo, hi = scan.brackets[0]
    if lo == hi:
        root = lo
    else:
        root = bisect(threshold_margin, lo, hi, args=(variant,), rtol=THRESHOLD_REL_TOL)
    logger.info("Threshold (%s): t = %.6g", variant.value, root)
    return float(root)


# ==================== A(t) and B(t) ====================


def a_t_bound(t: float) -> float:
    """A(t) without its vanishing correction."""
    _require(t > E, f"A(t) needs t > e, got {t}")
    return A_LOG * math.log(t / TWO_PI) - A_LOGLOG * math.log(math.log(t)) - A_CONST


def b_t_bound(t: float) -> float:
    """B(t) without its vanishing correction."""
    _require(t > E, f"B(t) needs t > e, got {t}")
    return B_LOG * math.log(t / TWO_PI) + B_LOGLOG * math.log(math.log(t)) - B_CONST


def _log_space_root(func: Callable[[float], float], window: Tuple[float, float]) -> float:
    lo, hi = window
    if func(lo) * func(hi) > 0:
        raise NoSignChange(f"no sign change in [{lo:g}, {hi:g}]")
    x = brentq(lambda x: func(math.exp(x)), math.log(lo), math.log(hi), xtol=1e-12)
    return math.exp(x)


def find_a_root(window: Tuple[float, float] = (1e100, 1e130)) -> float:
    return _log_space_root(a_t_bound, window)


def find_b_root(window: Tuple[float, float] = (15.0, 1e6)) -> float:
    return _log_space_root(b_t_bound, window)


# ==================== Hypothetical zeros ====================


def tail_bound_hypothetical(t: float, gamma_tilde_1: float) -> float:
    """
    (1/pi) (1 + log(t + g1)) / (t + g1), an upper bound for the sum of
    1/(t + gamma_k)^2 over off-line zeros above the verified height.
    """
    _require(t >= 0, f"needs t >= 0, got {t}")
    _require(
        gamma_tilde_1 > RH_VERIFIED_HEIGHT,
        f"hypothetical zeros lie above {RH_VERIFIED_HEIGHT:g}, got {gamma_tilde_1:g}",
    )
    shifted = t + gamma_tilde_1
    return (1.0 + math.log(shifted)) / (math.pi * shifted)


def lemma9_dominance_gap(u: float) -> float:
    """u log u/(2 pi) - n_upper(u); positive for u > 8.032."""
    return u * math.log(u) / TWO_PI - n_upper(u)
