"""
Independent numerical verifiers for the explicit bounds: quadrature of the
kernel integrals, the partial summation identity, and synthetic zero
sequences above the verified height.
"""

import logging
import math
from typing import Callable, NamedTuple, Optional, Sequence, Tuple

import mpmath
import numpy as np

from .bounds import n_main, n_upper
from .errors import DomainError, InvalidTolerance
from .models import (
    DEFAULT_REL_TOL,
    RH_VERIFIED_HEIGHT,
    TAIL_ACCEPT_REL_ERROR,
    TAIL_REL_TOL,
    TWO_PI,
    BoundParams,
    DensityMode,
    QuadratureResult,
)
from .utils import quad_or_raise

logger = logging.getLogger(__name__)

# Open interval of accepted relative tolerances
REL_TOL_RANGE = (1e-12, 1e-2)
# Absolute target of the log(u/t) remainder, relative to the exact part
REMAINDER_ABS_FRACTION = 1e-4
# Pieces of the partial summation integral are smooth on unit intervals
PARTIAL_SUMMATION_REL_TOL = 1e-10


class PartialSummationResult(NamedTuple):
    lhs: float
    rhs: float
    abs_error_estimate: float


def _check_rel_tol(rel_tol: float) -> None:
    lo, hi = REL_TOL_RANGE
    if not lo < rel_tol < hi:
        raise InvalidTolerance(f"rel_tol must lie in ({lo:g}, {hi:g}), got {rel_tol!r}")


def quad_kernel(
    weight: Callable[[float], float],
    center: float,
    a: float,
    b: float,
    lower: float,
    upper: float = math.inf,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = 0.0,
) -> QuadratureResult:
    """
    int_lower^upper weight(u) du / (a^2 + b^2 (u - center)^2).

    Each side of the center is mapped to a finite angle by
    u = center +/- (a/b) cot(psi), psi in (0, pi/2], which turns the kernel
    into the constant 1/(a b). Distant u sit near psi = 0, where the angle
    keeps full relative precision.
    """
    _check_rel_tol(rel_tol)
    if not (a > 0 and b > 0):
        raise DomainError(f"kernel widths must be positive, got a={a}, b={b}")
    if not lower < upper:
        raise DomainError(f"need lower < upper, got [{lower}, {upper}]")

    scale = a / b
    inv_ab = 1.0 / (a * b)

    def angle(distance: float) -> float:
        # psi for |u - center| = distance
        return math.atan2(a, b * distance)

    pieces = []
    if upper > center:
        start = max(lower, center) - center
        pieces.append((1.0, angle(upper - center), angle(start)))
    if lower < center:
        stop = center - min(upper, center)
        pieces.append((-1.0, angle(center - lower), angle(stop)))

    value = abs_error = 0.0
    subdivisions = 0
    for side, psi_lo, psi_hi in pieces:
        if psi_lo >= psi_hi:
            continue

        def integrand(psi, side=side):
            return weight(center + side * scale / math.tan(psi)) * inv_ab

        piece_value, piece_error, last = quad_or_raise(integrand, psi_lo, psi_hi, rel_tol, abs_tol)
        value += piece_value
        abs_error += piece_error
        subdivisions += last

    return QuadratureResult(value=value, abs_error_estimate=abs_error, subdivisions=max(subdivisions, 1))


def quad_minus_kernel(
    t: float, params: BoundParams, rel_tol: float = DEFAULT_REL_TOL
) -> QuadratureResult:
    """
    int_alpha^inf log(u/2pi) du / (a^2 + b^2 (u - t)^2).

    log(u/2pi) = log(t/2pi) + log(u/t): the constant part is the exact
    arctangent mass of the kernel, only log(u/t) goes through quadrature.
    """
    _check_rel_tol(rel_tol)
    alpha = params.alpha
    if not t > alpha:
        raise DomainError(f"needs t > alpha = {alpha}, got {t}")
    a, b = params.kernels(t)

    # pi/2 - atan((alpha - t) b/a)
    mass = math.atan2(a, b * (alpha - t)) / (a * b)
    constant = math.log(t / TWO_PI) * mass

    # The remainder may vanish for some t; its absolute target is a small
    # fraction of the whole integral
    remainder = quad_kernel(
        lambda u: math.log1p((u - t) / t),
        t,
        a,
        b,
        alpha,
        math.inf,
        rel_tol,
        abs_tol=REMAINDER_ABS_FRACTION * rel_tol * abs(constant),
    )
    return QuadratureResult(
        value=constant + remainder.value,
        abs_error_estimate=remainder.abs_error_estimate,
        subdivisions=remainder.subdivisions,
    )


def quad_plus_kernel(
    t: float, params: BoundParams, rel_tol: float = DEFAULT_REL_TOL
) -> QuadratureResult:
    """int_alpha^inf log(u/2pi) du / (a^2 + b^2 (u + t)^2)."""
    _check_rel_tol(rel_tol)
    alpha = params.alpha
    if not t > alpha:
        raise DomainError(f"needs t > alpha = {alpha}, got {t}")
    a, b = params.kernels(t)
    return quad_kernel(lambda u: math.log(u / TWO_PI), -t, a, b, alpha, math.inf, rel_tol)


def partial_summation_check(
    a_seq: Sequence[float],
    f: Callable[[float], float],
    x: float,
    f_prime: Optional[Callable[[float], float]] = None,
) -> PartialSummationResult:
    """
    Both sides of sum_{n <= x} a_n f(n) = A(x) f(x) - int_1^x A(u) f'(u) du.

    A(u) is constant on [n, n + 1), so the integral is taken piece by piece:
    by quadrature of f' when it is given, otherwise as A(n) (f(stop) - f(n)).
    """
    if x < 1:
        raise DomainError(f"x must be >= 1, got {x}")
    n_max = int(math.floor(x))
    if len(a_seq) < n_max:
        raise DomainError(f"need a_1 ... a_{n_max}, got {len(a_seq)} terms")

    coefficients = np.asarray(a_seq[:n_max], dtype=np.float64)
    partial = np.cumsum(coefficients)
    lhs = math.fsum(coefficients[n - 1] * f(n) for n in range(1, n_max + 1))

    integral = []
    error = 0.0
    for n in range(1, n_max + 1):
        stop = min(n + 1.0, x)
        if stop <= n:
            continue
        if f_prime is None:
            piece, piece_error = f(stop) - f(n), 0.0
        else:
            piece, piece_error, _ = quad_or_raise(f_prime, n, stop, PARTIAL_SUMMATION_REL_TOL)
        integral.append(partial[n - 1] * piece)
        error += abs(partial[n - 1]) * piece_error

    rhs = partial[-1] * f(x) - math.fsum(integral)
    return PartialSummationResult(lhs=float(lhs), rhs=float(rhs), abs_error_estimate=error)


def synth_zero_sequence(
    start_height: float,
    count: int,
    density_mode: DensityMode = DensityMode.RIEMANN_VON_MANGOLDT,
) -> np.ndarray:
    """
    Strictly increasing stand-in ordinates above the verified height.

    riemann_von_mangoldt spaces gamma_k by 2pi/log(gamma_k/2pi), so the count
    grows like n_main; uniform keeps the starting spacing throughout.
    """
    if not start_height > RH_VERIFIED_HEIGHT:
        raise DomainError(
            f"synthetic zeros must start above {RH_VERIFIED_HEIGHT:g}, got {start_height:g}"
        )
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    density_mode = DensityMode(density_mode)

    spacing = TWO_PI / math.log(start_height / TWO_PI)
    steps = np.full(count - 1, spacing)
    offsets = np.concatenate([[0.0], np.cumsum(steps)])
    if density_mode == DensityMode.RIEMANN_VON_MANGOLDT and count > 1:
        # second pass: local spacing at the first-pass positions
        heights = start_height + offsets[:-1]
        steps = TWO_PI / np.log(heights / TWO_PI)
        offsets = np.concatenate([[0.0], np.cumsum(steps)])
    return start_height + offsets


def hypothetical_tail_sum(t: float, ordinates: Sequence[float]) -> Tuple[float, float]:
    """
    (direct, tail) for sum 1/(t + gamma_k)^2: the direct sum over the given
    ordinates and a partial-summation bound for zeros beyond the last one,
    counted by n_upper(u) - n_main(gamma_last).

    With u = x (t + gamma_last) - t the tail is
    2/(t + gamma_last)^2 int_1^inf (n_upper(u) - n_main(gamma_last)) / x^3 dx.
    """
    if t < 0:
        raise DomainError(f"needs t >= 0, got {t}")
    gammas = np.asarray(ordinates, dtype=np.float64)
    direct = float(np.sum(1.0 / (t + gammas) ** 2))

    last = float(gammas[-1])
    shifted = t + last
    floor_count = n_main(last)

    def integrand(x):
        return (n_upper(x * shifted - t) - floor_count) / x**3

    value, abs_error, _ = quad_or_raise(
        integrand, 1.0, np.inf, TAIL_REL_TOL, accept_rel_error=TAIL_ACCEPT_REL_ERROR
    )
    # the error estimate is added so the tail stays an upper bound
    tail = 2.0 * (value + abs_error) / shifted**2
    logger.debug("Synthetic tail at t=%g: direct %.6g, tail %.6g", t, direct, tail)
    return direct, tail


def lambert_a_reference(digits: int = 30) -> float:
    """1 + W0(-2/e^2)/2 from mpmath's principal-branch Lambert W at `digits` digits."""
    with mpmath.workdps(digits):
        w = mpmath.lambertw(-2 * mpmath.exp(-2))
        return float(1 + mpmath.re(w) / 2)
