"""
The lemma check suite: every explicit bound checked numerically against its
quadrature oracle, against zero-table data, or against its defining equation.
"""

import logging
import math
from typing import List, Optional, Sequence

import numpy as np

from .bounds import (
    E,
    find_threshold,
    g_components,
    g_t,
    integral_lower_minus,
    integral_lower_plus,
    lambert_a,
    lemma3_gap,
    lemma9_dominance_gap,
    n_envelope,
    sum_lower_minus,
    sum_lower_plus,
    tail_bound_hypothetical,
)
from .errors import NoSignChange
from .models import (
    DEFAULT_REL_TOL,
    PUBLISHED_THRESHOLD,
    BoundParams,
    CheckResult,
    CheckStatus,
    EpsilonVariant,
    EvalPoint,
    HypotheticalZero,
    ZeroTable,
)
from .oracle import (
    hypothetical_tail_sum,
    lambert_a_reference,
    quad_minus_kernel,
    quad_plus_kernel,
    synth_zero_sequence,
)
from .regions import HYPOTHETICAL_BASE, preset, scan
from .sums import hypo_contribution, lorentz_sums, lorentz_tails, theorem_desk_check

logger = logging.getLogger(__name__)

COROLLARY_G_BOUND = 0.0879
COROLLARY_T_MAX = 1e8
COROLLARY_GRID = 10001

LEMMA2_SAMPLES = 1000
LEMMA3_SAMPLES = 500
ORACLE_HEIGHTS = (1e2, 1e8, 50)
SUM_HEIGHTS = 20

LEMMA9_START = 3.001e12
LEMMA9_COUNT = 10**5
LEMMA9_HEIGHTS = (0.0, 1e12, 20)
LEMMA9_GRID = (8.04, 1e10, 1000)
LEMMA9_SHARP_POINT = 7.5

POCKET_DEPTH = -900.0


def _result(name: str, ok: bool, margin: Optional[float], detail: str) -> CheckResult:
    status = CheckStatus.PASS if ok else CheckStatus.FAIL
    if not ok:
        logger.warning("Check %s failed: %s", name, detail)
    return CheckResult(name=name, status=status, margin=margin, detail=detail)


def _skipped(name: str, detail: str) -> CheckResult:
    logger.warning("Check %s skipped: %s", name, detail)
    return CheckResult(name=name, status=CheckStatus.SKIPPED, detail=detail)


def low_table(tables: Sequence[ZeroTable]) -> Optional[ZeroTable]:
    """The first table that starts at gamma_1, if any."""
    return next((table for table in tables if table.first_index == 1), None)


def high_table(tables: Sequence[ZeroTable]) -> Optional[ZeroTable]:
    """The first table whose window lies above the lemma_consistent threshold."""
    return next(
        (table for table in tables if table.first_index > 1 and float(table.base_height) > PUBLISHED_THRESHOLD),
        None,
    )


# ==================== Data-free checks ====================


def check_threshold(variant: EpsilonVariant = EpsilonVariant.LEMMA_CONSISTENT) -> CheckResult:
    """Threshold root against 3.11e10 to two significant figures."""
    name = f"threshold[{EpsilonVariant(variant).value}]"
    try:
        root = find_threshold(variant)
    except NoSignChange as exc:
        return _result(name, False, None, str(exc))
    ok = f"{root:.1e}" == f"{PUBLISHED_THRESHOLD:.1e}"
    return _result(name, ok, root - PUBLISHED_THRESHOLD, f"root {root:.6g}, expected {PUBLISHED_THRESHOLD:.3g}")


def check_corollary_g() -> CheckResult:
    """|g(t)| < 0.0879 above 2 alpha, and t g(t) at 10^8."""
    params = BoundParams.default()
    grid = np.geomspace(2.0 * params.alpha, COROLLARY_T_MAX, COROLLARY_GRID)[1:]
    worst = max(abs(g_t(float(t), params)) for t in grid)
    scaled = COROLLARY_T_MAX * g_t(COROLLARY_T_MAX, params)
    scaled_log_term = COROLLARY_T_MAX * g_components(COROLLARY_T_MAX, params)[1]
    return _result(
        "corollary_g",
        worst < COROLLARY_G_BOUND,
        COROLLARY_G_BOUND - worst,
        f"max |g| = {worst:.6f}; t g(t) = {scaled:.4f}, t g2(t) = {scaled_log_term:.4f} at t = 1e8",
    )


def check_lemma3() -> CheckResult:
    a = lambert_a()
    grid = np.linspace(1e-6, a - 1e-6, LEMMA3_SAMPLES)
    worst = min(lemma3_gap(float(x)) for x in grid)
    at_root = lemma3_gap(a)
    beyond = lemma3_gap(a + 1e-3)
    reference = lambert_a_reference()
    ok = (
        worst > 0
        and abs(at_root) < 1e-10
        and beyond < 0
        and abs(a - reference) < 1e-12
        and round(a, 4) == 0.7968
    )
    return _result(
        "lemma3",
        ok,
        worst,
        f"a = {a:.15f} (mpmath {reference:.15f}); gap(a) = {at_root:.3g}; gap(a + 1e-3) = {beyond:.3g}",
    )


def _check_oracle(name: str, bound, oracle) -> CheckResult:
    params = BoundParams.default()
    lo, hi, count = ORACLE_HEIGHTS
    margins = []
    worst_error = 0.0
    for t in np.geomspace(lo, hi, count):
        t = float(t)
        result = oracle(t, params, DEFAULT_REL_TOL)
        margins.append(result.value + result.abs_error_estimate - bound(t, params))
        worst_error = max(worst_error, result.abs_error_estimate / abs(result.value))
    worst = min(margins)
    return _result(
        name,
        worst >= 0 and worst_error < DEFAULT_REL_TOL,
        worst,
        f"{count} heights in [{lo:g}, {hi:g}]; worst relative error estimate {worst_error:.2g}",
    )


def check_lemma5() -> CheckResult:
    return _check_oracle("lemma5_oracle", integral_lower_minus, quad_minus_kernel)


def check_lemma6() -> CheckResult:
    return _check_oracle("lemma6_oracle", integral_lower_plus, quad_plus_kernel)


def check_lemma9() -> CheckResult:
    ordinates = synth_zero_sequence(LEMMA9_START, LEMMA9_COUNT)
    lo, hi, count = LEMMA9_HEIGHTS
    worst = math.inf
    for t in np.linspace(lo, hi, count):
        t = float(t)
        direct, tail = hypothetical_tail_sum(t, ordinates)
        bound = tail_bound_hypothetical(t, float(ordinates[0]))
        worst = min(worst, (bound - direct - tail) / bound)

    u_lo, u_hi, u_count = LEMMA9_GRID
    gaps = [lemma9_dominance_gap(float(u)) for u in np.geomspace(u_lo, u_hi, u_count)]
    sharp = lemma9_dominance_gap(LEMMA9_SHARP_POINT)
    ok = worst > 0 and min(gaps) > 0 and sharp < 0
    return _result(
        "lemma9",
        ok,
        worst,
        f"relative slack {worst:.3g}; dominance gap min {min(gaps):.3g} on [{u_lo}, {u_hi:g}], "
        f"{sharp:.3g} at u = {LEMMA9_SHARP_POINT}",
    )


def check_scenarios() -> CheckResult:
    """Negativity pocket next to a hypothetical zero, and mask(c=0.4) within mask(c=1)."""
    zero = HypotheticalZero(0.75, 10.0, HYPOTHETICAL_BASE)
    pocket = hypo_contribution(EvalPoint(zero.beta - 1e-3, zero.gamma, zero.base), [zero])

    criterion, grid_spec = preset("scenario2", resolution=60)
    full = scan(criterion, grid_spec).mask
    weak_criterion, _ = preset("scenario2", c=0.4, resolution=60)
    weak = scan(weak_criterion, grid_spec).mask
    nested = bool(np.all(~weak | full))
    return _result(
        "scenarios",
        pocket < POCKET_DEPTH and nested,
        POCKET_DEPTH - pocket,
        f"pocket value {pocket:.1f}; mask(c=0.4) within mask(c=1): {nested}",
    )


# ==================== Data checks ====================


def check_lemma2(table: Optional[ZeroTable]) -> CheckResult:
    name = "lemma2_envelope"
    if table is None:
        return _skipped(name, "needs a table starting at gamma_1")
    ordinates = table.absolute_ordinates()
    heights = np.linspace(E, table.max_height, LEMMA2_SAMPLES)
    counts = np.searchsorted(ordinates, heights, side="right")
    margins = []
    for T, count in zip(heights, counts):
        lower, upper = n_envelope(float(T))
        margins.append(min(count - lower, upper - count))
    worst = min(margins)
    return _result(name, worst >= 0, worst, f"{LEMMA2_SAMPLES} heights up to {table.max_height:.6g}")


def check_lemmas78(table: Optional[ZeroTable]) -> CheckResult:
    name = "lemmas7_8_sums"
    if table is None:
        return _skipped(name, "needs a table starting at gamma_1")
    params = BoundParams.default()
    lo = 2.0 * params.alpha + 1.0
    hi = 0.9 * table.max_height
    if hi <= lo:
        return _skipped(name, f"table ends at {table.max_height:.6g}, too low for the sums")

    margins = []
    for t in np.geomspace(lo, hi, SUM_HEIGHTS):
        t = float(t)
        a, b = params.kernels(t)
        minus, plus = lorentz_sums(t, table, a, b)
        tail_minus, tail_plus = lorentz_tails(t, a, b, table.max_height)
        bound_minus = sum_lower_minus(t, params, integral_lower_minus(t, params))
        bound_plus = sum_lower_plus(t, params, integral_lower_plus(t, params))
        margins.append(min(minus + tail_minus - bound_minus, plus + tail_plus - bound_plus))
    worst = min(margins)
    return _result(name, worst >= 0, worst, f"{SUM_HEIGHTS} heights in [{lo:.4g}, {hi:.6g}]")


def check_theorem(
    table: Optional[ZeroTable], variant: EpsilonVariant = EpsilonVariant.LEMMA_CONSISTENT
) -> CheckResult:
    """Main lower bound against the truncated sum around mid-table."""
    name = "theorem_desk_check"
    if table is None:
        return _skipped(name, f"needs a table above {PUBLISHED_THRESHOLD:g}")
    params = BoundParams.default()
    middle = float(table.offsets[len(table) // 2])
    t_mid = float(table.base_height) + middle
    edge = 0.5 + 1.0 / math.sqrt(math.log(t_mid))

    margins = []
    for t_offset in np.linspace(middle - 1.0, middle + 1.0, 5):
        for sigma in np.linspace(edge + 0.01, 0.99, 5):
            point = EvalPoint(float(sigma), float(t_offset), table.base_height)
            total, bound, tail = theorem_desk_check(point, table, params, variant)
            margins.append(total + tail - bound)
    worst = min(margins)
    return _result(name, worst >= 0, worst, f"25 points around t = {t_mid:.6g}")


def run_lemma_checks(
    tables: Sequence[ZeroTable] = (),
    variant: EpsilonVariant = EpsilonVariant.LEMMA_CONSISTENT,
) -> List[CheckResult]:
    """
    Run the whole suite. Data checks are SKIPPED when no suitable table is
    given: a table starting at gamma_1 for counting and sums, a table above
    the threshold for the theorem desk check.
    """
    low = low_table(tables)
    high = high_table(tables)
    results = [
        check_threshold(variant),
        check_corollary_g(),
        check_lemma3(),
        check_lemma5(),
        check_lemma6(),
        check_lemma9(),
        check_scenarios(),
        check_lemma2(low),
        check_lemmas78(low),
        check_theorem(high, variant),
    ]
    logger.info(
        "Lemma checks: %d passed, %d failed, %d skipped",
        sum(r.status == CheckStatus.PASS for r in results),
        sum(r.status == CheckStatus.FAIL for r in results),
        sum(r.status == CheckStatus.SKIPPED for r in results),
    )
    return results
