"""
Membership scans of (sigma, t) rectangles for the positivity regions of
Re xi'/xi: the finite critical-line sum and the hypothetical-zero scenarios.
"""

import logging
from decimal import Decimal
from typing import Optional, Sequence, Tuple

import numpy as np

from .bounds import tail_bound_hypothetical
from .errors import DomainError, SourceMissing, UnknownPreset
from .models import (
    DEFAULT_RESOLUTION,
    PRESET_NAMES,
    GridSpec,
    HypotheticalZero,
    RegionCriterion,
    RegionGrid,
    RegionKind,
    ZeroTable,
)
from .sums import hypo_contribution_grid, re_sum_critical_grid

logger = logging.getLogger(__name__)

# fig1 window: T - 0.2 < t < T + 2.7 around the first zero of the window
FIG1_BELOW = 0.2
FIG1_ABOVE = 2.7
FIG1_ZERO_COUNT = 10
FIG1_SIGMA = (0.501, 0.999)

# Placeholder hypothetical zeros sit on this base, above the verified height
HYPOTHETICAL_BASE = Decimal("3000000000000")
SCENARIO_SIGMA = (0.501, 0.999)


def _lattice(grid_spec: GridSpec) -> Tuple[np.ndarray, np.ndarray]:
    if grid_spec.n_sigma < 2 or grid_spec.n_t < 2:
        raise DomainError(
            f"grid needs at least 2 points per axis, got {grid_spec.n_sigma} x {grid_spec.n_t}"
        )
    if not 0.5 < grid_spec.sigma_min < grid_spec.sigma_max < 1.0:
        raise DomainError(
            "sigma range must satisfy 1/2 < sigma_min < sigma_max < 1, got "
            f"[{grid_spec.sigma_min}, {grid_spec.sigma_max}]"
        )
    if not grid_spec.t_min < grid_spec.t_max:
        raise DomainError(f"t range is empty: [{grid_spec.t_min}, {grid_spec.t_max}]")
    sigmas = np.linspace(grid_spec.sigma_min, grid_spec.sigma_max, grid_spec.n_sigma)
    t_offsets = np.linspace(grid_spec.t_min, grid_spec.t_max, grid_spec.n_t)
    return sigmas, t_offsets


def scan(criterion: RegionCriterion, grid_spec: GridSpec) -> RegionGrid:
    """
    Evaluate a region criterion on every lattice point of grid_spec.

    Rows of the mask follow t, columns follow sigma. Points where the
    inequality holds with equality are outside the region.
    """
    sigmas, t_offsets = _lattice(grid_spec)
    kind = RegionKind(criterion.kind)
    threshold = criterion.threshold_constant * criterion.c / (sigmas - 0.5)

    if kind == RegionKind.CRITICAL_FINITE_SUM:
        if criterion.table is None:
            raise SourceMissing("critical_finite_sum needs a zero table")
        lhs = re_sum_critical_grid(
            sigmas, t_offsets, criterion.table, criterion.k_range, grid_spec.t_base
        )
        mask = lhs > threshold[np.newaxis, :]
    else:
        lhs = hypo_contribution_grid(
            sigmas, t_offsets, criterion.zeros, grid_spec.t_base, criterion.full_block
        )
        if kind == RegionKind.HYPOTHETICAL_INFINITE:
            if not criterion.zeros:
                raise SourceMissing("hypothetical_infinite needs at least one zero")
            lowest = min(zero.height for zero in criterion.zeros)
            heights = float(grid_spec.t_base) + t_offsets
            tails = np.array([tail_bound_hypothetical(t, lowest) for t in heights])
            lhs = lhs - 0.5 * tails[:, np.newaxis]
        mask = lhs > -threshold[np.newaxis, :]

    logger.info(
        "Scanned %s on %d x %d: %d points in region",
        kind.value,
        grid_spec.n_t,
        grid_spec.n_sigma,
        int(mask.sum()),
    )
    return RegionGrid(
        sigma_min=grid_spec.sigma_min,
        sigma_max=grid_spec.sigma_max,
        t_min=grid_spec.t_min,
        t_max=grid_spec.t_max,
        n_sigma=grid_spec.n_sigma,
        n_t=grid_spec.n_t,
        mask=mask,
        t_base=grid_spec.t_base,
        label=kind.value,
    )


# ==================== Presets ====================


def _placeholder_zeros(name: str) -> Tuple[HypotheticalZero, ...]:
    base = HYPOTHETICAL_BASE
    if name == "scenario1":
        return (HypotheticalZero(0.75, 10.0, base),)
    if name == "scenario2":
        return (
            HypotheticalZero(0.6, 10.0, base),
            HypotheticalZero(0.8, 11.5, base),
            HypotheticalZero(0.7, 13.0, base),
        )
    # merging: close enough for the negativity pockets to join
    return (
        HypotheticalZero(0.7, 10.0, base),
        HypotheticalZero(0.75, 10.15, base),
        HypotheticalZero(0.65, 10.3, base),
    )


def preset(
    name: str,
    table: Optional[ZeroTable] = None,
    zeros: Optional[Sequence[HypotheticalZero]] = None,
    c: float = 1.0,
    resolution: int = DEFAULT_RESOLUTION,
    infinite: bool = False,
) -> Tuple[RegionCriterion, GridSpec]:
    """
    Named figure configurations.

    fig1 scans the ten zeros from the first index of `table`; the scenario
    presets use placeholder hypothetical zeros unless `zeros` is given.
    Scenario presets compare the finite sum; `infinite` switches to the
    criterion with the tail allowance for zeros above the list.
    """
    if name not in PRESET_NAMES:
        raise UnknownPreset(f"Preset {name!r} not found, expected one of {PRESET_NAMES}")

    if name == "fig1":
        if table is None:
            raise SourceMissing("preset fig1 needs a zero table")
        first = table.first_index
        last = min(first + FIG1_ZERO_COUNT, table.last_index + 1)
        anchor = float(table.offsets[0])
        criterion = RegionCriterion(
            kind=RegionKind.CRITICAL_FINITE_SUM,
            c=c,
            table=table,
            k_range=range(first, last),
        )
        grid_spec = GridSpec(
            sigma_min=FIG1_SIGMA[0],
            sigma_max=FIG1_SIGMA[1],
            t_min=anchor - FIG1_BELOW,
            t_max=anchor + FIG1_ABOVE,
            n_sigma=resolution,
            n_t=resolution,
            t_base=table.base_height,
        )
        return criterion, grid_spec

    zeros = tuple(zeros) if zeros else _placeholder_zeros(name)
    kind = RegionKind.HYPOTHETICAL_INFINITE if infinite else RegionKind.HYPOTHETICAL_FINITE

    # Window offsets are taken relative to the lowest zero's base
    base = min(zeros, key=lambda zero: zero.height).base
    relative = [float(zero.base - base) + zero.gamma for zero in zeros]
    criterion = RegionCriterion(kind=kind, c=c, zeros=zeros)
    grid_spec = GridSpec(
        sigma_min=SCENARIO_SIGMA[0],
        sigma_max=SCENARIO_SIGMA[1],
        t_min=min(relative) - 2.0,
        t_max=max(relative) + 2.0,
        n_sigma=resolution,
        n_t=resolution,
        t_base=base,
    )
    return criterion, grid_spec
