import math
from dataclasses import dataclass, field, replace
from decimal import Decimal
from enum import Enum
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from .errors import DomainError

# Lowest non-trivial zero ordinate, zeta(1/2 + i*GAMMA_1) = 0
GAMMA_1 = 14.134725141734693
# RH is verified numerically for 0 < t <= RH_VERIFIED_HEIGHT
RH_VERIFIED_HEIGHT = 3e12

TWO_PI = 2.0 * math.pi
LOG_2PI = math.log(TWO_PI)

# Constants of the explicit bounds, as printed
THRESHOLD_CONSTANT = 0.28
PUBLISHED_THRESHOLD = 3.11e10

DEFAULT_REL_TOL = 1e-6
MAX_SUBDIVISIONS = 2**16
# Tail integrals: quad target, and the error estimate still accepted when quad warns
TAIL_REL_TOL = 1e-8
TAIL_ACCEPT_REL_ERROR = 1e-6
THRESHOLD_WINDOW = (1e3, 1e14)
THRESHOLD_SCAN_FACTOR = 1.1
THRESHOLD_REL_TOL = 1e-6

DEFAULT_RESOLUTION = 400

# Odlyzko's 10^12-zone table: zeros 10^12 + 1 ... 10^12 + 10^4 stored as offsets
HIGH_TABLE_BASE = Decimal("267653395647")
HIGH_TABLE_FIRST_INDEX = 10**12 + 1


# =============================================================================
# # Enumerations
# =============================================================================

AS_PRINTED = "as_printed"
LEMMA_CONSISTENT = "lemma_consistent"
COMPOSED = "composed"


class EpsilonVariant(str, Enum):
    AS_PRINTED = AS_PRINTED
    LEMMA_CONSISTENT = LEMMA_CONSISTENT
    COMPOSED = COMPOSED


RIEMANN_VON_MANGOLDT = "riemann_von_mangoldt"
UNIFORM = "uniform"


class DensityMode(str, Enum):
    RIEMANN_VON_MANGOLDT = RIEMANN_VON_MANGOLDT
    UNIFORM = UNIFORM


CRITICAL_FINITE_SUM = "critical_finite_sum"
HYPOTHETICAL_FINITE = "hypothetical_finite"
HYPOTHETICAL_INFINITE = "hypothetical_infinite"


class RegionKind(str, Enum):
    CRITICAL_FINITE_SUM = CRITICAL_FINITE_SUM
    HYPOTHETICAL_FINITE = HYPOTHETICAL_FINITE
    HYPOTHETICAL_INFINITE = HYPOTHETICAL_INFINITE


PASS = "PASS"
FAIL = "FAIL"
SKIPPED = "SKIPPED"


class CheckStatus(str, Enum):
    PASS = PASS
    FAIL = FAIL
    SKIPPED = SKIPPED


PRESET_NAMES = ["fig1", "scenario1", "scenario2", "merging"]


# =============================================================================
# # Zero tables
# =============================================================================


@dataclass(frozen=True, eq=False)
class ZeroTable:
    """Sorted zero ordinates stored as offsets from an exact decimal base height.

    Immutable; `offsets` is a read-only float64 array.
    """

    base_height: Decimal
    offsets: np.ndarray
    first_index: int = 1
    source_label: str = ""

    def __len__(self) -> int:
        return len(self.offsets)

    @property
    def last_index(self) -> int:
        return self.first_index + len(self.offsets) - 1

    @property
    def max_height(self) -> float:
        return float(self.base_height) + float(self.offsets[-1])

    def absolute_ordinates(self) -> np.ndarray:
        # Loses ~5 digits near 2.7e11; only for counting and coarse work
        return float(self.base_height) + self.offsets


@dataclass(frozen=True)
class TableEntry:
    """One entry of a table manifest."""

    path: str
    base_height: Decimal = Decimal(0)
    first_index: int = 1
    label: str = ""


# =============================================================================
# # Evaluation points and hypothetical zeros
# =============================================================================


@dataclass(frozen=True)
class EvalPoint:
    """s = sigma + i*t with t = t_base + t_offset."""

    sigma: float
    t_offset: float
    t_base: Decimal = Decimal(0)

    def __post_init__(self):
        if not 0.0 < self.sigma < 1.0:
            raise DomainError(f"sigma must lie in (0, 1), got {self.sigma}")

    @property
    def t(self) -> float:
        return float(self.t_base) + self.t_offset

    def conjugate(self) -> "EvalPoint":
        return EvalPoint(self.sigma, -self.t_offset, -self.t_base)


@dataclass(frozen=True)
class HypotheticalZero:
    """Assumed off-line zero beta + i*gamma, gamma = base + gamma offset."""

    beta: float
    gamma: float
    base: Decimal = Decimal(0)

    def __post_init__(self):
        if not 0.5 < self.beta < 1.0:
            raise DomainError(f"beta must lie in (1/2, 1), got {self.beta}")
        if float(self.base) + self.gamma <= 0:
            raise DomainError(f"gamma must be positive, got {self.base} + {self.gamma}")

    @property
    def height(self) -> float:
        return float(self.base) + self.gamma


# =============================================================================
# # Bound parameters
# =============================================================================


def sqrt_log(t: float) -> float:
    return math.sqrt(math.log(t))


@dataclass(frozen=True)
class BoundParams:
    """Constants of the explicit bounds: c, gamma1, alpha and the kernels a(t), b(t)."""

    c: float = 1.0
    gamma1: float = GAMMA_1
    alpha: float = GAMMA_1
    kernel_a: Callable[[float], float] = sqrt_log
    kernel_b: Callable[[float], float] = sqrt_log

    def __post_init__(self):
        if not 0.0 < self.c <= 1.0:
            raise DomainError(f"c must lie in (0, 1], got {self.c}")
        if self.alpha <= 1.0:
            raise DomainError(f"alpha must exceed 1, got {self.alpha}")

    @classmethod
    def default(cls) -> "BoundParams":
        return cls()

    def with_c(self, c: float) -> "BoundParams":
        return replace(self, c=c)

    def kernels(self, t: float) -> Tuple[float, float]:
        return self.kernel_a(t), self.kernel_b(t)


# =============================================================================
# # Oracle results
# =============================================================================


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    subdivisions: int


@dataclass(frozen=True)
class SignScan:
    """Certificate of a geometric sign scan: grid size and the brackets found."""

    grid_points: int
    sign_changes: int
    brackets: List[Tuple[float, float]] = field(default_factory=list)


# =============================================================================
# # Regions
# =============================================================================


@dataclass(frozen=True)
class GridSpec:
    sigma_min: float
    sigma_max: float
    t_min: float
    t_max: float
    n_sigma: int = DEFAULT_RESOLUTION
    n_t: int = DEFAULT_RESOLUTION
    t_base: Decimal = Decimal(0)


@dataclass(frozen=True)
class RegionCriterion:
    kind: RegionKind
    c: float = 1.0
    threshold_constant: float = THRESHOLD_CONSTANT
    table: Optional[ZeroTable] = None
    k_range: Optional[range] = None
    zeros: Tuple[HypotheticalZero, ...] = ()
    full_block: bool = False


@dataclass(frozen=True, eq=False)
class RegionGrid:
    sigma_min: float
    sigma_max: float
    t_min: float
    t_max: float
    n_sigma: int
    n_t: int
    mask: np.ndarray
    t_base: Decimal = Decimal(0)
    label: str = ""

    @property
    def sigmas(self) -> np.ndarray:
        return np.linspace(self.sigma_min, self.sigma_max, self.n_sigma)

    @property
    def t_offsets(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.n_t)


@dataclass(frozen=True)
class SvgStyle:
    width: int = 640
    height: int = 640
    margin: int = 48
    fill: str = "#9e9e9e"
    boundary_stroke: str = "#424242"


# =============================================================================
# # CLI
# =============================================================================


@dataclass
class RunManifest:
    """What a CLI run was asked to do, echoed losslessly in reports."""

    command: str
    params: Dict[str, str] = field(default_factory=dict)
    table_paths: List[str] = field(default_factory=list)
    output_paths: List[str] = field(default_factory=list)


@dataclass
class CheckResult:
    name: str
    status: CheckStatus
    margin: Optional[float] = None
    detail: str = ""
