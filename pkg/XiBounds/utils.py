import logging
from decimal import Decimal, InvalidOperation
from typing import Callable, Optional, Tuple, Union

import numpy as np
from scipy.integrate import quad

from .errors import InvalidDecimal, NoConvergence
from .models import MAX_SUBDIVISIONS

logger = logging.getLogger(__name__)

DecimalLike = Union[str, int, float, Decimal]


def parse_decimal(text: DecimalLike, name: str = "value") -> Decimal:
    """
    Parse an exact decimal string (e.g. "267653395647" or "0.7").

    Floats are converted through repr() so that 0.7 becomes Decimal("0.7")
    rather than its binary expansion.

    Args:
        text: Decimal string, int, float or Decimal
        name: Parameter name used in the error message

    Returns:
        The parsed Decimal
    """
    if isinstance(text, Decimal):
        value = text
    elif isinstance(text, float):
        value = Decimal(repr(text))
    else:
        try:
            value = Decimal(str(text).strip())
        except InvalidOperation:
            raise InvalidDecimal(f"{name}: {text!r} is not a decimal number")

    if not value.is_finite():
        raise InvalidDecimal(f"{name}: {text!r} is not a finite decimal number")
    return value


def parse_pair(text: str, name: str = "pair") -> Tuple[float, float]:
    """Parse "x,y" into two floats (each through parse_decimal)."""
    parts = text.split(",")
    if len(parts) != 2:
        raise InvalidDecimal(f"{name}: expected two comma-separated numbers, got {text!r}")
    return (
        float(parse_decimal(parts[0], name)),
        float(parse_decimal(parts[1], name)),
    )


def base_shift(t_base: Decimal, base_height: Decimal) -> float:
    """t_base - base_height taken exactly, then rounded once to float."""
    return float(Decimal(t_base) - Decimal(base_height))


def offset_differences(
    t_base: Decimal, t_offset: float, base_height: Decimal, offsets: np.ndarray
) -> np.ndarray:
    """
    t - gamma for every offset, formed in offset space.

    The large parts cancel exactly in Decimal first, so at heights near
    2.7e11 the difference keeps the precision of the stored offsets.
    """
    return (t_offset - offsets) + base_shift(t_base, base_height)


def quad_or_raise(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    rel_tol: float,
    abs_tol: float = 0.0,
    accept_rel_error: Optional[float] = None,
) -> Tuple[float, float, int]:
    """
    scipy quad returning (value, abs_error, subdivisions).

    quad's warnings come back as a message instead of being printed. Without
    `accept_rel_error` any message raises NoConvergence; with it, a result
    whose error estimate stays within accept_rel_error * |value| is logged
    and kept.
    """
    result = quad(
        func, lo, hi, epsabs=abs_tol, epsrel=rel_tol, limit=MAX_SUBDIVISIONS, full_output=1
    )
    value, abs_error, info = result[:3]
    if len(result) > 3:
        message = " ".join(str(result[3]).split())
        if accept_rel_error is None or not abs_error <= accept_rel_error * abs(value):
            raise NoConvergence(f"quadrature failed on [{lo!r}, {hi!r}]: {message}", value)
        logger.warning(
            "Quadrature on [%r, %r] kept with error estimate %.3g: %s", lo, hi, abs_error, message
        )
    return value, abs_error, info["last"]
