"""
Counting and index queries over zero tables.

Tables come from parsers.zero_table_parser; they are immutable and safe to
share between readers.
"""

from decimal import Decimal
from typing import Optional, Tuple

import numpy as np

from .errors import IndexOutOfRange
from .models import ZeroTable
from .parsers.zero_table_parser import (
    parse_zero_table,
    read_zero_table,
    serialize_zero_table,
)
from .utils import DecimalLike, offset_differences, parse_decimal

__all__ = [
    "parse_zero_table",
    "read_zero_table",
    "serialize_zero_table",
    "count_up_to",
    "ordinate",
    "table_window",
    "ordinate_difference",
]


def count_up_to(table: ZeroTable, T: DecimalLike) -> Optional[int]:
    """
    Exact number of ordinates <= T, or None when the table cannot answer.

    Only tables that start at the first zero can count; T beyond the last
    ordinate is unknown as well.
    """
    if table.first_index != 1:
        return None

    height = parse_decimal(T, "T") - table.base_height
    last = Decimal(repr(float(table.offsets[-1])))
    if height > last:
        return None

    return int(np.searchsorted(table.offsets, float(height), side="right"))


def ordinate(table: ZeroTable, k: int) -> Tuple[Decimal, float]:
    """
    The k-th zero as (base_height, offset).

    Callers form t - gamma in offset space (see ordinate_difference)
    instead of adding the pair back together.
    """
    if not table.first_index <= k <= table.last_index:
        raise IndexOutOfRange(
            f"zero index {k} outside table range "
            f"[{table.first_index}, {table.last_index}] ({table.source_label})"
        )
    return table.base_height, float(table.offsets[k - table.first_index])


def table_window(table: ZeroTable, k_range: Optional[range] = None) -> slice:
    """Translate a range of 1-based zero indices into a slice of the offsets."""
    if k_range is None:
        return slice(0, len(table))

    if k_range.step != 1:
        raise IndexOutOfRange(f"zero index ranges must have step 1, got {k_range!r}")
    if len(k_range) == 0:
        return slice(0, 0)
    if k_range.start < table.first_index or k_range.stop - 1 > table.last_index:
        raise IndexOutOfRange(
            f"zero indices {k_range.start}..{k_range.stop - 1} outside table range "
            f"[{table.first_index}, {table.last_index}] ({table.source_label})"
        )
    start = k_range.start - table.first_index
    return slice(start, start + len(k_range))


def ordinate_difference(
    table: ZeroTable, k: int, t_offset: float, t_base: DecimalLike = "0"
) -> float:
    """t - gamma_k with the large parts cancelled exactly."""
    base, offset = ordinate(table, k)
    diff = offset_differences(parse_decimal(t_base, "t_base"), t_offset, base, np.array([offset]))
    return float(diff[0])
