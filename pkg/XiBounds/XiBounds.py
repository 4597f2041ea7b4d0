from typing import List, Optional

from .bounds import find_threshold
from .models import LEMMA_CONSISTENT, BoundParams, EpsilonVariant, EvalPoint, TableEntry, ZeroTable
from .parsers.manifest_parser import read_table_manifest
from .parsers.zero_table_parser import NUMBER_PATTERN
from .sums import re_sum_critical
from .utils import DecimalLike, parse_decimal
from .zerodata import count_up_to, read_zero_table


class XiBounds:
    def __init__(self):
        self._tables = None
        self._entries = None
        self._params = BoundParams.default()
        self._thresholds = {}

    @property
    def tables(self):
        """Loaded zero tables keyed by label (read-only)."""
        return self._tables

    @property
    def entries(self):
        """Manifest entries the tables came from (read-only)."""
        return self._entries

    @property
    def params(self):
        """Bound parameters c, gamma1, alpha, a(t), b(t) (read-only)."""
        return self._params

    @property
    def thresholds(self):
        """Threshold roots computed so far, keyed by variant (read-only)."""
        return self._thresholds

    # ==================== Public Methods ====================

    def read(
        self,
        file_path: str,
        base_height: DecimalLike = "0",
        first_index: int = 1,
        label: str = None,
    ) -> ZeroTable:
        """Read one zero table and register it under `label` (default: the path)."""
        entry = TableEntry(
            path=file_path,
            base_height=parse_decimal(base_height, "base_height"),
            first_index=first_index,
            label=label or file_path,
        )
        return self._load([entry])[0]

    def read_manifest(self, manifest_path: str) -> List[ZeroTable]:
        """Read every table listed in a manifest, in file order."""
        return self._load(read_table_manifest(manifest_path))

    def set_c(self, c: DecimalLike):
        """Use a different critical-line fraction c in later bounds."""
        self._params = self._params.with_c(float(parse_decimal(c, "c")))

    def get_table(self, label: str = None) -> ZeroTable:
        """
        Get a loaded table.

        Args:
            label: Label of the table; None returns the first table read.

        Returns:
            The ZeroTable registered under the label.
        """
        self._raise_error_if_tables_is_none()

        if label is None:
            return next(iter(self.tables.values()))
        if label not in self.tables:
            raise ValueError(f"Table {label} not found")
        return self.tables[label]

    def get_labels(self) -> List[str]:
        self._raise_error_if_tables_is_none()
        return list(self.tables.keys())

    def count_up_to(self, T: DecimalLike, label: str = None) -> Optional[int]:
        """Exact zero count N(T) from a table that starts at gamma_1, or None."""
        return count_up_to(self.get_table(label), T)

    def sum_at(
        self,
        sigma: DecimalLike,
        t_offset: DecimalLike,
        k_range: Optional[range] = None,
        label: str = None,
    ) -> float:
        """
        Truncated Re sum 1/(s - rho) at sigma + i*t, with t given as an offset
        from the table's base height.
        """
        table = self.get_table(label)
        point = EvalPoint(
            sigma=float(parse_decimal(sigma, "sigma")),
            t_offset=float(parse_decimal(t_offset, "t_offset")),
            t_base=table.base_height,
        )
        return re_sum_critical(point, table, k_range)

    def get_threshold(self, variant: EpsilonVariant = LEMMA_CONSISTENT) -> float:
        """Root of 0.28 - epsilon(t); cached per variant."""
        variant = EpsilonVariant(variant)
        if variant not in self._thresholds:
            self._thresholds[variant] = find_threshold(variant)
        return self._thresholds[variant]

    @staticmethod
    def detect(content: str) -> bool:
        """Simple check whether the content looks like a zero table by checking its first data line.

        Args:
            content: The content of the file to check.

        Returns:
            True if the first non-comment line is a decimal number, False otherwise.
        """
        for line in content.splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                return bool(NUMBER_PATTERN.match(line))
        return False

    # ==================== Private Methods ====================

    def _load(self, entries: List[TableEntry]) -> List[ZeroTable]:
        loaded = [
            read_zero_table(entry.path, entry.base_height, entry.first_index, entry.label or entry.path)
            for entry in entries
        ]
        # Must use self._* here because properties are read-only
        if self._tables is None:
            self._tables = {}
            self._entries = []
        for entry, table in zip(entries, loaded):
            self._tables[table.source_label] = table
            self._entries.append(entry)
        return loaded

    def _raise_error_if_tables_is_none(self):
        if self.tables is None:
            raise ValueError("No zero tables found, please read a table first")
