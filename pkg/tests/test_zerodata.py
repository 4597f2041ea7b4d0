from decimal import Decimal

import mpmath
import pytest

from XiBounds.errors import IndexOutOfRange
from XiBounds.zerodata import (
    count_up_to,
    ordinate,
    ordinate_difference,
    parse_zero_table,
    table_window,
)

from conftest import needs_high_table, needs_low_table


class TestCountUpTo:
    """Tests for count_up_to function."""

    def test_count_at_100(self, first30_table):
        """Should count 29 zeros up to height 100."""
        assert count_up_to(first30_table, 100) == 29

    def test_count_at_a_zero_includes_it(self, first30_table):
        """Should count an ordinate equal to T."""
        assert count_up_to(first30_table, "14.134725142") == 1

    def test_count_below_first_zero(self, first30_table):
        """Should return 0 below gamma_1."""
        assert count_up_to(first30_table, 10) == 0

    def test_beyond_table_is_unknown(self, first30_table):
        """Should return None above the last ordinate."""
        assert count_up_to(first30_table, 102) is None

    def test_offset_table_cannot_count(self):
        """Should return None for tables not starting at index 1."""
        table = parse_zero_table("0.5\n0.75\n", base_height="100", first_index=40)
        assert count_up_to(table, 100.6) is None


class TestOrdinate:
    """Tests for ordinate and ordinate_difference."""

    def test_ordinate_pair(self, first30_table):
        """Should return (base, offset) for index k."""
        base, offset = ordinate(first30_table, 3)
        assert base == Decimal(0)
        assert offset == pytest.approx(25.010857580)

    def test_first_ordinates_match_mpmath(self, first30_table):
        """Should agree with mpmath's zeta zeros to the printed digits."""
        for k in (1, 2, 10, 30):
            _, offset = ordinate(first30_table, k)
            assert offset == pytest.approx(float(mpmath.zetazero(k).imag), abs=1e-9)

    def test_index_out_of_range(self, first30_table):
        """Should raise IndexOutOfRange outside the table."""
        with pytest.raises(IndexOutOfRange):
            ordinate(first30_table, 31)
        with pytest.raises(IndexOutOfRange):
            ordinate(first30_table, 0)

    def test_index_errors_are_index_errors(self, first30_table):
        """Should let callers catch IndexError."""
        with pytest.raises(IndexError):
            ordinate(first30_table, 99)

    def test_difference_in_offset_space(self):
        """Should form t - gamma from exact bases."""
        table = parse_zero_table("0.5\n0.75\n", base_height="267653395647", first_index=7)
        diff = ordinate_difference(table, 8, 0.25, t_base="267653395648")
        assert diff == pytest.approx(0.5, abs=1e-14)


class TestTableWindow:
    """Tests for table_window function."""

    def test_whole_table(self, first30_table):
        """Should cover the whole table without a range."""
        assert table_window(first30_table) == slice(0, 30)

    def test_sub_range(self, first30_table):
        """Should map 1-based indices to offsets."""
        assert table_window(first30_table, range(5, 11)) == slice(4, 10)

    def test_empty_range(self, first30_table):
        """Should give an empty slice for an empty range."""
        assert table_window(first30_table, range(5, 5)) == slice(0, 0)

    def test_range_outside_table(self, first30_table):
        """Should reject indices beyond the table."""
        with pytest.raises(IndexOutOfRange):
            table_window(first30_table, range(20, 40))

    def test_stepped_range(self, first30_table):
        """Should reject ranges with a step."""
        with pytest.raises(IndexOutOfRange):
            table_window(first30_table, range(1, 10, 2))


class TestPublicTables:
    """Checks against the public Odlyzko tables when available."""

    @needs_low_table
    def test_low_table_counts(self, low_table):
        """Should hold 29 zeros below 100 and 649 below 1000."""
        assert count_up_to(low_table, 100) == 29
        assert count_up_to(low_table, 1000) == 649

    @needs_high_table
    def test_high_table_bounds(self, high_table):
        """Should sit just above 2.6765e11 and refuse to count."""
        assert high_table.first_index == 10**12 + 1
        assert 2.6765e11 < high_table.max_height < 2.6766e11
        assert count_up_to(high_table, "267653400000") is None
