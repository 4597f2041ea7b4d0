import io
from decimal import Decimal

import pytest

from XiBounds.errors import EmptyTable, InvalidTable, MalformedLine, NonMonotone, TableError
from XiBounds.parsers.zero_table_parser import (
    parse_zero_table,
    read_header_metadata,
    read_zero_table,
    reparse_serialized,
    serialize_zero_table,
)

from conftest import FIRST_30


class TestParseZeroTable:
    """Tests for parse_zero_table function."""

    def test_parse_plain_ordinates(self):
        """Should read one ordinate per line in file order."""
        table = parse_zero_table("14.134725142\n21.022039639\n25.010857580\n")
        assert len(table) == 3
        assert table.offsets[1] == pytest.approx(21.022039639)
        assert table.base_height == Decimal(0)
        assert table.first_index == 1

    def test_skips_blank_and_comment_lines(self):
        """Should ignore blank lines and lines starting with '#'."""
        text = "# header\n\n14.134725142\n   \n# middle\n21.022039639\n"
        table = parse_zero_table(text)
        assert list(table.offsets) == [14.134725142, 21.022039639]

    def test_accepts_iterable_of_lines(self):
        """Should accept an open stream as well as a string."""
        table = parse_zero_table(io.StringIO("14.134725142\n21.022039639\n"))
        assert len(table) == 2

    def test_offsets_are_read_only(self):
        """Should return an immutable offsets array."""
        table = parse_zero_table("14.134725142\n")
        with pytest.raises(ValueError):
            table.offsets[0] = 1.0

    def test_malformed_line_reports_line_number(self):
        """Should name the source and the 1-based line of a bad value."""
        with pytest.raises(MalformedLine) as exc_info:
            parse_zero_table("14.134725142\n\nabc\n", source_label="zeros.txt")

        assert exc_info.value.line == 3
        assert "zeros.txt line 3" in str(exc_info.value)
        assert "'abc'" in str(exc_info.value)

    def test_non_monotone_raises(self):
        """Should reject a value not greater than its predecessor."""
        with pytest.raises(NonMonotone) as exc_info:
            parse_zero_table("14.134725142\n25.0\n21.0\n")
        assert exc_info.value.line == 3

    def test_duplicate_raises_non_monotone(self):
        """Should treat repeated ordinates as a monotonicity violation."""
        with pytest.raises(NonMonotone):
            parse_zero_table("14.134725142\n21.0\n21.0\n")

    def test_empty_table_raises(self):
        """Should raise EmptyTable when no numeric line is present."""
        with pytest.raises(EmptyTable):
            parse_zero_table("# only a comment\n\n")

    def test_first_index_one_must_start_at_gamma_1(self):
        """Should reject a table claiming index 1 that does not start at gamma_1."""
        with pytest.raises(InvalidTable) as exc_info:
            parse_zero_table("15.0\n21.0\n")
        assert "gamma_1" in str(exc_info.value)

    def test_offsets_with_base(self):
        """Should keep offsets small and the base exact."""
        table = parse_zero_table(
            "0.5\n0.75\n", base_height="267653395647", first_index=10**12 + 1
        )
        assert table.base_height == Decimal("267653395647")
        assert table.last_index == 10**12 + 2
        assert table.offsets[0] == 0.5

    def test_zero_base_needs_positive_offsets(self):
        """Should reject non-positive ordinates when the base is 0."""
        with pytest.raises(InvalidTable):
            parse_zero_table("-1.0\n2.0\n", first_index=5)

    def test_negative_base_raises(self):
        """Should reject a negative base height."""
        with pytest.raises(InvalidTable):
            parse_zero_table("1.0\n", base_height="-1", first_index=2)

    def test_errors_are_value_errors(self):
        """Should let callers catch table errors as ValueError."""
        assert issubclass(TableError, ValueError)


class TestReadZeroTable:
    """Tests for read_zero_table function using sample files."""

    def test_read_first30_sample(self, samples_dir):
        """Should read the bundled first 30 ordinates."""
        table = read_zero_table(str(samples_dir / "zeros_first30.txt"))
        assert len(table) == 30
        assert list(table.offsets) == FIRST_30
        assert table.source_label.endswith("zeros_first30.txt")

    def test_corrupted_sample_names_path_and_line(self, samples_dir):
        """Should surface the path and line of the corrupted value."""
        path = str(samples_dir / "corrupted_zeros.txt")
        with pytest.raises(MalformedLine) as exc_info:
            read_zero_table(path)

        assert exc_info.value.line == 3
        assert path in str(exc_info.value)

    def test_read_with_bom(self, tmp_path):
        """Should ignore a UTF-8 byte order mark."""
        path = tmp_path / "bom.txt"
        path.write_bytes(b"\xef\xbb\xbf14.134725142\n21.022039639\n")
        assert len(read_zero_table(str(path))) == 2

    def test_label_overrides_path(self, tmp_path):
        """Should use the label as source in error messages."""
        path = tmp_path / "zeros.txt"
        path.write_text("14.134725142\nx\n")
        with pytest.raises(MalformedLine) as exc_info:
            read_zero_table(str(path), label="low")
        assert str(exc_info.value).startswith("low line 2")


class TestSerializeZeroTable:
    """Tests for serialize_zero_table and its header."""

    def test_serialize_writes_metadata_header(self):
        """Should write base, first index and source as comments."""
        table = parse_zero_table("0.5\n0.75\n", base_height="267653395647", first_index=7, source_label="hi")
        sink = io.StringIO()
        serialize_zero_table(table, sink)

        metadata = read_header_metadata(sink.getvalue())
        assert metadata == {"source": "hi", "base": "267653395647", "first_index": "7"}

    def test_reparse_keeps_offsets_exactly(self, first30_table):
        """Should reproduce the offsets bit for bit."""
        sink = io.StringIO()
        serialize_zero_table(first30_table, sink)
        again = reparse_serialized(sink.getvalue())

        assert again.offsets.tobytes() == first30_table.offsets.tobytes()
        assert again.first_index == 1
