import importlib

import pytest
from unittest.mock import patch

from XiBounds import XiBounds
from XiBounds.errors import MalformedLine
from XiBounds.models import EpsilonVariant

SAMPLE_FILE_NAME = "zeros_first30"

# The package re-exports the class under the module's name
facade_module = importlib.import_module("XiBounds.XiBounds")


class TestXiBoundsDetect:
    """Tests for XiBounds.detect() static method using sample files."""

    def test_detect_zero_table(self, samples_dir):
        """Should return True for a zero table."""
        content = (samples_dir / f"{SAMPLE_FILE_NAME}.txt").read_text(encoding="utf-8")
        assert XiBounds.detect(content) is True

    def test_detect_text_file(self, samples_dir):
        """Should return False for a non-table file."""
        content = (samples_dir / "text.txt").read_text()
        assert XiBounds.detect(content) is False

    def test_detect_comment_only(self):
        """Should return False when there is no data line."""
        assert XiBounds.detect("# header\n\n") is False

    def test_detect_corrupted_first_line(self):
        """Should only look at the first data line."""
        assert XiBounds.detect("# header\n14.134725142\nabc\n") is True
        assert XiBounds.detect("14.13472514O\n") is False


class TestXiBoundsBeforeRead:
    """Tests for XiBounds methods called before read()."""

    def test_get_table_before_read_raises_error(self):
        """Should raise ValueError when get_table called before read."""
        reader = XiBounds()

        with pytest.raises(ValueError) as exc_info:
            reader.get_table()

        assert "No zero tables found" in str(exc_info.value)
        assert "read a table first" in str(exc_info.value)

    def test_get_labels_before_read_raises_error(self):
        """Should raise ValueError when get_labels called before read."""
        with pytest.raises(ValueError):
            XiBounds().get_labels()

    def test_properties_before_read(self):
        """Should have no tables and default parameters before read."""
        reader = XiBounds()

        assert reader.tables is None
        assert reader.entries is None
        assert reader.params.c == 1.0
        assert reader.thresholds == {}


class TestXiBoundsRead:
    """Tests for XiBounds.read() and read_manifest() with sample files."""

    def test_read_registers_label(self, samples_dir):
        """Should register the table under its label."""
        reader = XiBounds()
        table = reader.read(str(samples_dir / f"{SAMPLE_FILE_NAME}.txt"), label="first30")

        assert len(table) == 30
        assert reader.get_labels() == ["first30"]
        assert reader.get_table("first30") is table
        assert reader.get_table() is table

    def test_read_defaults_label_to_path(self, samples_dir):
        """Should use the path when no label is given."""
        path = str(samples_dir / f"{SAMPLE_FILE_NAME}.txt")
        reader = XiBounds()
        reader.read(path)
        assert reader.get_labels() == [path]

    def test_read_manifest(self, samples_dir):
        """Should load every manifest entry."""
        reader = XiBounds()
        tables = reader.read_manifest(str(samples_dir / "tables.manifest"))

        assert [table.source_label for table in tables] == ["first30"]
        assert reader.entries[0].label == "first30"

    def test_read_corrupted_manifest(self, samples_dir):
        """Should propagate MalformedLine from a manifest table."""
        with pytest.raises(MalformedLine):
            XiBounds().read_manifest(str(samples_dir / "corrupted.manifest"))

    def test_unknown_label(self, samples_dir):
        """Should raise ValueError for a label that was never read."""
        reader = XiBounds()
        reader.read_manifest(str(samples_dir / "tables.manifest"))

        with pytest.raises(ValueError) as exc_info:
            reader.get_table("high")
        assert "Table high not found" in str(exc_info.value)

    def test_tables_are_read_only(self, samples_dir):
        """Should not allow assigning tables."""
        reader = XiBounds()
        with pytest.raises(AttributeError):
            reader.tables = {}


class TestXiBoundsQueries:
    """Tests for counting, sums and thresholds through the facade."""

    @pytest.fixture
    def reader(self, samples_dir):
        reader = XiBounds()
        reader.read_manifest(str(samples_dir / "tables.manifest"))
        return reader

    def test_count_up_to(self, reader):
        """Should count 29 zeros up to 100."""
        assert reader.count_up_to("100") == 29

    def test_sum_at_is_positive_right_of_line(self, reader):
        """Should give a positive sum for sigma > 1/2."""
        assert reader.sum_at("0.75", "50", range(1, 11)) > 0

    def test_set_c(self, reader):
        """Should replace c in the parameters."""
        reader.set_c("0.4")
        assert reader.params.c == 0.4

    def test_set_c_out_of_range(self, reader):
        """Should reject c outside (0, 1]."""
        with pytest.raises(ValueError):
            reader.set_c("1.5")

    @patch.object(facade_module, "find_threshold")
    def test_threshold_is_cached(self, mock_find, reader):
        """Should call the root finder once per variant."""
        mock_find.return_value = 3.11e10

        assert reader.get_threshold() == 3.11e10
        assert reader.get_threshold("lemma_consistent") == 3.11e10
        assert mock_find.call_count == 1
        assert reader.thresholds == {EpsilonVariant.LEMMA_CONSISTENT: 3.11e10}
