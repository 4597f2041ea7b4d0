import logging
import re
from typing import IO, Iterable, Union

import numpy as np

from ..errors import EmptyTable, InvalidTable, MalformedLine, NonMonotone
from ..models import GAMMA_1, ZeroTable
from ..utils import DecimalLike, parse_decimal

logger = logging.getLogger(__name__)

# A plain decimal number, optionally signed, optionally in exponent form
NUMBER_PATTERN = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")

# Tolerance for the first ordinate of a table starting at index 1
GAMMA_1_TOLERANCE = 1e-6


def parse_zero_table(
    text_stream: Union[IO[str], Iterable[str], str],
    base_height: DecimalLike = "0",
    first_index: int = 1,
    source_label: str = "",
) -> ZeroTable:
    """
    Parse an Odlyzko-style zero table: one ordinate (or offset) per line.

    Blank lines and lines starting with '#' are skipped. Offsets must be
    strictly increasing; duplicates count as a violation.

    Args:
        text_stream: Open text file, iterable of lines, or the whole text
        base_height: Exact decimal height added to every stored offset
        first_index: 1-based index of the first zero in the table
        source_label: Provenance used in error messages

    Returns:
        ZeroTable with offsets in file order
    """
    base = parse_decimal(base_height, "base_height")
    if base < 0:
        raise InvalidTable(f"base height must be nonnegative, got {base}", source_label)
    if first_index < 1:
        raise InvalidTable(f"first index must be >= 1, got {first_index}", source_label)

    if isinstance(text_stream, str):
        lines = text_stream.splitlines()
    else:
        lines = text_stream

    values = []
    previous = None
    for line_number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue

        if not NUMBER_PATTERN.match(line):
            raise MalformedLine(
                f"{line!r} is not a decimal number", source_label, line_number
            )
        value = float(line)

        if previous is not None and value <= previous:
            raise NonMonotone(
                f"offset {line} is not greater than the previous offset {previous!r}",
                source_label,
                line_number,
            )
        previous = value
        values.append(value)

    if not values:
        raise EmptyTable("no numeric lines found", source_label)

    offsets = np.array(values, dtype=np.float64)
    offsets.setflags(write=False)

    if base == 0 and offsets[0] <= 0:
        raise InvalidTable("offsets must be positive when the base height is 0", source_label)
    if first_index == 1 and abs(float(base) + offsets[0] - GAMMA_1) > GAMMA_1_TOLERANCE:
        raise InvalidTable(
            f"a table starting at index 1 must start at gamma_1 = {GAMMA_1}, "
            f"got {float(base) + offsets[0]!r}",
            source_label,
        )

    logger.info(
        "Loaded %d zeros from %s (base %s, first index %d)",
        len(offsets),
        source_label or "<stream>",
        base,
        first_index,
    )
    return ZeroTable(
        base_height=base,
        offsets=offsets,
        first_index=first_index,
        source_label=source_label,
    )


def read_zero_table(
    file_path: str,
    base_height: DecimalLike = "0",
    first_index: int = 1,
    label: str = None,
) -> ZeroTable:
    """Read a zero table file; see parse_zero_table."""
    source_label = label or file_path
    try:
        # Handles BOMs; latin-1 reads any byte if the file is not UTF-8
        with open(file_path, "r", encoding="utf-8-sig") as f:
            content = f.read()
    except UnicodeDecodeError:
        with open(file_path, "r", encoding="latin-1") as f:
            content = f.read()

    return parse_zero_table(content, base_height, first_index, source_label)


def serialize_zero_table(table: ZeroTable, sink: IO[str]) -> None:
    """
    Write a table so that parse_zero_table reads back identical offsets.

    Base and first index go into '#' comment lines; they are metadata only,
    the reader still takes them out-of-band.
    """
    sink.write(f"# source={table.source_label}\n")
    sink.write(f"# base={table.base_height}\n")
    sink.write(f"# first_index={table.first_index}\n")
    for offset in table.offsets:
        sink.write(f"{float(offset)!r}\n")


def read_header_metadata(text: str) -> dict:
    """Collect `# key=value` comment lines written by serialize_zero_table."""
    metadata = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line.startswith("#"):
            continue
        body = line[1:].strip()
        if "=" in body:
            key, value = body.split("=", 1)
            metadata[key.strip()] = value.strip()
    return metadata


def reparse_serialized(text: str) -> ZeroTable:
    """Parse text written by serialize_zero_table using its own header."""
    metadata = read_header_metadata(text)
    return parse_zero_table(
        text,
        base_height=metadata.get("base", "0"),
        first_index=int(metadata.get("first_index", "1")),
        source_label=metadata.get("source", ""),
    )
