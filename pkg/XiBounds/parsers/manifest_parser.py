import os
from typing import List

from ..errors import InvalidDecimal, ManifestError
from ..models import TableEntry
from ..utils import parse_decimal

MANIFEST_KEYS = ("path", "base", "first_index", "label")


def parse_table_manifest(text: str, manifest_dir: str = "", source: str = "") -> List[TableEntry]:
    """
    Parse a table manifest made of key=value lines.

    Entries are separated by blank lines. Example:

        path=zeros1.txt
        base=0
        first_index=1

        path=zeros3.txt
        base=267653395647
        first_index=1000000000001
        label=high

    Args:
        text: Manifest content
        manifest_dir: Directory used to resolve relative paths
        source: Manifest path, used in error messages

    Returns:
        List of TableEntry in file order
    """
    entries: List[TableEntry] = []
    current = {}
    current_line = None

    def flush():
        if not current:
            return
        if "path" not in current:
            raise ManifestError("entry has no path", source, current_line)
        path = current["path"]
        if manifest_dir and not os.path.isabs(path):
            path = os.path.join(manifest_dir, path)
        try:
            base = parse_decimal(current.get("base", "0"), "base")
        except InvalidDecimal as exc:
            raise ManifestError(str(exc), source, current_line)
        first_index_text = current.get("first_index", "1")
        if not first_index_text.isdigit():
            raise ManifestError(
                f"first_index must be a positive integer, got {first_index_text!r}",
                source,
                current_line,
            )
        entries.append(
            TableEntry(
                path=path,
                base_height=base,
                first_index=int(first_index_text),
                label=current.get("label", ""),
            )
        )
        current.clear()

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            flush()
            continue

        if "=" not in line:
            raise ManifestError(f"expected key=value, got {line!r}", source, line_number)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in MANIFEST_KEYS:
            raise ManifestError(f"unknown key {key!r}", source, line_number)
        if key in current:
            # A repeated key without a blank line starts a new entry
            flush()
        if not current:
            current_line = line_number
        current[key] = value

    flush()

    if not entries:
        raise ManifestError("manifest lists no tables", source)
    return entries


def read_table_manifest(manifest_path: str) -> List[TableEntry]:
    with open(manifest_path, "r", encoding="utf-8-sig") as f:
        content = f.read()
    return parse_table_manifest(
        content,
        manifest_dir=os.path.dirname(os.path.abspath(manifest_path)),
        source=manifest_path,
    )
