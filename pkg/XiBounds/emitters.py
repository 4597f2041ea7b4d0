"""
CSV and SVG output for region masks.

Sinks are either a path or an open text stream. Output is byte-deterministic
for a fixed grid.
"""

import csv
import io
import logging
import math
import xml.etree.ElementTree as ET
from contextlib import contextmanager
from typing import IO, Iterator, Tuple, Union

import numpy as np

from .errors import SinkWrite
from .models import RegionGrid, SvgStyle

logger = logging.getLogger(__name__)

CSV_HEADER = ["sigma", "t_offset", "in_region"]
SVG_NAMESPACE = "http://www.w3.org/2000/svg"
BOUNDARY_SAMPLES = 200

Sink = Union[str, IO[str]]


@contextmanager
def _open_sink(sink: Sink) -> Iterator[IO[str]]:
    try:
        if isinstance(sink, str):
            with open(sink, "w", encoding="utf-8", newline="") as f:
                yield f
        else:
            yield sink
    except OSError as exc:
        raise SinkWrite(f"cannot write to {getattr(sink, 'name', sink)!r}: {exc}") from exc


# ==================== CSV ====================


def emit_csv(grid: RegionGrid, sink: Sink) -> None:
    """One row per lattice point, t-major: sigma,t_offset,in_region."""
    sigmas = grid.sigmas
    t_offsets = grid.t_offsets
    with _open_sink(sink) as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for i, t in enumerate(t_offsets):
            for j, sigma in enumerate(sigmas):
                writer.writerow([repr(float(sigma)), repr(float(t)), int(grid.mask[i, j])])
    logger.debug("Wrote %d CSV rows", grid.n_t * grid.n_sigma)


def read_region_csv(stream: Union[str, IO[str]]) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Read emit_csv output back into (sigmas, t_offsets, mask)."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    reader = csv.reader(stream)
    header = next(reader, None)
    if header != CSV_HEADER:
        raise ValueError(f"expected header {CSV_HEADER}, got {header}")

    sigmas, t_offsets, flags = [], [], []
    for row in reader:
        if not row:
            continue
        sigma, t, flag = float(row[0]), float(row[1]), row[2] == "1"
        if not t_offsets or t != t_offsets[-1]:
            t_offsets.append(t)
        if len(t_offsets) == 1:
            sigmas.append(sigma)
        flags.append(flag)

    mask = np.array(flags, dtype=bool).reshape(len(t_offsets), len(sigmas))
    return np.array(sigmas), np.array(t_offsets), mask


# ==================== SVG ====================


def _fmt(value: float) -> str:
    return f"{value:.3f}"


def _t_label(grid: RegionGrid, t_offset: float) -> str:
    if grid.t_base:
        return f"{grid.t_base} + {t_offset:.4g}"
    return f"{t_offset:.4g}"


def emit_svg(grid: RegionGrid, sink: Sink, style: SvgStyle = SvgStyle()) -> None:
    """
    Draw the region: one gray cell per true lattice point, sigma on the x axis,
    t on the y axis, and the strip edge sigma = 1/2 + 1/sqrt(log t) dashed where
    it crosses the plot.
    """
    plot_w = style.width - 2 * style.margin
    plot_h = style.height - 2 * style.margin
    cell_w = plot_w / grid.n_sigma
    cell_h = plot_h / grid.n_t

    svg = ET.Element(
        "svg",
        {
            "xmlns": SVG_NAMESPACE,
            "version": "1.1",
            "width": str(style.width),
            "height": str(style.height),
            "viewBox": f"0 0 {style.width} {style.height}",
        },
    )

    cells = ET.SubElement(svg, "g", {"fill": style.fill, "stroke": "none"})
    for i, j in zip(*np.nonzero(grid.mask)):
        ET.SubElement(
            cells,
            "rect",
            {
                "x": _fmt(style.margin + j * cell_w),
                "y": _fmt(style.margin + (grid.n_t - 1 - i) * cell_h),
                "width": _fmt(cell_w),
                "height": _fmt(cell_h),
            },
        )

    left, bottom = style.margin, style.height - style.margin
    right, top = style.width - style.margin, style.margin
    axes = ET.SubElement(svg, "g", {"stroke": "#000000", "stroke-width": "1"})
    ET.SubElement(axes, "line", {"x1": _fmt(left), "y1": _fmt(bottom), "x2": _fmt(right), "y2": _fmt(bottom)})
    ET.SubElement(axes, "line", {"x1": _fmt(left), "y1": _fmt(bottom), "x2": _fmt(left), "y2": _fmt(top)})

    labels = ET.SubElement(svg, "g", {"font-family": "serif", "font-size": "12"})
    for x, y, anchor, text in [
        ((left + right) / 2, bottom + 32, "middle", "σ"),
        (left - 32, (top + bottom) / 2, "middle", "t"),
        (left, bottom + 16, "start", f"{grid.sigma_min:.4g}"),
        (right, bottom + 16, "end", f"{grid.sigma_max:.4g}"),
        (left - 4, bottom, "end", _t_label(grid, grid.t_min)),
        (left - 4, top + 12, "end", _t_label(grid, grid.t_max)),
    ]:
        node = ET.SubElement(labels, "text", {"x": _fmt(x), "y": _fmt(y), "text-anchor": anchor})
        node.text = text

    boundary = _boundary_points(grid, left, right, top, bottom)
    if len(boundary) >= 2:
        ET.SubElement(
            svg,
            "polyline",
            {
                "points": " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in boundary),
                "fill": "none",
                "stroke": style.boundary_stroke,
                "stroke-dasharray": "6,4",
            },
        )

    content = ET.tostring(svg, encoding="unicode")
    with _open_sink(sink) as f:
        f.write('<?xml version="1.0" encoding="UTF-8"?>\n')
        f.write(content)
        f.write("\n")
    logger.debug("Wrote SVG with %d region cells", int(grid.mask.sum()))


def _boundary_points(grid: RegionGrid, left, right, top, bottom):
    points = []
    sigma_span = grid.sigma_max - grid.sigma_min
    t_span = grid.t_max - grid.t_min
    base = float(grid.t_base)
    for t_offset in np.linspace(grid.t_min, grid.t_max, BOUNDARY_SAMPLES):
        t = base + t_offset
        if t <= math.e:
            continue
        edge = 0.5 + 1.0 / math.sqrt(math.log(t))
        if not grid.sigma_min <= edge <= grid.sigma_max:
            continue
        x = left + ((edge - grid.sigma_min) / sigma_span if sigma_span else 0.0) * (right - left)
        y = bottom - ((t_offset - grid.t_min) / t_span if t_span else 0.0) * (bottom - top)
        points.append((x, y))
    return points
