"""SVG 1.1 figures of boundary traces."""
from pathlib import Path
from typing import List, Sequence, Union

import numpy as np

from src import config
from src.geometry.boundary import BoundaryTrace
from src.observability.tracer import trace_function

_PALETTE = ["#1f4e79", "#b03a2e", "#1e8449", "#7d3c98", "#b9770e", "#117a65"]


def _fmt(x: float, digits: int) -> str:
    text = f"{x:.{digits}f}"
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def _points(segment: np.ndarray, digits: int) -> str:
    # SVG y grows downward; flip so the upper half-plane is drawn on top.
    return " ".join(f"{_fmt(w.real, digits)},{_fmt(-w.imag, digits)}" for w in segment)


@trace_function("render_svg")
def render_svg(
    traces: Sequence[BoundaryTrace],
    path: Union[str, Path],
    clip_radius: float = config.GEOMETRY_DEFAULTS["svg_clip_radius"],
    margin: float = config.GEOMETRY_DEFAULTS["svg_margin"],
    digits: int = config.GEOMETRY_DEFAULTS["float_digits"],
) -> Path:
    """
    Write one SVG with a polyline per trace segment.

    Poles and samples beyond clip_radius break a trace into several
    polylines. The viewBox is the extent of the drawn points plus
    `margin` of the larger side on every edge.

    Args:
        traces: Nonempty list of traces
        path: Output file
        clip_radius: Samples with |w| above this are not drawn
        margin: Relative margin around the data extent
        digits: Decimal places written for coordinates

    Returns:
        The written path
    """
    if not traces:
        raise ValueError("render_svg needs at least one trace")

    drawn: List[List[np.ndarray]] = [trace.segments(clip_radius) for trace in traces]
    points = [seg for segments in drawn for seg in segments]
    if not points:
        raise ValueError("no drawable samples inside the clip radius")

    allw = np.concatenate(points)
    xmin, xmax = float(allw.real.min()), float(allw.real.max())
    ymin, ymax = float(-allw.imag.max()), float(-allw.imag.min())
    pad = margin * max(xmax - xmin, ymax - ymin, 1e-9)
    x0, y0 = xmin - pad, ymin - pad
    width, height = xmax - xmin + 2 * pad, ymax - ymin + 2 * pad
    stroke = max(width, height) / 400.0

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_fmt(x0, digits)} {_fmt(y0, digits)} {_fmt(width, digits)} {_fmt(height, digits)}">',
    ]
    for index, (trace, segments) in enumerate(zip(traces, drawn)):
        color = _PALETTE[index % len(_PALETTE)]
        lines.append(f'  <g id="{trace.label or f"trace{index}"}" fill="none" stroke="{color}" '
                     f'stroke-width="{_fmt(stroke, digits)}">')
        for segment in segments:
            lines.append(f'    <polyline points="{_points(segment, digits)}"/>')
        lines.append("  </g>")
    lines.append("</svg>")

    out = Path(path)
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return out
