"""Deterministic JSON, CSV and SVG emission.

Floats are written with 17 significant digits and dict key order is kept as
given, so identical inputs produce byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
import math
from xml.sax.saxutils import escape

from .cliffor import format_number
from .quads import DISTANCE_HEIGHT, PhaseQuad

__all__ = ["fmt", "to_json", "to_csv", "quads_svg"]


def fmt(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot emit non-finite number {x!r}")
    return format_number(float(x))


def _json_value(value, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if value is None or isinstance(value, (bool, str)):
        return json.dumps(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return fmt(value)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_json_value(v, indent, level + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
            return "[" + ", ".join(_json_value(v, indent, level) for v in value) + "]"
        items = [pad + _json_value(v, indent, level + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot emit {type(value).__name__}")


def to_json(value, indent: int = 2) -> str:
    return _json_value(value, indent, 0) + "\n"


def to_csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


_AXIS_LABELS = {
    DISTANCE_HEIGHT: ("e3", "e1"),
}
_DEFAULT_LABELS = ("e1", "i e2")


def quads_svg(obj: PhaseQuad, img: PhaseQuad, size: int = 400, margin: int = 40) -> str:
    """Render an object quad and its image as two polygons.

    World coordinates are drawn inside a group whose transform flips the
    y-axis (y up) and applies a uniform scale, declared in ``data-scale``.
    """
    pts_obj = obj.plane_coords()
    pts_img = img.plane_coords()
    xs = [p[0] for p in pts_obj + pts_img] + [0.0]
    ys = [p[1] for p in pts_obj + pts_img] + [0.0]
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    span = max(xmax - xmin, ymax - ymin) or 1.0
    scale = (size - 2 * margin) / span
    # translate so that (xmin, ymax) lands at (margin, margin)
    tx = margin - scale * xmin
    ty = margin + scale * ymax
    hlabel, vlabel = _AXIS_LABELS.get(obj.space, _DEFAULT_LABELS)

    def poly(points):
        return " ".join(f"{fmt(x)},{fmt(y)}" for x, y in points)

    stroke = fmt(1.5 / scale)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f"  <desc>{escape(obj.space)} phase space: object rectangle and image parallelogram</desc>",
        f'  <g id="world" transform="translate({fmt(tx)},{fmt(ty)}) scale({fmt(scale)},{fmt(-scale)})" '
        f'data-scale="{fmt(scale)}">',
        f'    <line class="axis" x1="{fmt(xmin)}" y1="0" x2="{fmt(xmax)}" y2="0" stroke="gray" stroke-width="{stroke}"/>',
        f'    <line class="axis" x1="0" y1="{fmt(ymin)}" x2="0" y2="{fmt(ymax)}" stroke="gray" stroke-width="{stroke}"/>',
        f'    <polygon id="object" points="{poly(pts_obj)}" fill="none" stroke="blue" stroke-width="{stroke}"/>',
        f'    <polygon id="image" points="{poly(pts_img)}" fill="none" stroke="red" stroke-width="{stroke}"/>',
        "  </g>",
        f'  <text x="{size - margin + 5}" y="{fmt(ty)}" font-size="12">{escape(hlabel)}</text>',
        f'  <text x="{fmt(tx)}" y="{margin - 10}" font-size="12">{escape(vlabel)}</text>',
        "</svg>",
    ]
    return "\n".join(lines) + "\n"
