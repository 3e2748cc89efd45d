"""Point snapshots as JSON, CSV and (in the plane) SVG."""
from __future__ import annotations

import csv
import io
import json
import re
from fractions import Fraction

from .construction import GenerationState, sort_points
from .geometry import format_point

PALETTE = ["#000000", "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


_FLAT_LIST = re.compile(r"\[\s+([^\[\]{}]*?)\s+\]")


def dumps(obj) -> str:
    """Indented JSON with innermost scalar lists kept on one line."""
    text = json.dumps(obj, indent=2, ensure_ascii=False)
    text = _FLAT_LIST.sub(lambda m: "[" + re.sub(r",\s+", ", ", m.group(1)) + "]", text)
    return text + "\n"


def snapshot_json(state: GenerationState) -> str:
    return dumps(state.to_json())


def snapshot_csv(state: GenerationState) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["depth"] + [f"x{i}" for i in range(state.dimension)])
    for k in range(state.depth + 1):
        for p in sort_points(state.new_at_depth(k)):
            w.writerow([k] + format_point(p))
    return buf.getvalue()


def point_cloud_json(state: GenerationState) -> str:
    """Renderer-agnostic float coordinates, for 3-D viewers."""
    pts = [
        {"depth": state.birth[p], "coords": [float(c) for c in p]}
        for p in sort_points(state.points)
    ]
    return dumps({"dimension": state.dimension, "points": pts})


def _viewport(state: GenerationState):
    if state.config.retention_box is not None:
        lo, hi = state.config.retention_box
    else:
        pts = list(state.points)
        lo = tuple(min(p[i] for p in pts) for i in range(2))
        hi = tuple(max(p[i] for p in pts) for i in range(2))
    pad = Fraction(1, 2)
    return lo[0] - pad, lo[1] - pad, hi[0] + pad, hi[1] + pad


def snapshot_svg(state: GenerationState, size: int = 480, lines: bool = True, line_depth: int = 3) -> str:
    """Points coloured by depth in the retention box (y axis pointing up).

    With ``lines`` the two construction segments of each point born at depth
    ``<= line_depth`` are drawn from its witness.
    """
    if state.dimension != 2:
        raise ValueError("SVG export is only available in dimension 2")
    x0, y0, x1, y1 = _viewport(state)
    w, h = x1 - x0, y1 - y0
    scale = Fraction(size) / max(w, h)

    def sx(x):
        return float((x - x0) * scale)

    def sy(y):
        return float((y1 - y) * scale)

    W, H = float(w * scale), float(h * scale)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W:.1f}" height="{H:.1f}" '
        f'viewBox="0 0 {W:.1f} {H:.1f}">',
        f'<rect width="{W:.1f}" height="{H:.1f}" fill="white"/>',
    ]
    visible = [p for p in sort_points(state.points) if x0 <= p[0] <= x1 and y0 <= p[1] <= y1]
    if lines:
        out.append('<g stroke="#999999" stroke-width="0.8">')
        for z in visible:
            d = state.birth[z]
            if d == 0 or d > line_depth or z not in state.witnesses:
                continue
            pb, _, pa, _ = state.witnesses[z]
            for src in (pb, pa):
                out.append(
                    f'<line x1="{sx(src[0]):.2f}" y1="{sy(src[1]):.2f}" '
                    f'x2="{sx(z[0]):.2f}" y2="{sy(z[1]):.2f}"/>'
                )
        out.append("</g>")
    for p in visible:
        d = state.birth[p]
        color = PALETTE[d % len(PALETTE)]
        label = ", ".join(format_point(p))
        out.append(
            f'<circle cx="{sx(p[0]):.2f}" cy="{sy(p[1]):.2f}" r="4" fill="{color}">'
            f"<title>({label}) depth {d}</title></circle>"
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
