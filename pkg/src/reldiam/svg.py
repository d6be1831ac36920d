"""SVG rendering of bodies, partitions and subdivisions."""

from __future__ import annotations

import math
from xml.sax.saxutils import quoteattr

from .body import ConvexBody
from .geometry import Arc
from .subdivision import KPartition, KSubdivision, regions_of_partition

VIEW = 800.0
MARGIN = 0.05

PALETTE = ["#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"]


class _Frame:
    """Maps body coordinates (y up) to the viewBox (y down)."""

    def __init__(self, body: ConvexBody):
        x0, y0, x1, y1 = body.bbox()
        span = max(x1 - x0, y1 - y0)
        self.scale = VIEW * (1 - 2 * MARGIN) / span
        self.cx, self.cy = 0.5 * (x0 + x1), 0.5 * (y0 + y1)

    def __call__(self, p) -> tuple[float, float]:
        return (VIEW / 2 + self.scale * (p[0] - self.cx), VIEW / 2 - self.scale * (p[1] - self.cy))


def _fmt(v: float) -> str:
    return f"{v:.4f}".rstrip("0").rstrip(".")


def loop_path(oriented, frame: _Frame) -> str:
    p0 = oriented[0][0].a if oriented[0][1] else oriented[0][0].b
    x, y = frame(p0)
    parts = [f"M {_fmt(x)} {_fmt(y)}"]
    for piece, fwd in oriented:
        end = piece.b if fwd else piece.a
        ex, ey = frame(end)
        if isinstance(piece, Arc):
            r = piece.radius * frame.scale
            large = 1 if piece.sweep > math.pi else 0
            # ccw in y-up space is clockwise on screen: sweep flag 0
            sweep = 0 if fwd else 1
            parts.append(f"A {_fmt(r)} {_fmt(r)} 0 {large} {sweep} {_fmt(ex)} {_fmt(ey)}")
        else:
            parts.append(f"L {_fmt(ex)} {_fmt(ey)}")
    parts.append("Z")
    return " ".join(parts)


def render(obj, title: str | None = None) -> str:
    """SVG 1.1 document; one path element per region (or one for a bare body)."""
    if isinstance(obj, KPartition):
        obj = regions_of_partition(obj)
    if isinstance(obj, KSubdivision):
        body = obj.body
        loops = [obj.oriented(i) for i in range(obj.k)]
    elif isinstance(obj, ConvexBody):
        body = obj
        loops = [[(p, True) for p in body.pieces]]
    else:
        raise TypeError(f"cannot render {type(obj).__name__}")
    frame = _Frame(body)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 {int(VIEW)} {int(VIEW)}" width="{int(VIEW)}" height="{int(VIEW)}">',
    ]
    if title:
        lines.append(f"<title>{title.replace('&', '&amp;').replace('<', '&lt;')}</title>")
    for i, ori in enumerate(loops):
        fill = PALETTE[i % len(PALETTE)]
        lines.append(f'<path id="region-{i}" d={quoteattr(loop_path(ori, frame))} fill="{fill}" stroke="black" stroke-width="1.5" stroke-linejoin="round"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_svg(obj, path, title: str | None = None) -> None:
    with open(path, "w") as fh:
        fh.write(render(obj, title))
