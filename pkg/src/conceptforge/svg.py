"""Static SVG rendering of a model's stored layout.

Visual vocabulary: concepts are ellipses, variables and constants are
rectangles, predicates are rounded rectangles; arcs are boundary-to-boundary
lines labeled at their midpoint with "t" or the role's short denotation.
Output is fully deterministic for identical models.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from . import errors
from .core import Geometry, Model

MARGIN = 20
PREDICATE_CORNER_RADIUS = 8

_STYLE = (
    "rect, ellipse { fill: white; stroke: black; stroke-width: 1.5; } "
    "line { stroke: black; stroke-width: 1.2; } "
    "text { font-family: sans-serif; font-size: 13px; text-anchor: middle; }"
)


def _fmt(x: float) -> str:
    # Stable short float rendering; integral values print without a dot.
    if float(x).is_integer():
        return str(int(x))
    return f"{x:.1f}"


def _center(g: Geometry) -> tuple[float, float]:
    return g.left + g.width / 2, g.top + g.height / 2


def _boundary_point(g: Geometry, toward: tuple[float, float]) -> tuple[float, float]:
    """Where the segment from this box's center toward ``toward`` exits the
    bounding box (ellipses are clipped by their box too)."""
    cx, cy = _center(g)
    dx, dy = toward[0] - cx, toward[1] - cy
    if dx == 0 and dy == 0:
        return cx, cy
    tx = (g.width / 2) / abs(dx) if dx else float("inf")
    ty = (g.height / 2) / abs(dy) if dy else float("inf")
    t = min(tx, ty, 1.0)
    return cx + t * dx, cy + t * dy


def render_svg(m: Model) -> str:
    """Render the model to SVG 1.1 text; every node needs geometry."""
    nodes = sorted(m.nodes(), key=lambda n: n.id)
    for n in nodes:
        if n.id not in m.geometry:
            raise errors.MissingGeometry(n.id)
    geoms = [m.geometry[n.id] for n in nodes]

    if geoms:
        min_x = min(g.left for g in geoms) - MARGIN
        min_y = min(g.top for g in geoms) - MARGIN
        max_x = max(g.left + g.width for g in geoms) + MARGIN
        max_y = max(g.top + g.height for g in geoms) + MARGIN
    else:
        min_x = min_y = 0
        max_x = max_y = 2 * MARGIN
    width, height = max_x - min_x, max_y - min_y

    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_fmt(min_x)} {_fmt(min_y)} {_fmt(width)} {_fmt(height)}" '
        f'width="{_fmt(width)}" height="{_fmt(height)}">',
        f"  <style>{_STYLE}</style>",
    ]

    concept_ids = {c.id for c in m.concepts}
    predicate_ids = {p.id for p in m.predicates}
    variable_ids = {v.id for v in m.variables}

    for n in nodes:
        g = m.geometry[n.id]
        cx, cy = _center(g)
        if n.id in concept_ids:
            lines.append(
                f'  <ellipse class="concept" cx="{_fmt(cx)}" cy="{_fmt(cy)}" '
                f'rx="{_fmt(g.width / 2)}" ry="{_fmt(g.height / 2)}"/>')
        elif n.id in predicate_ids:
            lines.append(
                f'  <rect class="predicate" x="{g.left}" y="{g.top}" '
                f'width="{g.width}" height="{g.height}" '
                f'rx="{PREDICATE_CORNER_RADIUS}"/>')
        else:
            cls = "variable" if n.id in variable_ids else "constant"
            lines.append(
                f'  <rect class="{cls}" x="{g.left}" y="{g.top}" '
                f'width="{g.width}" height="{g.height}"/>')
        lines.append(
            f'  <text x="{_fmt(cx)}" y="{_fmt(cy + 4)}">{escape(n.name)}</text>')

    node_geometry = {n.id: m.geometry[n.id] for n in nodes}
    for a in sorted(m.arcs, key=lambda a: a.id):
        sg = node_geometry.get(a.source)
        tg = node_geometry.get(a.target)
        if sg is None or tg is None:
            # Dangling arcs are a validation problem, not a rendering one.
            continue
        x1, y1 = _boundary_point(sg, _center(tg))
        x2, y2 = _boundary_point(tg, _center(sg))
        label = "t" if a.is_type_arc else a.role.short
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        lines.append(
            f'  <line x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
            f'x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>')
        lines.append(
            f'  <text class="arc-label" x="{_fmt(mx)}" '
            f'y="{_fmt(my - 4)}">{label}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
