"""Deterministic SVG rendering of a two-criteria decision problem: sample
points, importance/acceptance wedges, and quantile regions.

The output is plain string assembly with fixed float formatting, so repeated
renders of the same inputs are byte-identical.
"""

from __future__ import annotations

from .cones import ConvexCone
from .quantiles import QuantileRegion2D, _clip_halfspaces

_WIDTH = 640
_HEIGHT = 640
_MARGIN = 56

_STYLE = {
    "acceptance": 'fill="#fff3bf" fill-opacity="0.55" stroke="#e6b800" stroke-width="1"',
    "importance": 'fill="#ffd43b" fill-opacity="0.75" stroke="#b38600" stroke-width="1"',
    "lower": 'fill="#2f9e44" fill-opacity="0.30" stroke="#2f9e44" stroke-width="1.5"',
    "upper": 'fill="#e03131" fill-opacity="0.25" stroke="#e03131" stroke-width="1.5"',
}


def _fmt(x: float) -> str:
    return f"{x:.3f}"


class _Projector:
    def __init__(self, bbox):
        self.x0, self.y0, self.x1, self.y1 = bbox
        self.sx = (_WIDTH - 2 * _MARGIN) / (self.x1 - self.x0)
        self.sy = (_HEIGHT - 2 * _MARGIN) / (self.y1 - self.y0)

    def __call__(self, pt):
        px = _MARGIN + (pt[0] - self.x0) * self.sx
        py = _HEIGHT - _MARGIN - (pt[1] - self.y0) * self.sy
        return px, py


def _polygon_tag(points, style: str, project) -> str:
    if not points:
        return ""
    coords = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in (project(p) for p in points))
    return f'<polygon points="{coords}" {style} />'


def cone_wedge(cone: ConvexCone, bbox) -> tuple[tuple[float, float], ...]:
    """Cone clipped to the bounding box, as a polygon in data coordinates."""
    constraints = [(normal, 0.0, True) for normal in cone.facet_normals]
    return _clip_halfspaces(tuple(float(b) for b in bbox), constraints, 1e-9)


def render_svg(
    points: list[tuple[str, tuple[float, float]]],
    importance: ConvexCone,
    acceptance: ConvexCone,
    region: QuantileRegion2D | None,
    bbox,
    title: str = "",
) -> str:
    """Full figure: acceptance wedge under importance wedge, quantile regions
    on top, then labelled sample points."""
    project = _Projector(bbox)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect x="0" y="0" width="{_WIDTH}" height="{_HEIGHT}" fill="white" />',
    ]
    if title:
        parts.append(
            f'<text x="{_WIDTH // 2}" y="28" text-anchor="middle" '
            f'font-family="sans-serif" font-size="15">{title}</text>'
        )

    parts.append(_polygon_tag(cone_wedge(acceptance, bbox), _STYLE["acceptance"], project))
    parts.append(_polygon_tag(cone_wedge(importance, bbox), _STYLE["importance"], project))
    if region is not None:
        parts.append(_polygon_tag(region.lower_polygon, _STYLE["lower"], project))
        parts.append(_polygon_tag(region.upper_polygon, _STYLE["upper"], project))

    # Axes through the data origin when visible.
    x0, y0, x1, y1 = bbox
    if x0 <= 0 <= x1:
        a, b = project((0, y0)), project((0, y1))
        parts.append(
            f'<line x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" x2="{_fmt(b[0])}" y2="{_fmt(b[1])}" '
            'stroke="#868e96" stroke-width="1" />'
        )
    if y0 <= 0 <= y1:
        a, b = project((x0, 0)), project((x1, 0))
        parts.append(
            f'<line x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" x2="{_fmt(b[0])}" y2="{_fmt(b[1])}" '
            'stroke="#868e96" stroke-width="1" />'
        )

    for label, pt in points:
        px, py = project(pt)
        parts.append(
            f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="4" fill="#1864ab" />'
        )
        parts.append(
            f'<text x="{_fmt(px + 7)}" y="{_fmt(py - 7)}" font-family="sans-serif" '
            f'font-size="12" fill="#1864ab">{label}</text>'
        )

    parts.append("</svg>")
    return "\n".join(part for part in parts if part) + "\n"
