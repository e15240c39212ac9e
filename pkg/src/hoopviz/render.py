"""Deterministic SVG output for hoop and linear geometries.

Rendering is a pure function of its inputs: element order is fixed
(boundaries, guidelines, spokes/dividers, colored runs by set then run,
highlight halo, labels), coordinates are formatted to two decimals, and
no ids, timestamps or randomness are involved, so equal inputs give
byte-equal documents.
"""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

from .errors import PaletteExhaustedError
from .geometry import HitTarget, HoopGeometry, LinearGeometry, point_at

DIM_OPACITY = "0.25"
_HALO_COLOR = "#f4b942"
_GUIDELINE_COLOR = "#c8c8c8"
_DIVIDER_COLOR = "#999999"
_BOUNDARY_COLOR = "#000000"

DIM_OTHERS = "dim-others"
OUTLINE = "outline"


@dataclass(frozen=True)
class HighlightState:
    """A hit target plus how to emphasize it; emphasis is None iff no target."""

    target: HitTarget
    emphasis: str | None = None

    def __post_init__(self) -> None:
        if self.target.variant == "none" and self.emphasis is not None:
            raise ValueError("emphasis without a target")
        if self.target.variant != "none" and self.emphasis not in (DIM_OTHERS, OUTLINE):
            raise ValueError(f"unknown emphasis {self.emphasis!r}")

    @classmethod
    def none(cls) -> HighlightState:
        return cls(HitTarget.nothing(), None)


def color_for_set(alphabetical_position: int, palette: tuple[str, ...]) -> str:
    """Color for a set by its alphabetical position; stable across reorders."""
    if alphabetical_position >= len(palette):
        raise PaletteExhaustedError(
            f"set position {alphabetical_position} exceeds palette of {len(palette)} colors"
        )
    return palette[alphabetical_position]


def _f(value: float) -> str:
    return f"{value:.2f}"


def render_svg(
    geometry: HoopGeometry | LinearGeometry, highlight: HighlightState | None = None
) -> str:
    """Render a resolved geometry to an SVG document string."""
    highlight = highlight or HighlightState.none()
    if geometry.kind == "hoop":
        return _render_hoop(geometry, highlight)
    if geometry.kind == "linear":
        return _render_linear(geometry, highlight)
    raise TypeError(f"cannot render geometry of kind {geometry.kind!r}")


def _dimmed_sets(geometry, highlight: HighlightState) -> set[int]:
    """Set indices to draw at reduced opacity under dim-others."""
    if highlight.emphasis != DIM_OTHERS:
        return set()
    target = highlight.target
    all_sets = set(geometry.set_order)
    if target.variant == "set":
        return all_sets - {target.index}
    if target.variant == "zone":
        return all_sets - set(geometry.zone_members[target.index])
    return set()


def _run_attrs(set_index: int, color: str, width: float, dimmed: set[int]) -> str:
    attrs = (
        f'class="run" data-set="{set_index}" fill="none" '
        f'stroke="{color}" stroke-width="{_f(width)}"'
    )
    if set_index in dimmed:
        attrs += f' opacity="{DIM_OPACITY}"'
    return attrs


def _render_hoop(g: HoopGeometry, highlight: HighlightState) -> str:
    cx, cy = g.center
    colors = {e.set_index: e.color for e in g.legend}
    dimmed = _dimmed_sets(g, highlight)
    out = []
    out.append(
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_f(g.bbox.x)} {_f(g.bbox.y)} {_f(g.bbox.width)} {_f(g.bbox.height)}" '
        f'width="{_f(g.bbox.width)}" height="{_f(g.bbox.height)}">'
    )

    out.append('<g class="boundaries">')
    for radius in (g.outer_radius, g.inner_radius):
        out.append(
            f'<circle class="boundary" cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(radius)}" '
            f'fill="none" stroke="{_BOUNDARY_COLOR}" stroke-width="{_f(g.guideline_width)}"/>'
        )
    out.append("</g>")

    out.append('<g class="guidelines">')
    for radius in g.guideline_radii:
        out.append(
            f'<circle class="guideline" cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(radius)}" '
            f'fill="none" stroke="{_GUIDELINE_COLOR}" stroke-width="{_f(g.guideline_width)}"/>'
        )
    out.append("</g>")

    out.append('<g class="spokes">')
    for spoke in g.spokes:
        out.append(
            f'<line class="spoke" x1="{_f(spoke.x1)}" y1="{_f(spoke.y1)}" '
            f'x2="{_f(spoke.x2)}" y2="{_f(spoke.y2)}" '
            f'stroke="{_DIVIDER_COLOR}" stroke-width="{_f(g.guideline_width)}"/>'
        )
    out.append("</g>")

    out.append('<g class="runs">')
    for arc in sorted(g.arcs, key=lambda a: (a.set_index, a.run_index)):
        attrs = _run_attrs(arc.set_index, colors[arc.set_index], g.stroke_width, dimmed)
        if arc.full_circle:
            out.append(
                f'<circle {attrs} cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(arc.radius)}"/>'
            )
        else:
            out.append(f'<path {attrs} d="{_arc_path(g.center, arc)}"/>')
    out.append("</g>")

    halo = _hoop_halo(g, highlight)
    if halo:
        out.append('<g class="highlight">')
        out.append(halo)
        out.append("</g>")

    out.append('<g class="legend">')
    for entry in g.legend:
        out.append(
            f'<text class="legend-label" data-set="{entry.set_index}" '
            f'x="{_f(entry.x)}" y="{_f(entry.y)}" fill="{entry.color}" '
            f'font-size="{_f(g.font_size)}" font-family="sans-serif">'
            f"{escape(entry.label)}</text>"
        )
    out.append("</g>")

    out.append("</svg>")
    return "\n".join(out) + "\n"


def _arc_path(center: tuple[float, float], arc) -> str:
    x1, y1 = point_at(center, arc.radius, arc.start_deg)
    x2, y2 = point_at(center, arc.radius, arc.end_deg)
    large = 1 if (arc.end_deg - arc.start_deg) > 180.0 else 0
    return (
        f"M {_f(x1)} {_f(y1)} "
        f"A {_f(arc.radius)} {_f(arc.radius)} 0 {large} 1 {_f(x2)} {_f(y2)}"
    )


def _hoop_halo(g: HoopGeometry, highlight: HighlightState) -> str | None:
    if highlight.emphasis != OUTLINE:
        return None
    target = highlight.target
    width = g.stroke_width * 3.0 + 4.0
    if target.variant == "set":
        position = g.set_order.index(target.index)
        radius = g.ring_radii[position]
        return (
            f'<circle class="halo" cx="{_f(g.center[0])}" cy="{_f(g.center[1])}" '
            f'r="{_f(radius)}" fill="none" stroke="{_HALO_COLOR}" '
            f'stroke-width="{_f(width)}" opacity="0.6"/>'
        )
    if target.variant == "zone":
        position = g.zone_order.index(target.index)
        a = position * g.sector_deg
        b = a + g.sector_deg
        ox1, oy1 = point_at(g.center, g.outer_radius, a)
        ox2, oy2 = point_at(g.center, g.outer_radius, b)
        ix1, iy1 = point_at(g.center, g.inner_radius, a)
        ix2, iy2 = point_at(g.center, g.inner_radius, b)
        large = 1 if g.sector_deg > 180.0 else 0
        path = (
            f"M {_f(ix1)} {_f(iy1)} L {_f(ox1)} {_f(oy1)} "
            f"A {_f(g.outer_radius)} {_f(g.outer_radius)} 0 {large} 1 {_f(ox2)} {_f(oy2)} "
            f"L {_f(ix2)} {_f(iy2)} "
            f"A {_f(g.inner_radius)} {_f(g.inner_radius)} 0 {large} 0 {_f(ix1)} {_f(iy1)}"
        )
        return (
            f'<path class="halo" d="{path}" fill="none" stroke="{_HALO_COLOR}" '
            f'stroke-width="{_f(g.guideline_width * 3.0)}" opacity="0.8"/>'
        )
    return None


def _render_linear(g: LinearGeometry, highlight: HighlightState) -> str:
    colors = {e.set_index: e.color for e in g.labels}
    dimmed = _dimmed_sets(g, highlight)
    gutter = _label_gutter(g)
    out = []
    out.append(
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_f(g.bbox.x - gutter)} {_f(g.bbox.y)} '
        f'{_f(g.bbox.width + gutter)} {_f(g.bbox.height)}" '
        f'width="{_f(g.bbox.width + gutter)}" height="{_f(g.bbox.height)}">'
    )

    out.append('<g class="guidelines">')
    for line in g.guidelines:
        out.append(
            f'<line class="guideline" x1="{_f(line.x1)}" y1="{_f(line.y)}" '
            f'x2="{_f(line.x2)}" y2="{_f(line.y)}" '
            f'stroke="{_GUIDELINE_COLOR}" stroke-width="{_f(g.guideline_width)}"/>'
        )
    out.append("</g>")

    out.append('<g class="dividers">')
    for div in g.dividers:
        out.append(
            f'<line class="divider" x1="{_f(div.x)}" y1="{_f(div.y1)}" '
            f'x2="{_f(div.x)}" y2="{_f(div.y2)}" '
            f'stroke="{_DIVIDER_COLOR}" stroke-width="{_f(g.guideline_width)}"/>'
        )
    out.append("</g>")

    out.append('<g class="runs">')
    for seg in sorted(g.segments, key=lambda s: (s.set_index, s.run_index)):
        attrs = _run_attrs(seg.set_index, colors[seg.set_index], g.stroke_width, dimmed)
        out.append(
            f'<line {attrs} x1="{_f(seg.x_start)}" y1="{_f(seg.y)}" '
            f'x2="{_f(seg.x_end)}" y2="{_f(seg.y)}"/>'
        )
    out.append("</g>")

    halo = _linear_halo(g, highlight)
    if halo:
        out.append('<g class="highlight">')
        out.append(halo)
        out.append("</g>")

    out.append('<g class="legend">')
    for entry in g.labels:
        out.append(
            f'<text class="legend-label" data-set="{entry.set_index}" '
            f'x="{_f(entry.x)}" y="{_f(entry.y + g.font_size * 0.35)}" '
            f'fill="{entry.color}" font-size="{_f(g.font_size)}" '
            f'font-family="sans-serif" text-anchor="end">{escape(entry.label)}</text>'
        )
    out.append("</g>")

    out.append("</svg>")
    return "\n".join(out) + "\n"


def _label_gutter(g: LinearGeometry) -> float:
    longest = max((len(e.label) for e in g.labels), default=0)
    return 16.0 + 0.62 * g.font_size * longest


def _linear_halo(g: LinearGeometry, highlight: HighlightState) -> str | None:
    if highlight.emphasis != OUTLINE:
        return None
    target = highlight.target
    if target.variant == "set":
        position = g.set_order.index(target.index)
        y = g.row_ys[position]
        return (
            f'<line class="halo" x1="{_f(0.0)}" y1="{_f(y)}" '
            f'x2="{_f(g.bbox.width)}" y2="{_f(y)}" stroke="{_HALO_COLOR}" '
            f'stroke-width="{_f(g.stroke_width * 3.0 + 4.0)}" opacity="0.6"/>'
        )
    if target.variant == "zone":
        position = g.zone_order.index(target.index)
        x0 = position * g.column_width
        x1 = x0 + g.column_width
        path = (
            f"M {_f(x0)} {_f(0.0)} L {_f(x1)} {_f(0.0)} "
            f"L {_f(x1)} {_f(g.bbox.height)} L {_f(x0)} {_f(g.bbox.height)} Z"
        )
        return (
            f'<path class="halo" d="{path}" fill="none" stroke="{_HALO_COLOR}" '
            f'stroke-width="{_f(g.guideline_width * 3.0)}" opacity="0.8"/>'
        )
    return None
