"""Resolved coordinates for Hoop and Linear diagrams, plus hit testing.

Hoop diagrams live on a fixed square canvas regardless of the number of
zones: m zones partition the circle into equal sectors, sector 0 starting
at 12 o'clock and proceeding clockwise. Each set occupies one ring
(position 0 outermost); its arcs cover exactly the sectors of zones that
contain it. Linear diagrams use fixed-width columns, so width scales with
the zone count while height depends only on the set count.

Angles throughout are degrees clockwise from 12 o'clock.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar

from .errors import DimensionMismatchError
from .ordering import CYCLIC, LINEAR, Arrangement, runs_by_set
from .set_model import SetSystem

DEFAULT_PALETTE: tuple[str, ...] = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
    "#393b79",
    "#637939",
    "#8c6d31",
    "#843c39",
    "#7b4173",
    "#3182bd",
)

# Fraction of the canvas half-side left free around the outer circle.
_HOOP_MARGIN_RATIO = 0.16
# Pointer bands around thin strokes widen to at least this many pixels.
_MIN_HIT_BAND = 8.0


@dataclass(frozen=True)
class StyleConfig:
    """Visual constants shared by both diagram kinds."""

    canvas_size: float = 600.0
    inner_radius_ratio: float = 0.30
    set_stroke_width: float = 3.0
    guideline_stroke_width: float = 1.0
    palette: tuple[str, ...] = DEFAULT_PALETTE
    label_font_size: float = 14.0
    linear_column_width: float = 40.0
    linear_row_gap: float = 28.0

    def __post_init__(self) -> None:
        if not (0.0 < self.inner_radius_ratio < 1.0):
            raise ValueError("inner_radius_ratio must be strictly between 0 and 1")
        if self.set_stroke_width <= 0 or self.guideline_stroke_width <= 0:
            raise ValueError("stroke widths must be positive")
        if self.canvas_size <= 0 or self.linear_column_width <= 0 or self.linear_row_gap <= 0:
            raise ValueError("sizes must be positive")
        if len(set(self.palette)) != len(self.palette):
            raise ValueError("palette colors must be distinct")

    @property
    def hit_band(self) -> float:
        return max(self.set_stroke_width, _MIN_HIT_BAND)


@dataclass(frozen=True)
class BBox:
    x: float
    y: float
    width: float
    height: float

    @property
    def aspect_ratio(self) -> float:
        return self.width / self.height


@dataclass(frozen=True)
class HitTarget:
    """What a pointer position refers to: a set ring/row, a zone, or nothing.

    Indices are stable system indices (into set_names / zones), not display
    positions, so a target keeps meaning across reorders and rotations.
    """

    variant: str  # "set" | "zone" | "none"
    index: int | None = None

    @classmethod
    def for_set(cls, index: int) -> HitTarget:
        return cls("set", index)

    @classmethod
    def for_zone(cls, index: int) -> HitTarget:
        return cls("zone", index)

    @classmethod
    def nothing(cls) -> HitTarget:
        return cls("none", None)


@dataclass(frozen=True)
class Arc:
    """One colored run on a hoop ring; angles clockwise from 12 o'clock."""

    set_index: int
    run_index: int
    radius: float
    start_deg: float
    end_deg: float
    full_circle: bool = False


@dataclass(frozen=True)
class Spoke:
    angle_deg: float
    x1: float
    y1: float
    x2: float
    y2: float


@dataclass(frozen=True)
class LegendEntry:
    label: str
    color: str
    x: float
    y: float
    set_index: int


@dataclass(frozen=True)
class HoopGeometry:
    kind: ClassVar[str] = "hoop"

    center: tuple[float, float]
    outer_radius: float
    inner_radius: float
    ring_radii: tuple[float, ...]
    set_order: tuple[int, ...]
    zone_order: tuple[int, ...]
    zone_members: tuple[tuple[int, ...], ...]
    sector_deg: float
    arcs: tuple[Arc, ...]
    spokes: tuple[Spoke, ...]
    guideline_radii: tuple[float, ...]
    legend: tuple[LegendEntry, ...]
    bbox: BBox
    hit_band: float
    stroke_width: float
    guideline_width: float
    font_size: float


@dataclass(frozen=True)
class RowSegment:
    """One colored run on a linear row."""

    set_index: int
    run_index: int
    y: float
    x_start: float
    x_end: float


@dataclass(frozen=True)
class Divider:
    x: float
    y1: float
    y2: float


@dataclass(frozen=True)
class RowGuideline:
    y: float
    x1: float
    x2: float


@dataclass(frozen=True)
class LinearGeometry:
    kind: ClassVar[str] = "linear"

    row_ys: tuple[float, ...]
    set_order: tuple[int, ...]
    zone_order: tuple[int, ...]
    zone_members: tuple[tuple[int, ...], ...]
    column_width: float
    segments: tuple[RowSegment, ...]
    dividers: tuple[Divider, ...]
    guidelines: tuple[RowGuideline, ...]
    labels: tuple[LegendEntry, ...]
    bbox: BBox
    hit_band: float
    stroke_width: float
    guideline_width: float
    font_size: float


def point_at(center: tuple[float, float], radius: float, angle_deg: float) -> tuple[float, float]:
    """Canvas point at a clockwise-from-12-o'clock angle."""
    theta = math.radians(angle_deg)
    return (center[0] + radius * math.sin(theta), center[1] - radius * math.cos(theta))


def layout_hoop(
    system: SetSystem, arrangement: Arrangement, style: StyleConfig | None = None
) -> HoopGeometry:
    """Resolve a cyclic arrangement onto the square hoop canvas."""
    style = style or StyleConfig()
    if arrangement.topology != CYCLIC:
        raise DimensionMismatchError("layout_hoop requires cyclic topology")
    runs = runs_by_set(system, arrangement)

    size = style.canvas_size
    center = (size / 2.0, size / 2.0)
    outer = size / 2.0 * (1.0 - _HOOP_MARGIN_RATIO)
    inner = outer * style.inner_radius_ratio
    n = system.n_sets
    m = system.n_zones
    sector = 360.0 / m

    # Equally spaced rings strictly between the boundary circles,
    # position 0 on the largest ring.
    step = (outer - inner) / (n + 1)
    ring_radii = tuple(inner + step * (n - p) for p in range(n))
    position_of = {s: p for p, s in enumerate(arrangement.set_order)}

    from .render import color_for_set

    arcs = []
    for s in range(n):
        radius = ring_radii[position_of[s]]
        for run_index, (start, length) in enumerate(runs[s]):
            full = length == m
            arcs.append(
                Arc(
                    set_index=s,
                    run_index=run_index,
                    radius=radius,
                    start_deg=start * sector,
                    end_deg=(start + length) * sector,
                    full_circle=full,
                )
            )

    spokes = []
    for j in range(m):
        angle = j * sector
        x2, y2 = point_at(center, outer, angle)
        spokes.append(Spoke(angle, center[0], center[1], x2, y2))

    legend = tuple(
        LegendEntry(
            label=name,
            color=color_for_set(s, style.palette),
            x=12.0,
            y=20.0 + s * (style.label_font_size + 6.0),
            set_index=s,
        )
        for s, name in enumerate(system.set_names)
    )

    return HoopGeometry(
        center=center,
        outer_radius=outer,
        inner_radius=inner,
        ring_radii=ring_radii,
        set_order=arrangement.set_order,
        zone_order=arrangement.zone_order,
        zone_members=system.zones,
        sector_deg=sector,
        arcs=tuple(arcs),
        spokes=tuple(spokes),
        guideline_radii=ring_radii,
        legend=legend,
        bbox=BBox(0.0, 0.0, size, size),
        hit_band=style.hit_band,
        stroke_width=style.set_stroke_width,
        guideline_width=style.guideline_stroke_width,
        font_size=style.label_font_size,
    )


def layout_linear(
    system: SetSystem, arrangement: Arrangement, style: StyleConfig | None = None
) -> LinearGeometry:
    """Resolve a linear arrangement onto the fixed-column-width grid.

    The bounding box covers exactly the column grid, so its width is
    m * column_width; row labels anchor left of it at negative x.
    """
    style = style or StyleConfig()
    if arrangement.topology != LINEAR:
        raise DimensionMismatchError("layout_linear requires linear topology")
    runs = runs_by_set(system, arrangement)

    n = system.n_sets
    m = system.n_zones
    cw = style.linear_column_width
    gap = style.linear_row_gap
    width = m * cw
    height = (n + 1) * gap
    row_ys = tuple(gap * (p + 1) for p in range(n))
    position_of = {s: p for p, s in enumerate(arrangement.set_order)}

    from .render import color_for_set

    segments = []
    for s in range(n):
        y = row_ys[position_of[s]]
        for run_index, (start, length) in enumerate(runs[s]):
            segments.append(
                RowSegment(
                    set_index=s,
                    run_index=run_index,
                    y=y,
                    x_start=start * cw,
                    x_end=(start + length) * cw,
                )
            )

    dividers = tuple(Divider(j * cw, 0.0, height) for j in range(m + 1))
    guidelines = tuple(RowGuideline(y, 0.0, width) for y in row_ys)
    labels = tuple(
        LegendEntry(
            label=system.set_names[s],
            color=color_for_set(s, style.palette),
            x=-8.0,
            y=row_ys[position_of[s]],
            set_index=s,
        )
        for s in arrangement.set_order
    )

    return LinearGeometry(
        row_ys=row_ys,
        set_order=arrangement.set_order,
        zone_order=arrangement.zone_order,
        zone_members=system.zones,
        column_width=cw,
        segments=tuple(segments),
        dividers=dividers,
        guidelines=guidelines,
        labels=labels,
        bbox=BBox(0.0, 0.0, width, height),
        hit_band=style.hit_band,
        stroke_width=style.set_stroke_width,
        guideline_width=style.guideline_stroke_width,
        font_size=style.label_font_size,
    )


def hit_test_hoop(geometry: HoopGeometry, point: tuple[float, float]) -> HitTarget:
    """Map a canvas point to the ring or sector under it.

    A point within the widened stroke band of a ring hits that ring's set
    (nearest ring wins). Inside the inner boundary circle, or outside the
    outer one but still on the canvas, the sector's zone is hit; the exact
    center counts as angle 0. Anywhere else hits nothing.
    """
    px, py = point
    cx, cy = geometry.center
    dx, dy = px - cx, py - cy
    rho = math.hypot(dx, dy)
    # The exact center counts as angle 0 (atan2 would give pi for -0.0).
    angle = math.degrees(math.atan2(dx, -dy)) % 360.0 if rho else 0.0

    half = geometry.hit_band / 2.0
    if geometry.ring_radii:
        nearest = min(
            range(len(geometry.ring_radii)),
            key=lambda p: (abs(rho - geometry.ring_radii[p]), p),
        )
        if abs(rho - geometry.ring_radii[nearest]) <= half:
            return HitTarget.for_set(geometry.set_order[nearest])

    bbox = geometry.bbox
    on_canvas = bbox.x <= px <= bbox.x + bbox.width and bbox.y <= py <= bbox.y + bbox.height
    if rho < geometry.inner_radius or (rho > geometry.outer_radius and on_canvas):
        sector = int(angle // geometry.sector_deg)
        sector = min(sector, len(geometry.zone_order) - 1)
        return HitTarget.for_zone(geometry.zone_order[sector])
    return HitTarget.nothing()


def hit_test_linear(geometry: LinearGeometry, point: tuple[float, float]) -> HitTarget:
    """Map a grid point to the row or column region under it.

    Rows hit within their widened stroke band; the strips above the top
    row and below the bottom row hit the zone of the column containing
    the point. Points outside the grid hit nothing.
    """
    px, py = point
    bbox = geometry.bbox
    if not (bbox.x <= px <= bbox.x + bbox.width and bbox.y <= py <= bbox.y + bbox.height):
        return HitTarget.nothing()

    half = geometry.hit_band / 2.0
    if geometry.row_ys:
        nearest = min(
            range(len(geometry.row_ys)), key=lambda p: (abs(py - geometry.row_ys[p]), p)
        )
        if abs(py - geometry.row_ys[nearest]) <= half:
            return HitTarget.for_set(geometry.set_order[nearest])
        if py < geometry.row_ys[0] - half or py > geometry.row_ys[-1] + half:
            column = min(int(px // geometry.column_width), len(geometry.zone_order) - 1)
            return HitTarget.for_zone(geometry.zone_order[column])
    return HitTarget.nothing()
