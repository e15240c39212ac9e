"""Hoop and linear layout plus pointer hit testing."""

from __future__ import annotations

import math
import random

import pytest

from _oracles import random_instance, to_system
from hoopviz import (
    CYCLIC,
    LINEAR,
    Arrangement,
    DimensionMismatchError,
    HitTarget,
    StyleConfig,
    hit_test_hoop,
    hit_test_linear,
    identity_arrangement,
    layout_hoop,
    layout_linear,
    segment_counts,
)
from hoopviz.cli import generate_system
from hoopviz.geometry import point_at


def test_style_validation():
    with pytest.raises(ValueError):
        StyleConfig(inner_radius_ratio=1.5)
    with pytest.raises(ValueError):
        StyleConfig(set_stroke_width=0)
    with pytest.raises(ValueError):
        StyleConfig(palette=("#111111", "#111111"))


def test_hoop_equal_sectors_and_square_bbox():
    system = generate_system(6, 12, 3)
    geom = layout_hoop(system, identity_arrangement(system, CYCLIC))
    assert geom.sector_deg == 30.0
    assert len(geom.spokes) == 12
    assert geom.bbox.width == geom.bbox.height == 600.0
    # Zone at order position 0 spans [0, 30) clockwise from 12 o'clock.
    assert geom.spokes[0].angle_deg == 0.0
    assert geom.spokes[1].angle_deg == 30.0


def test_hoop_single_zone_degenerate():
    system = to_system(("A",), (frozenset("A"),))
    geom = layout_hoop(system, identity_arrangement(system, CYCLIC))
    assert len(geom.spokes) == 1
    assert len(geom.arcs) == 1
    assert geom.arcs[0].full_circle


def test_hoop_bbox_independent_of_zone_count():
    a = generate_system(6, 8, 1)
    b = generate_system(6, 16, 1)
    geom_a = layout_hoop(a, identity_arrangement(a, CYCLIC))
    geom_b = layout_hoop(b, identity_arrangement(b, CYCLIC))
    assert geom_a.bbox == geom_b.bbox


def test_hoop_ring_radii_strictly_between_boundaries():
    system = generate_system(6, 10, 2)
    geom = layout_hoop(system, identity_arrangement(system, CYCLIC))
    assert all(
        geom.inner_radius < r < geom.outer_radius for r in geom.ring_radii
    )
    assert list(geom.ring_radii) == sorted(geom.ring_radii, reverse=True)


def test_hoop_arc_count_equals_segment_total():
    rng = random.Random(11)
    for _ in range(15):
        n = rng.randint(1, 6)
        m = rng.randint(1, min(16, 2**n - 1))
        system = to_system(*random_instance(rng, n, m))
        order = tuple(rng.sample(range(m), m))
        arr = Arrangement(order, tuple(range(n)), CYCLIC)
        geom = layout_hoop(system, arr)
        assert len(geom.arcs) == segment_counts(system, arr).total


def test_hoop_arc_spans_whole_sectors():
    system = generate_system(5, 9, 4)
    geom = layout_hoop(system, identity_arrangement(system, CYCLIC))
    for arc in geom.arcs:
        assert arc.start_deg / geom.sector_deg == pytest.approx(
            round(arc.start_deg / geom.sector_deg)
        )
        span = arc.end_deg - arc.start_deg
        assert span / geom.sector_deg == pytest.approx(round(span / geom.sector_deg))


def test_hoop_topology_check():
    system = generate_system(3, 4, 0)
    with pytest.raises(DimensionMismatchError):
        layout_hoop(system, identity_arrangement(system, LINEAR))
    with pytest.raises(DimensionMismatchError):
        layout_linear(system, identity_arrangement(system, CYCLIC))


def test_linear_layout_dimensions():
    # Default style: 40 px columns, 28 px row gap -> 480 x 196 for 6 sets,
    # 12 zones; wider than tall.
    system = generate_system(6, 12, 3)
    geom = layout_linear(system, identity_arrangement(system, LINEAR))
    assert geom.bbox.width == 480.0
    assert geom.bbox.height == 196.0
    assert geom.bbox.width > geom.bbox.height
    assert len(geom.dividers) == 13
    assert len(geom.guidelines) == 6


def test_linear_width_scales_with_zones():
    a = generate_system(6, 8, 1)
    b = generate_system(6, 16, 1)
    geom_a = layout_linear(a, identity_arrangement(a, LINEAR))
    geom_b = layout_linear(b, identity_arrangement(b, LINEAR))
    assert geom_b.bbox.width == 2 * geom_a.bbox.width
    assert geom_b.bbox.height == geom_a.bbox.height


def test_linear_segment_count_equals_total():
    rng = random.Random(21)
    for _ in range(15):
        n = rng.randint(1, 6)
        m = rng.randint(1, min(16, 2**n - 1))
        system = to_system(*random_instance(rng, n, m))
        order = tuple(rng.sample(range(m), m))
        arr = Arrangement(order, tuple(range(n)), LINEAR)
        geom = layout_linear(system, arr)
        assert len(geom.segments) == segment_counts(system, arr).total


def test_linear_labels_left_of_grid():
    system = generate_system(4, 6, 9)
    geom = layout_linear(system, identity_arrangement(system, LINEAR))
    assert all(e.x < 0 for e in geom.labels)
    assert [e.set_index for e in geom.labels] == list(geom.set_order)


# --- hit testing -----------------------------------------------------------

def test_hit_hoop_ring_any_angle():
    system = generate_system(6, 12, 3)
    geom = layout_hoop(system, identity_arrangement(system, CYCLIC))
    for angle in (0.0, 37.0, 180.0, 299.0):
        point = point_at(geom.center, geom.ring_radii[1], angle)
        assert hit_test_hoop(geom, point) == HitTarget.for_set(geom.set_order[1])


def test_hit_hoop_outside_sector():
    system = generate_system(6, 12, 3)
    geom = layout_hoop(system, identity_arrangement(system, CYCLIC))
    point = point_at(geom.center, geom.outer_radius + 10.0, 45.0)
    assert hit_test_hoop(geom, point) == HitTarget.for_zone(geom.zone_order[1])


def test_hit_hoop_center_is_zone_at_position_zero():
    system = generate_system(6, 12, 3)
    geom = layout_hoop(system, identity_arrangement(system, CYCLIC))
    assert hit_test_hoop(geom, geom.center) == HitTarget.for_zone(geom.zone_order[0])


def test_hit_hoop_between_rings_none():
    system = generate_system(6, 12, 3)
    geom = layout_hoop(system, identity_arrangement(system, CYCLIC))
    radius = (geom.ring_radii[0] + geom.ring_radii[1]) / 2.0
    point = point_at(geom.center, radius, 123.0)
    assert hit_test_hoop(geom, point) == HitTarget.nothing()


def test_hit_hoop_off_canvas_none():
    system = generate_system(6, 12, 3)
    geom = layout_hoop(system, identity_arrangement(system, CYCLIC))
    assert hit_test_hoop(geom, (-5.0, 10.0)) == HitTarget.nothing()


def test_hit_hoop_arc_midpoints_hit_their_set():
    rng = random.Random(77)
    for _ in range(10):
        n = rng.randint(1, 6)
        m = rng.randint(1, min(12, 2**n - 1))
        system = to_system(*random_instance(rng, n, m))
        geom = layout_hoop(system, identity_arrangement(system, CYCLIC))
        for arc in geom.arcs:
            mid = point_at(geom.center, arc.radius, (arc.start_deg + arc.end_deg) / 2)
            assert hit_test_hoop(geom, mid) == HitTarget.for_set(arc.set_index)


def test_hit_hoop_respects_rotated_zone_order():
    system = generate_system(6, 12, 3)
    order = tuple(range(1, 12)) + (0,)  # rotated left once
    geom = layout_hoop(system, Arrangement(order, tuple(range(6)), CYCLIC))
    point = point_at(geom.center, geom.outer_radius + 5.0, 1.0)
    assert hit_test_hoop(geom, point) == HitTarget.for_zone(1)


def test_hit_linear_rows_and_zones():
    system = generate_system(6, 12, 3)
    geom = layout_linear(system, identity_arrangement(system, LINEAR))
    assert hit_test_linear(geom, (5.0, geom.row_ys[0])) == HitTarget.for_set(
        geom.set_order[0]
    )
    x = 2.5 * geom.column_width
    assert hit_test_linear(geom, (x, 2.0)) == HitTarget.for_zone(geom.zone_order[2])
    below = geom.bbox.height - 2.0
    assert hit_test_linear(geom, (x, below)) == HitTarget.for_zone(geom.zone_order[2])
    # Left of the diagram hits nothing.
    assert hit_test_linear(geom, (-3.0, geom.row_ys[0])) == HitTarget.nothing()
    # Between two rows, outside bands, hits nothing.
    mid = (geom.row_ys[0] + geom.row_ys[1]) / 2.0
    assert hit_test_linear(geom, (5.0, mid)) == HitTarget.nothing()


def test_point_at_clockwise_from_noon():
    cx, cy = 100.0, 100.0
    x, y = point_at((cx, cy), 50.0, 0.0)
    assert (x, y) == pytest.approx((100.0, 50.0))
    x, y = point_at((cx, cy), 50.0, 90.0)
    assert (x, y) == pytest.approx((150.0, 100.0))
    x, y = point_at((cx, cy), 50.0, 180.0)
    assert (x, y) == pytest.approx((100.0, 150.0))
    assert math.hypot(x - cx, y - cy) == pytest.approx(50.0)
