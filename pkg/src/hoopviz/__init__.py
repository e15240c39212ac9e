"""Hoop and Linear diagram engine.

Derives set systems from membership data, orders intersections to
minimize line segments, lays out and renders deterministic SVG, and
drives interactive sessions over a JSON/HTTP protocol.
"""

from .errors import (
    DimensionMismatchError,
    DuplicateItemIdError,
    EmptyTableError,
    HoopvizError,
    InvalidCommandError,
    InvalidSetError,
    InvalidSystemError,
    PaletteExhaustedError,
    ParseError,
    ThresholdExceededError,
)
from .geometry import (
    HitTarget,
    HoopGeometry,
    LinearGeometry,
    StyleConfig,
    hit_test_hoop,
    hit_test_linear,
    layout_hoop,
    layout_linear,
)
from .ordering import (
    CYCLIC,
    EXACT_THRESHOLD,
    LINEAR,
    Arrangement,
    SegmentStats,
    bring_set_to_front,
    identity_arrangement,
    optimize_exact,
    optimize_heuristic,
    reorder_for_set,
    rotate,
    segment_counts,
)
from .render import HighlightState, color_for_set, render_svg
from .session import (
    BringToFront,
    InteractionEvent,
    Probe,
    Reset,
    ReorderSet,
    Rotate,
    SessionState,
    TransitionDescriptor,
    apply,
    create_session,
    export_log,
    parse_log,
)
from .set_model import (
    MembershipTable,
    SetSystem,
    canonicalize,
    parse_items_text,
    parse_zones_json,
    validate,
    zones_from_memberships,
)

__version__ = "0.1.0"
