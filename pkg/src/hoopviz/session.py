"""Interactive sessions over a loaded diagram.

A session holds the system, its base arrangement (the reset target), the
current arrangement, the hover highlight, and an append-only event log.
Commands are the five interactions: pointer probes (hover highlighting),
bring-set-to-front, reorder-for-set, rotation, and reset. State values
are immutable; applying a command returns a new state plus a transition
descriptor the UI can animate from.

Events are logged only when a command actually changes state, so probing
the same target twice records a single hover event.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from typing import Callable

from . import ordering
from .errors import InvalidCommandError, ParseError
from .geometry import (
    HitTarget,
    StyleConfig,
    hit_test_hoop,
    hit_test_linear,
    layout_hoop,
    layout_linear,
)
from .ordering import CYCLIC, LINEAR, Arrangement, identity_arrangement
from .render import DIM_OTHERS, HighlightState
from .set_model import SetSystem, canonicalize

HOOP = "hoop"
LINEAR_KIND = "linear"

ANIMATION_MS = 1000

LOG_HEADER = "timestamp_ms\tkind\ttarget"


# --- commands --------------------------------------------------------------

@dataclass(frozen=True)
class Probe:
    x: float
    y: float


@dataclass(frozen=True)
class BringToFront:
    set_index: int


@dataclass(frozen=True)
class ReorderSet:
    set_index: int


@dataclass(frozen=True)
class Rotate:
    direction: str  # "left" | "right"


@dataclass(frozen=True)
class Reset:
    pass


InteractionCommand = Probe | BringToFront | ReorderSet | Rotate | Reset


@dataclass(frozen=True)
class InteractionEvent:
    timestamp_ms: int
    kind: str
    target: int | None


@dataclass(frozen=True)
class Move:
    index: int
    from_position: int
    to_position: int


@dataclass(frozen=True)
class TransitionDescriptor:
    """What changed, for the UI to animate."""

    command: str
    animation_duration_ms: int
    zone_moves: tuple[Move, ...] = ()
    set_moves: tuple[Move, ...] = ()


@dataclass(frozen=True)
class SessionState:
    system: SetSystem
    diagram_kind: str  # "hoop" | "linear"
    style: StyleConfig
    base_arrangement: Arrangement
    current_arrangement: Arrangement
    highlight: HighlightState
    event_log: tuple[InteractionEvent, ...]
    exact_threshold: int

    @property
    def topology(self) -> str:
        return CYCLIC if self.diagram_kind == HOOP else LINEAR


def topology_for_kind(diagram_kind: str) -> str:
    if diagram_kind == HOOP:
        return CYCLIC
    if diagram_kind == LINEAR_KIND:
        return LINEAR
    raise InvalidCommandError(f"unknown diagram kind {diagram_kind!r}")


def create_session(
    system: SetSystem,
    diagram_kind: str,
    optimizer_mode: str = "auto",
    *,
    seed: int = 0,
    style: StyleConfig | None = None,
    exact_threshold: int = ordering.EXACT_THRESHOLD,
) -> SessionState:
    """Canonicalize, compute the base arrangement, start with an empty log.

    optimizer_mode "auto" uses exact search when it fits under the
    threshold and the heuristic otherwise; "none", "heuristic" and
    "exact" force a specific choice.
    """
    topology = topology_for_kind(diagram_kind)
    system = canonicalize(system)
    if optimizer_mode == "auto":
        mode = "exact" if system.n_zones <= exact_threshold else "heuristic"
    elif optimizer_mode in ("none", "heuristic", "exact"):
        mode = optimizer_mode
    else:
        raise InvalidCommandError(f"unknown optimizer mode {optimizer_mode!r}")

    if mode == "none":
        base = identity_arrangement(system, topology)
    elif mode == "heuristic":
        base = ordering.optimize_heuristic(system, topology, seed)
    else:
        base = ordering.optimize_exact(system, topology, exact_threshold=exact_threshold)

    return SessionState(
        system=system,
        diagram_kind=diagram_kind,
        style=style or StyleConfig(),
        base_arrangement=base,
        current_arrangement=base,
        highlight=HighlightState.none(),
        event_log=(),
        exact_threshold=exact_threshold,
    )


def layout(state: SessionState):
    """Geometry for the current arrangement."""
    if state.diagram_kind == HOOP:
        return layout_hoop(state.system, state.current_arrangement, state.style)
    return layout_linear(state.system, state.current_arrangement, state.style)


def _now_ms() -> int:
    return time.time_ns() // 1_000_000


def _moves(old: tuple[int, ...], new: tuple[int, ...]) -> tuple[Move, ...]:
    old_pos = {idx: p for p, idx in enumerate(old)}
    return tuple(
        Move(idx, old_pos[idx], p) for p, idx in enumerate(new) if old_pos[idx] != p
    )


def apply(
    state: SessionState,
    command: InteractionCommand,
    *,
    clock: Callable[[], int] | None = None,
) -> tuple[SessionState, TransitionDescriptor]:
    """Apply one command, returning the new state and a transition descriptor.

    The input state is never mutated; a failing command raises and leaves
    nothing changed. One event is appended per actual state change.
    """
    clock = clock or _now_ms

    if isinstance(command, Probe):
        target = _hit(state, (command.x, command.y))
        if target == state.highlight.target:
            return state, TransitionDescriptor("probe", 0)
        if target.variant == "none":
            highlight = HighlightState.none()
        else:
            highlight = HighlightState(target, DIM_OTHERS)
        event = InteractionEvent(clock(), f"hover-{target.variant}", target.index)
        new = replace(state, highlight=highlight, event_log=state.event_log + (event,))
        return new, TransitionDescriptor("probe", 0)

    if isinstance(command, BringToFront):
        new_arr = ordering.bring_set_to_front(state.current_arrangement, command.set_index)
        return _apply_reorder(
            state, new_arr, "bring_to_front", "click-bring-to-front", command.set_index, clock
        )

    if isinstance(command, ReorderSet):
        new_arr = ordering.reorder_for_set(
            state.system,
            state.current_arrangement,
            command.set_index,
            exact_threshold=state.exact_threshold,
        )
        return _apply_reorder(
            state, new_arr, "reorder_set", "click-reorder-set", command.set_index, clock
        )

    if isinstance(command, Rotate):
        new_arr = ordering.rotate(state.current_arrangement, command.direction)
        return _apply_reorder(
            state, new_arr, "rotate", f"rotate-{command.direction}", None, clock
        )

    if isinstance(command, Reset):
        new_arr = state.base_arrangement
        descriptor = TransitionDescriptor(
            "reset",
            ANIMATION_MS,
            _moves(state.current_arrangement.zone_order, new_arr.zone_order),
            _moves(state.current_arrangement.set_order, new_arr.set_order),
        )
        changed = (
            new_arr != state.current_arrangement
            or state.highlight != HighlightState.none()
        )
        if not changed:
            return state, descriptor
        event = InteractionEvent(clock(), "reset", None)
        new = replace(
            state,
            current_arrangement=new_arr,
            highlight=HighlightState.none(),
            event_log=state.event_log + (event,),
        )
        return new, descriptor

    raise InvalidCommandError(f"unknown command {command!r}")


def _hit(state: SessionState, point: tuple[float, float]) -> HitTarget:
    geometry = layout(state)
    if state.diagram_kind == HOOP:
        return hit_test_hoop(geometry, point)
    return hit_test_linear(geometry, point)


def _apply_reorder(
    state: SessionState,
    new_arr: Arrangement,
    command_name: str,
    event_kind: str,
    target: int | None,
    clock: Callable[[], int],
) -> tuple[SessionState, TransitionDescriptor]:
    descriptor = TransitionDescriptor(
        command_name,
        ANIMATION_MS,
        _moves(state.current_arrangement.zone_order, new_arr.zone_order),
        _moves(state.current_arrangement.set_order, new_arr.set_order),
    )
    if new_arr == state.current_arrangement:
        return state, descriptor
    event = InteractionEvent(clock(), event_kind, target)
    new = replace(
        state, current_arrangement=new_arr, event_log=state.event_log + (event,)
    )
    return new, descriptor


# --- event log -------------------------------------------------------------

def export_log(state: SessionState) -> str:
    """Event log as tab-separated text: header, then one line per event."""
    lines = [LOG_HEADER]
    for event in state.event_log:
        target = "" if event.target is None else str(event.target)
        lines.append(f"{event.timestamp_ms}\t{event.kind}\t{target}")
    return "\n".join(lines) + "\n"


def parse_log(text: str) -> tuple[InteractionEvent, ...]:
    """Inverse of export_log."""
    lines = [line for line in text.splitlines() if line]
    if not lines or lines[0] != LOG_HEADER:
        raise ParseError("missing log header")
    events = []
    for line in lines[1:]:
        parts = line.split("\t")
        if len(parts) != 3:
            raise ParseError(f"malformed log line {line!r}")
        ts, kind, target = parts
        events.append(InteractionEvent(int(ts), kind, int(target) if target else None))
    return tuple(events)
