"""Zone orderings that minimize line segments.

A set shown over an ordered sequence of zones breaks into maximal runs of
consecutive zones containing it; each run is one drawn line segment. The
total over all sets is the quantity minimized here. For cyclic topology
(hoops) consecutiveness wraps around; for linear topology it does not.

The total relates to Hamming distances between consecutive zone bitmasks
(the boundary identity):

    cyclic: total = sum(|z_i XOR z_{i+1 mod m}|) / 2 + #sets in every zone
    linear: total = sum(|z_i AND NOT z_{i-1}|)        with z_{-1} = empty

so minimizing segments is a traveling-salesman problem under Hamming
distance: a cycle for hoops, a path anchored at the empty set for linear
diagrams. Exact search is branch-and-bound over permutations in
lexicographic order; the heuristic is nearest-neighbor construction
refined by 2-opt reversals and single-zone relocations.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import (
    DimensionMismatchError,
    InvalidCommandError,
    InvalidSetError,
    ThresholdExceededError,
)
from .set_model import SetSystem

CYCLIC = "cyclic"
LINEAR = "linear"

# Largest zone count handled by exhaustive search: worst case 10! linear
# orders before pruning; cyclic search fixes zone 0 and halves by mirror.
EXACT_THRESHOLD = 10

_HEURISTIC_MAX_STARTS = 12


@dataclass(frozen=True)
class Arrangement:
    """Zone and set permutations plus topology.

    zone_order[p] is the zone shown at position p (position 0 is the
    12 o'clock sector for hoops, the leftmost column for linear).
    set_order[p] is the set at position p (position 0 is the outermost
    hoop / topmost row).
    """

    zone_order: tuple[int, ...]
    set_order: tuple[int, ...]
    topology: str


@dataclass(frozen=True)
class SegmentStats:
    """Per-set maximal-run counts (indexed by set, not position) and total."""

    runs_per_set: tuple[int, ...]
    total: int


def identity_arrangement(system: SetSystem, topology: str) -> Arrangement:
    """Zones and sets in their canonical order."""
    _check_topology(topology)
    return Arrangement(
        tuple(range(system.n_zones)), tuple(range(system.n_sets)), topology
    )


def _check_topology(topology: str) -> None:
    if topology not in (CYCLIC, LINEAR):
        raise DimensionMismatchError(f"unknown topology {topology!r}")


def _check_dimensions(system: SetSystem, arrangement: Arrangement) -> None:
    _check_topology(arrangement.topology)
    if sorted(arrangement.zone_order) != list(range(system.n_zones)):
        raise DimensionMismatchError(
            f"zone_order is not a permutation of 0..{system.n_zones - 1}"
        )
    if sorted(arrangement.set_order) != list(range(system.n_sets)):
        raise DimensionMismatchError(
            f"set_order is not a permutation of 0..{system.n_sets - 1}"
        )


def runs_by_set(
    system: SetSystem, arrangement: Arrangement
) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Maximal runs per set as (start_position, length), by start position.

    A set present in every zone under cyclic topology is one full-circle
    run, reported as (0, m).
    """
    _check_dimensions(system, arrangement)
    masks = system.zone_masks()
    seq = [masks[z] for z in arrangement.zone_order]
    m = len(seq)
    cyclic = arrangement.topology == CYCLIC
    out: list[tuple[tuple[int, int], ...]] = []
    for s in range(system.n_sets):
        bit = 1 << s
        present = [bool(mask & bit) for mask in seq]
        if cyclic and all(present):
            out.append(((0, m),))
            continue
        runs: list[tuple[int, int]] = []
        for i in range(m):
            prev = present[i - 1] if (i > 0 or cyclic) else False
            if present[i] and not prev:
                length = 1
                while length < m:
                    j = i + length
                    if cyclic:
                        j %= m
                    elif j >= m:
                        break
                    if not present[j]:
                        break
                    length += 1
                runs.append((i, length))
        out.append(tuple(runs))
    return tuple(out)


def segment_counts(system: SetSystem, arrangement: Arrangement) -> SegmentStats:
    """Count maximal runs per set under the arrangement."""
    runs = runs_by_set(system, arrangement)
    per_set = tuple(len(r) for r in runs)
    return SegmentStats(per_set, sum(per_set))


# ---------------------------------------------------------------------------
# Objectives on bitmask sequences
# ---------------------------------------------------------------------------

def _intersection(seq: list[int]) -> int:
    if not seq:
        return 0
    acc = seq[0]
    for mask in seq[1:]:
        acc &= mask
    return acc


def _cycle_weight(seq: list[int]) -> int:
    """Sum of Hamming distances around the cycle; twice the broken-run count."""
    m = len(seq)
    return sum((seq[i] ^ seq[(i + 1) % m]).bit_count() for i in range(m))


def _path_weight(seq: list[int]) -> int:
    """Hamming path length with empty-set anchors at both ends."""
    weight = 0
    prev = 0
    for mask in seq:
        weight += (prev ^ mask).bit_count()
        prev = mask
    return weight + prev.bit_count()


def order_total(
    masks: list[int] | tuple[int, ...], order: list[int] | tuple[int, ...], topology: str
) -> int:
    """Segment total of a zone order, from the system's zone bitmasks."""
    seq = [masks[z] for z in order]
    if topology == CYCLIC:
        return _cycle_weight(seq) // 2 + _intersection(seq).bit_count()
    return _path_weight(seq) // 2


# ---------------------------------------------------------------------------
# Exact search
# ---------------------------------------------------------------------------

def optimize_exact(
    system: SetSystem, topology: str, *, exact_threshold: int = EXACT_THRESHOLD
) -> Arrangement:
    """Zone order with the minimum segment total, exhaustively verified.

    Orders are enumerated lexicographically with branch-and-bound pruning,
    so ties resolve to the lexicographically smallest zone order. For
    cyclic topology zone 0 is fixed at position 0 (rotations are
    equivalent) and mirror-image orders are visited once. Raises
    ThresholdExceededError above the zone limit.
    """
    _check_topology(topology)
    m = system.n_zones
    if m > exact_threshold:
        raise ThresholdExceededError(
            f"{m} zones exceeds the exact-search threshold of {exact_threshold}; "
            "use optimize_heuristic"
        )
    masks = list(system.zone_masks())
    if m <= 2:
        best = list(range(m))
    elif topology == CYCLIC:
        best = _exact_cyclic(masks)
    else:
        best = _exact_linear(masks)
    return Arrangement(tuple(best), tuple(range(system.n_sets)), topology)


def _exact_linear(masks: list[int]) -> list[int]:
    m = len(masks)
    best_cost = sum(
        (masks[i] & ~(masks[i - 1] if i else 0)).bit_count() for i in range(m)
    )
    best_order = list(range(m))

    order: list[int] = []
    used = [False] * m

    def extend(prev_mask: int, cost: int) -> None:
        nonlocal best_cost, best_order
        if cost >= best_cost:
            return
        if len(order) == m:
            best_cost = cost
            best_order = order.copy()
            return
        for z in range(m):
            if used[z]:
                continue
            used[z] = True
            order.append(z)
            extend(masks[z], cost + (masks[z] & ~prev_mask).bit_count())
            order.pop()
            used[z] = False

    # Seeding with the identity cost keeps pruning tight; the identity is
    # already the lex-smallest order, so equal-cost leaves never replace it.
    extend(0, 0)
    return best_order


def _exact_cyclic(masks: list[int]) -> list[int]:
    m = len(masks)
    best_weight = _cycle_weight(masks)
    best_order = list(range(m))

    order = [0]
    used = [False] * m
    used[0] = True

    def extend(prev: int, weight: int) -> None:
        nonlocal best_weight, best_order
        if weight >= best_weight:
            return
        if len(order) == m:
            # Mirror images traverse the same adjacencies; keep only the
            # representative with order[1] < order[-1].
            if order[1] > order[-1]:
                return
            closed = weight + (masks[prev] ^ masks[0]).bit_count()
            if closed < best_weight:
                best_weight = closed
                best_order = order.copy()
            return
        for z in range(1, m):
            if used[z]:
                continue
            used[z] = True
            order.append(z)
            extend(z, weight + (masks[prev] ^ masks[z]).bit_count())
            order.pop()
            used[z] = False

    extend(0, 0)
    return best_order


# ---------------------------------------------------------------------------
# Heuristic search
# ---------------------------------------------------------------------------

def optimize_heuristic(system: SetSystem, topology: str, seed: int) -> Arrangement:
    """Near-minimal zone order via nearest-neighbor plus local search.

    Deterministic for a fixed seed. Nearest-neighbor tours are built from
    several start zones (all zones on small instances, a seeded sample
    otherwise), each refined by 2-opt and relocation moves; the canonical
    baseline order is refined the same way, so the result never exceeds
    the baseline total.
    """
    _check_topology(topology)
    m = system.n_zones
    if m <= 1:
        return identity_arrangement(system, topology)
    masks = list(system.zone_masks())
    dist = [[(a ^ b).bit_count() for b in masks] for a in masks]
    cyclic = topology == CYCLIC

    starts = list(range(m))
    if m > _HEURISTIC_MAX_STARTS:
        starts = sorted(random.Random(seed).sample(range(m), _HEURISTIC_MAX_STARTS))
        anchor_start = min(range(m), key=lambda z: (masks[z].bit_count(), z))
        if not cyclic and anchor_start not in starts:
            starts.append(anchor_start)

    candidates = [_local_search(list(range(m)), masks, dist, cyclic)]
    for start in starts:
        tour = _nearest_neighbor(start, dist)
        candidates.append(_local_search(tour, masks, dist, cyclic))

    normalize = _normalize_cycle if cyclic else _normalize_path
    best = min(
        (normalize(c) for c in candidates),
        key=lambda order: (order_total(masks, order, topology), order),
    )
    return Arrangement(tuple(best), tuple(range(system.n_sets)), topology)


def _nearest_neighbor(start: int, dist: list[list[int]]) -> list[int]:
    m = len(dist)
    tour = [start]
    remaining = set(range(m)) - {start}
    current = start
    while remaining:
        current = min(remaining, key=lambda z: (dist[current][z], z))
        tour.append(current)
        remaining.remove(current)
    return tour


def _order_weight(masks: list[int], order: list[int], cyclic: bool) -> int:
    seq = [masks[z] for z in order]
    return _cycle_weight(seq) if cyclic else _path_weight(seq)


def _local_search(
    order: list[int], masks: list[int], dist: list[list[int]], cyclic: bool
) -> list[int]:
    """Refine an order with 2-opt reversals and single-zone relocations."""
    m = len(order)

    def end_dist(i: int, j: int) -> int:
        # Positions -1 and m are the empty-set path anchors.
        a = masks[order[i]] if 0 <= i < m else 0
        b = masks[order[j]] if 0 <= j < m else 0
        return (a ^ b).bit_count()

    improved = True
    while improved:
        improved = False
        for i in range(m - 1):
            for j in range(i + 1, m):
                if cyclic:
                    if i == 0 and j == m - 1:
                        continue
                    before, after = (i - 1) % m, (j + 1) % m
                    delta = (
                        dist[order[before]][order[j]]
                        + dist[order[i]][order[after]]
                        - dist[order[before]][order[i]]
                        - dist[order[j]][order[after]]
                    )
                else:
                    delta = (
                        end_dist(i - 1, j)
                        + end_dist(i, j + 1)
                        - end_dist(i - 1, i)
                        - end_dist(j, j + 1)
                    )
                if delta < 0:
                    order[i : j + 1] = reversed(order[i : j + 1])
                    improved = True
        current = _order_weight(masks, order, cyclic)
        for i in range(m):
            rest = order[:i] + order[i + 1 :]
            for pos in range(m):
                if pos == i:
                    continue
                cand = rest[:pos] + [order[i]] + rest[pos:]
                weight = _order_weight(masks, cand, cyclic)
                if weight < current:
                    order[:] = cand
                    current = weight
                    improved = True
                    break
    return order


def _normalize_cycle(order: list[int]) -> list[int]:
    """Rotate the smallest zone to the front; reflect to the lex-smaller mirror."""
    m = len(order)
    k = order.index(min(order))
    rotated = order[k:] + order[:k]
    if m >= 3 and rotated[1] > rotated[-1]:
        rotated = [rotated[0]] + rotated[1:][::-1]
    return rotated


def _normalize_path(order: list[int]) -> list[int]:
    mirrored = order[::-1]
    return order if order <= mirrored else mirrored


# ---------------------------------------------------------------------------
# Interaction reorders
# ---------------------------------------------------------------------------

def bring_set_to_front(arrangement: Arrangement, set_index: int) -> Arrangement:
    """Move a set to position 0 (outermost hoop / top row), shifting the rest."""
    if set_index not in arrangement.set_order:
        raise InvalidSetError(f"set index {set_index} out of range")
    new_order = (set_index,) + tuple(s for s in arrangement.set_order if s != set_index)
    return Arrangement(arrangement.zone_order, new_order, arrangement.topology)


def rotate(arrangement: Arrangement, direction: str) -> Arrangement:
    """Cyclically shift the zone order by one position.

    "right" moves every zone one position later (the last becomes first),
    "left" the opposite; for hoops this changes which zone sits at
    12 o'clock.
    """
    if direction not in ("left", "right"):
        raise InvalidCommandError(f"unknown rotate direction {direction!r}")
    order = arrangement.zone_order
    if len(order) <= 1:
        return arrangement
    if direction == "right":
        order = order[-1:] + order[:-1]
    else:
        order = order[1:] + order[:1]
    return Arrangement(order, arrangement.set_order, arrangement.topology)


def reorder_for_set(
    system: SetSystem,
    arrangement: Arrangement,
    set_index: int,
    *,
    exact_threshold: int = EXACT_THRESHOLD,
) -> Arrangement:
    """Group every zone containing the set at the front of the order.

    The chosen set ends up with exactly one run starting at position 0
    (12 o'clock / leftmost). Within that constraint both blocks are
    ordered to minimize the other sets' segment total: exhaustively for
    small instances, otherwise by block-preserving local search. If the
    current order already satisfies the constraint at an optimal
    objective it is returned unchanged.
    """
    if not (0 <= set_index < system.n_sets):
        raise InvalidSetError(f"set index {set_index} out of range")
    _check_dimensions(system, arrangement)
    masks = list(system.zone_masks())
    bit = 1 << set_index
    others = [mask & ~bit for mask in masks]
    in_block = [z for z in arrangement.zone_order if masks[z] & bit]
    out_block = [z for z in arrangement.zone_order if not masks[z] & bit]
    k = len(in_block)
    m = system.n_zones
    cyclic = arrangement.topology == CYCLIC
    topology = CYCLIC if cyclic else LINEAR

    current = list(arrangement.zone_order)
    current_valid = all(bool(masks[current[p]] & bit) == (p < k) for p in range(m))

    # Same search budget as the unconstrained exact optimizer: the block
    # structure leaves k!*(m-k)! orders, often far fewer than m!.
    budget = math.factorial(min(exact_threshold, m))
    if math.factorial(k) * math.factorial(m - k) <= budget:
        best = _exact_blocks(others, sorted(in_block), sorted(out_block), cyclic)
    else:
        dist = [[(a ^ b).bit_count() for b in others] for a in others]
        best = _block_local_search(in_block + out_block, others, dist, k, cyclic)
        nn = _block_nearest_neighbor(sorted(in_block), sorted(out_block), dist)
        nn = _block_local_search(nn, others, dist, k, cyclic)
        if order_total(others, nn, topology) < order_total(others, best, topology):
            best = nn

    if current_valid and order_total(others, current, topology) <= order_total(
        others, best, topology
    ):
        return arrangement
    return Arrangement(tuple(best), arrangement.set_order, arrangement.topology)


def _exact_blocks(
    others: list[int], in_block: list[int], out_block: list[int], cyclic: bool
) -> list[int]:
    """Branch-and-bound over block-respecting orders, minimizing other-set runs."""
    m = len(in_block) + len(out_block)
    k = len(in_block)
    best_cost: int | None = None
    best_order: list[int] = in_block + out_block

    order: list[int] = []
    used: set[int] = set()

    def extend(prev_mask: int, cost: int) -> None:
        nonlocal best_cost, best_order
        if best_cost is not None and cost >= best_cost:
            return
        pos = len(order)
        if pos == m:
            if cyclic:
                cost += (others[order[-1]] ^ others[order[0]]).bit_count()
                if best_cost is not None and cost >= best_cost:
                    return
            best_cost = cost
            best_order = order.copy()
            return
        pool = in_block if pos < k else out_block
        for z in pool:
            if z in used:
                continue
            used.add(z)
            order.append(z)
            if cyclic:
                step = (prev_mask ^ others[z]).bit_count() if pos > 0 else 0
            else:
                step = (others[z] & ~prev_mask).bit_count()
            extend(others[z], cost + step)
            order.pop()
            used.discard(z)

    extend(0, 0)
    return best_order


def _block_nearest_neighbor(
    in_block: list[int], out_block: list[int], dist: list[list[int]]
) -> list[int]:
    def chain(pool: list[int]) -> list[int]:
        if not pool:
            return []
        current = pool[0]
        rest = set(pool[1:])
        out = [current]
        while rest:
            current = min(rest, key=lambda z: (dist[current][z], z))
            out.append(current)
            rest.remove(current)
        return out

    return chain(in_block) + chain(out_block)


def _block_local_search(
    order: list[int], others: list[int], dist: list[list[int]], k: int, cyclic: bool
) -> list[int]:
    """2-opt restricted to reversals that stay inside one block."""
    m = len(order)
    topology = CYCLIC if cyclic else LINEAR
    current = order_total(others, order, topology)
    improved = True
    while improved:
        improved = False
        for lo, hi in ((0, k - 1), (k, m - 1)):
            for i in range(lo, hi):
                for j in range(i + 1, hi + 1):
                    cand = order[:i] + order[i : j + 1][::-1] + order[j + 1 :]
                    cost = order_total(others, cand, topology)
                    if cost < current:
                        order = cand
                        current = cost
                        improved = True
    return order
