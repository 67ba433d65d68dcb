"""Vershik order on paths into a common vertex, and the adic successor map."""

from __future__ import annotations

from .graph import (
    Cylinder,
    Edge,
    Orientation,
    Turn,
    Vertex,
    incoming_count,
    incoming_edges,
    incoming_rank,
)


class IncomparableError(ValueError):
    pass


def compare(x: Cylinder, y: Cylinder) -> int:
    """-1, 0 or 1 as x is less than, equal to or greater than y.

    Paths are compared at the highest level where they disagree, by the
    incoming order of the edges there.
    """
    if len(x) != len(y) or x.terminal != y.terminal:
        raise IncomparableError(f"paths end at {x.terminal} and {y.terminal}")
    if x.orientation is not y.orientation:
        raise IncomparableError("paths live in different orientations")
    for ex, ey in zip(reversed(x.edges), reversed(y.edges)):
        if ex != ey:
            rx = incoming_rank(ex, x.orientation)
            ry = incoming_rank(ey, x.orientation)
            return -1 if rx < ry else 1
    return 0


def _extremal_path_into(v: Vertex, orientation: Orientation, pick_last: bool) -> tuple[Edge, ...]:
    edges: list[Edge] = []
    while v.level > 0:
        incoming = incoming_edges(v, orientation)
        e = incoming[-1] if pick_last else incoming[0]
        edges.append(e)
        v = e.source
    return tuple(reversed(edges))


def minimal_path_into(v: Vertex, orientation: Orientation = Orientation.STANDARD) -> Cylinder:
    return Cylinder._trusted(_extremal_path_into(v, orientation, False), orientation)


def maximal_path_into(v: Vertex, orientation: Orientation = Orientation.STANDARD) -> Cylinder:
    return Cylinder._trusted(_extremal_path_into(v, orientation, True), orientation)


def _step(x: Cylinder, forward: bool) -> Cylinder | None:
    orientation = x.orientation
    for j, e in enumerate(x.edges):
        rank = incoming_rank(e, orientation)
        size = incoming_count(e.target, orientation)
        nxt = rank + 1 if forward else rank - 1
        if 0 <= nxt < size:
            new_edge = incoming_edges(e.target, orientation)[nxt]
            head = _extremal_path_into(new_edge.source, orientation, pick_last=not forward)
            return Cylinder._trusted(head + (new_edge,) + x.edges[j + 1:], orientation)
    return None


def successor(x: Cylinder) -> Cylinder | None:
    """Next path into the same vertex, or None if x is maximal.

    Advances the lowest edge that is not maximal at its terminal vertex and
    replaces everything above it with the minimal path into the new source.
    """
    return _step(x, True)


def predecessor(x: Cylinder) -> Cylinder | None:
    return _step(x, False)


def x_max(k: int, depth: int) -> Cylinder:
    """Truncation to `depth` edges of the maximal path x_max(k).

    Unique path (0,0) -> (k,k), then the rightmost left-turn edge forever.
    """
    if depth < k:
        raise ValueError(f"depth {depth} must be at least k = {k}")
    steps = [(Turn.RIGHT, 1)] * k
    steps += [(Turn.LEFT, k + 1)] * (depth - k)
    return Cylinder.from_turns(steps)


def x_min(k: int, depth: int) -> Cylinder:
    """Truncation to `depth` edges of the minimal path x_min(k).

    Unique path (0,0) -> (k,0), then the first right-turn edge forever, so the
    path eventually sits at columns with level - column = k.
    """
    if depth < k:
        raise ValueError(f"depth {depth} must be at least k = {k}")
    steps = [(Turn.LEFT, 1)] * k
    steps += [(Turn.RIGHT, 1)] * (depth - k)
    return Cylinder.from_turns(steps)


def orbit(v: Vertex, orientation: Orientation = Orientation.STANDARD):
    """Iterate successor from the minimal path into v to the maximal one."""
    x = minimal_path_into(v, orientation)
    while x is not None:
        yield x
        x = successor(x)


__all__ = [
    "IncomparableError",
    "compare",
    "minimal_path_into",
    "maximal_path_into",
    "successor",
    "predecessor",
    "x_max",
    "x_min",
    "orbit",
]
