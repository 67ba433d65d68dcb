"""The Euler Bratteli graph, its reverse, and finite root paths (cylinders).

Vertex (n, k) sits at level n, column k. A *left turn* goes (n, k) -> (n+1, k)
and a *right turn* goes (n, k) -> (n+1, k+1). In the standard orientation the
left bundle has k+1 parallel edges and the right bundle n-k+1; the reverse
orientation swaps the two. Parallel indices are 1-based.

Edges terminating at a vertex are totally ordered left to right: first the
right-turn bundle arriving from (n-1, k-1), then the left-turn bundle arriving
from (n-1, k), each in parallel-index order.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator

from .combinatorics import eulerian


class Orientation(enum.Enum):
    STANDARD = "standard"
    REVERSE = "reverse"


class Turn(enum.Enum):
    LEFT = "L"
    RIGHT = "R"


@dataclass(frozen=True, order=True, slots=True)
class Vertex:
    level: int
    column: int

    def __post_init__(self):
        if not 0 <= self.column <= self.level:
            raise ValueError(f"invalid vertex ({self.level}, {self.column})")

    def __str__(self) -> str:
        return f"({self.level},{self.column})"


ROOT = Vertex(0, 0)


def bundle_size(v: Vertex, turn: Turn, orientation: Orientation = Orientation.STANDARD) -> int:
    """Number of parallel edges leaving v with the given turn."""
    n, k = v.level, v.column
    left, right = k + 1, n - k + 1
    if orientation is Orientation.REVERSE:
        left, right = right, left
    return left if turn is Turn.LEFT else right


@dataclass(frozen=True, slots=True)
class Edge:
    source: Vertex
    turn: Turn
    index: int

    @property
    def target(self) -> Vertex:
        dk = 1 if self.turn is Turn.RIGHT else 0
        return Vertex(self.source.level + 1, self.source.column + dk)

    def is_valid(self, orientation: Orientation = Orientation.STANDARD) -> bool:
        return 1 <= self.index <= bundle_size(self.source, self.turn, orientation)

    def token(self) -> str:
        return f"{self.turn.value}{self.index}"


class PathError(ValueError):
    pass


@dataclass(frozen=True)
class Cylinder:
    """A finite edge path starting at the root.

    Also serves as a path into a fixed terminal vertex for the adic order.
    """

    edges: tuple[Edge, ...] = ()
    orientation: Orientation = Orientation.STANDARD

    def __post_init__(self):
        v = ROOT
        for e in self.edges:
            if e.source != v:
                raise PathError(f"edge {e.token()} starts at {e.source}, expected {v}")
            if not e.is_valid(self.orientation):
                raise PathError(f"parallel index out of range: {e.token()} at {e.source}")
            v = e.target

    @classmethod
    def _trusted(cls, edges: tuple[Edge, ...], orientation: Orientation) -> "Cylinder":
        # for paths that are valid by construction
        c = object.__new__(cls)
        object.__setattr__(c, "edges", edges)
        object.__setattr__(c, "orientation", orientation)
        return c

    @classmethod
    def from_turns(cls, steps, orientation: Orientation = Orientation.STANDARD) -> "Cylinder":
        """Build from an iterable of (turn, index) pairs, turn given as Turn or 'L'/'R'."""
        edges = []
        v = ROOT
        for turn, index in steps:
            e = Edge(v, Turn(turn), int(index))
            edges.append(e)
            v = e.target
        return cls(tuple(edges), orientation)

    @classmethod
    def parse(cls, text: str, orientation: Orientation = Orientation.STANDARD) -> "Cylinder":
        """Parse the "L1,R1,R1" encoding; the empty string is the empty cylinder."""
        text = text.strip()
        if not text:
            return cls((), orientation)
        steps = []
        for tok in text.split(","):
            m = re.fullmatch(r"\s*([LRlr])\s*(\d+)\s*", tok)
            if m is None:
                raise PathError(f"bad edge token {tok!r}")
            steps.append((m.group(1).upper(), int(m.group(2))))
        return cls.from_turns(steps, orientation)

    def encode(self) -> str:
        return ",".join(e.token() for e in self.edges)

    def __str__(self) -> str:
        return self.encode()

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def terminal(self) -> Vertex:
        return self.edges[-1].target if self.edges else ROOT

    @property
    def right_turns(self) -> int:
        return sum(1 for e in self.edges if e.turn is Turn.RIGHT)

    def vertices(self) -> list[Vertex]:
        return [ROOT] + [e.target for e in self.edges]

    def extend(self, edge: Edge) -> "Cylinder":
        return Cylinder(self.edges + (edge,), self.orientation)

    def truncate(self, length: int) -> "Cylinder":
        return Cylinder(self.edges[:length], self.orientation)


def outgoing_edges(v: Vertex, orientation: Orientation = Orientation.STANDARD) -> list[Edge]:
    """All n+2 edges leaving v: the left bundle, then the right bundle."""
    out = [Edge(v, Turn.LEFT, i) for i in range(1, bundle_size(v, Turn.LEFT, orientation) + 1)]
    out += [Edge(v, Turn.RIGHT, i) for i in range(1, bundle_size(v, Turn.RIGHT, orientation) + 1)]
    return out


def incoming_edges(v: Vertex, orientation: Orientation = Orientation.STANDARD) -> list[Edge]:
    """Edges terminating at v, in increasing order."""
    if v.level < 1:
        raise ValueError("the root has no incoming edges")
    n, k = v.level, v.column
    out = []
    if k >= 1:
        src = Vertex(n - 1, k - 1)
        out += [Edge(src, Turn.RIGHT, i) for i in range(1, bundle_size(src, Turn.RIGHT, orientation) + 1)]
    if k <= n - 1:
        src = Vertex(n - 1, k)
        out += [Edge(src, Turn.LEFT, i) for i in range(1, bundle_size(src, Turn.LEFT, orientation) + 1)]
    return out


def incoming_rank(e: Edge, orientation: Orientation = Orientation.STANDARD) -> int:
    """0-based position of e in the incoming order at its target."""
    if e.turn is Turn.RIGHT:
        return e.index - 1
    t = e.target
    offset = 0
    if t.column >= 1:
        offset = bundle_size(Vertex(t.level - 1, t.column - 1), Turn.RIGHT, orientation)
    return offset + e.index - 1


def incoming_count(v: Vertex, orientation: Orientation = Orientation.STANDARD) -> int:
    n, k = v.level, v.column
    total = 0
    if k >= 1:
        total += bundle_size(Vertex(n - 1, k - 1), Turn.RIGHT, orientation)
    if k <= n - 1:
        total += bundle_size(Vertex(n - 1, k), Turn.LEFT, orientation)
    return total


def count_paths_between(
    v1: Vertex, v2: Vertex, orientation: Orientation = Orientation.STANDARD
) -> int:
    """Multiplicity-weighted number of edge paths from v1 down to v2."""
    if v1.level > v2.level:
        raise ValueError(f"{v1} lies below {v2}")
    # counts[j] = paths from v1 to (level, v1.column + j)
    counts = [1]
    for n in range(v1.level, v2.level):
        nxt = [0] * (len(counts) + 1)
        for j, c in enumerate(counts):
            if not c:
                continue
            v = Vertex(n, v1.column + j)
            nxt[j] += c * bundle_size(v, Turn.LEFT, orientation)
            nxt[j + 1] += c * bundle_size(v, Turn.RIGHT, orientation)
        counts = nxt
    j = v2.column - v1.column
    return counts[j] if 0 <= j < len(counts) else 0


def level_dimensions(n: int, orientation: Orientation = Orientation.STANDARD) -> list[int]:
    """Root path counts into every vertex of level n, by graph DP."""
    row = [1]
    for m in range(n):
        nxt = [0] * (m + 2)
        for k, c in enumerate(row):
            v = Vertex(m, k)
            nxt[k] += c * bundle_size(v, Turn.LEFT, orientation)
            nxt[k + 1] += c * bundle_size(v, Turn.RIGHT, orientation)
        row = nxt
    return row


def dim_vertex(n: int, k: int, orientation: Orientation = Orientation.STANDARD) -> int:
    """Number of root paths into (n, k).

    In the standard orientation this is the Eulerian number; the DP value and
    the recursion value are computed separately and required to agree.
    """
    v = Vertex(n, k)
    dp = count_paths_between(ROOT, v, orientation)
    if orientation is Orientation.STANDARD:
        a = eulerian(n, k)
        if dp != a:
            raise AssertionError(f"graph DP {dp} != A({n},{k}) = {a}")
    return dp


class EnumerationLimitError(ValueError):
    def __init__(self, vertex: Vertex, count: int, limit: int):
        super().__init__(f"{count} paths into {vertex} exceed the limit {limit}")
        self.vertex = vertex
        self.count = count
        self.limit = limit


def iter_paths_to(v: Vertex, orientation: Orientation = Orientation.STANDARD) -> Iterator[Cylinder]:
    """Yield every root path into v (no size guard)."""

    def back(u: Vertex, suffix: tuple[Edge, ...]):
        if u.level == 0:
            yield Cylinder._trusted(suffix, orientation)
            return
        for e in incoming_edges(u, orientation):
            yield from back(e.source, (e,) + suffix)

    yield from back(v, ())


def enumerate_paths_to(
    v: Vertex, limit: int, orientation: Orientation = Orientation.STANDARD
) -> list[Cylinder]:
    """All root paths into v, refusing when there are more than `limit`."""
    count = count_paths_between(ROOT, v, orientation)
    if count > limit:
        raise EnumerationLimitError(v, count, limit)
    return list(iter_paths_to(v, orientation))


def iter_cylinders(length: int, orientation: Orientation = Orientation.STANDARD) -> Iterator[Cylinder]:
    """Every root cylinder of the given length, depth-first."""

    def walk(c: Cylinder):
        if len(c) == length:
            yield c
            return
        for e in outgoing_edges(c.terminal, orientation):
            yield from walk(c.extend(e))

    yield from walk(Cylinder((), orientation))
