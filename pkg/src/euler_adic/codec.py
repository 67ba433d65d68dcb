"""Cylinders <-> permutations, projection, and the cluster machinery.

A root cylinder of length n ending at (n, k) corresponds to a permutation of
{1, ..., n+1} with k rises. Walking the cylinder edge by edge, the new
maximum n+2 is inserted into one of the n+2 gaps of the current permutation
(both ends included). Every gap raises exactly one of the two statistics by
one: a left turn with parallel index i uses the i-th fall-adding gap from
the left, a right turn the i-th rise-adding gap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .combinatorics import rises
from .graph import Cylinder, Orientation, Turn

Permutation = tuple[int, ...]


def gap_turn(perm: Sequence[int], gap: int) -> Turn:
    """Which statistic inserting a new maximum at `gap` increases.

    LEFT means one more fall, RIGHT one more rise.
    """
    if gap == 0:
        return Turn.LEFT
    if gap == len(perm):
        return Turn.RIGHT
    return Turn.LEFT if perm[gap - 1] < perm[gap] else Turn.RIGHT


def _gaps_of(perm: Sequence[int], turn: Turn) -> list[int]:
    return [g for g in range(len(perm) + 1) if gap_turn(perm, g) is turn]


def path_to_perm(F: Cylinder) -> Permutation:
    if F.orientation is not Orientation.STANDARD:
        raise ValueError("the permutation codec is defined for the standard orientation only")
    perm = [1]
    for e in F.edges:
        gaps = _gaps_of(perm, e.turn)
        perm.insert(gaps[e.index - 1], len(perm) + 1)
    return tuple(perm)


def check_permutation(perm: Sequence[int]) -> Permutation:
    p = tuple(int(x) for x in perm)
    if sorted(p) != list(range(1, len(p) + 1)):
        raise ValueError(f"not a permutation of 1..{len(p)}: {list(p)!r}")
    return p


def perm_to_path(perm: Sequence[int]) -> Cylinder:
    """Inverse of path_to_perm: peel off the largest symbol one at a time."""
    p = list(check_permutation(perm))
    if len(p) < 1:
        raise ValueError("empty permutation")
    steps: list[tuple[Turn, int]] = []
    while len(p) > 1:
        gap = p.index(len(p))
        del p[gap]
        turn = gap_turn(p, gap)
        steps.append((turn, _gaps_of(p, turn).index(gap) + 1))
    return Cylinder.from_turns(reversed(steps))


def project(perm: Sequence[int]) -> Permutation:
    """Delete the largest symbol."""
    p = check_permutation(perm)
    if len(p) < 2:
        raise ValueError("nothing to delete from a permutation of length < 2")
    m = len(p)
    return tuple(x for x in p if x != m)


def format_perm(perm: Sequence[int]) -> str:
    """Digits when every entry is a single digit, else comma-separated."""
    if len(perm) <= 9:
        return "".join(str(x) for x in perm)
    return ",".join(str(x) for x in perm)


def parse_perm(text: str) -> Permutation:
    text = text.strip()
    if not text:
        raise ValueError("empty permutation text")
    if "," in text:
        items = [int(tok) for tok in text.split(",")]
    else:
        if not text.isdigit():
            raise ValueError(f"bad permutation text {text!r}")
        items = [int(ch) for ch in text]
    return check_permutation(items)


@dataclass(frozen=True)
class OrderedPartition:
    """Consecutive blocks whose concatenation is the pattern."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if any(len(b) == 0 for b in self.blocks):
            raise ValueError("blocks must be non-empty")

    @property
    def pattern(self) -> Permutation:
        return tuple(itertools.chain.from_iterable(self.blocks))

    @property
    def rises(self) -> int:
        """Total rises inside the blocks, r(M)."""
        return sum(rises(b) for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return "{" + ",".join("".join(map(str, b)) for b in self.blocks) + "}"


def ordered_partitions(pattern: Sequence[int], m: int) -> list[OrderedPartition]:
    """All ways to cut `pattern` into m consecutive non-empty blocks."""
    p = tuple(pattern)
    if m < 1 or m > len(p):
        return []
    out = []
    for cuts in itertools.combinations(range(1, len(p)), m - 1):
        bounds = (0,) + cuts + (len(p),)
        out.append(OrderedPartition(tuple(p[a:b] for a, b in zip(bounds, bounds[1:]))))
    return out


def clusters(sigma: Sequence[int], n0: int) -> tuple[OrderedPartition, Permutation]:
    """Split sigma into maximal runs of the small symbols 1..n0+1 and the rest.

    Returns the runs as an ordered partition of the small-symbol pattern,
    together with sigma with the small symbols removed.
    """
    small = n0 + 1
    s = tuple(sigma)
    if sorted(x for x in s if x <= small) != list(range(1, small + 1)):
        raise ValueError(f"sigma must contain 1..{small}")
    blocks: list[tuple[int, ...]] = []
    run: list[int] = []
    rest: list[int] = []
    for x in s:
        if x <= small:
            run.append(x)
        else:
            if run:
                blocks.append(tuple(run))
                run = []
            rest.append(x)
    if run:
        blocks.append(tuple(run))
    if not rest:
        raise ValueError("no symbols above n0+1: the remainder would be empty")
    return OrderedPartition(tuple(blocks)), tuple(rest)


def reinsert(partition: OrderedPartition, rest: Sequence[int], gaps: Sequence[int]) -> Permutation:
    """Put block j of the partition into gap gaps[j] of `rest` (strictly increasing gaps)."""
    if len(gaps) != len(partition) or list(gaps) != sorted(set(gaps)):
        raise ValueError("need one strictly increasing gap per block")
    out: list[int] = []
    blocks = dict(zip(gaps, partition.blocks))
    for g in range(len(rest) + 1):
        if g in blocks:
            out.extend(blocks[g])
        if g < len(rest):
            out.append(rest[g])
    return tuple(out)


def cluster_gaps(sigma: Sequence[int], n0: int) -> list[int]:
    """Gap index in t(sigma) occupied by each cluster, left to right."""
    small = n0 + 1
    gaps = []
    seen_large = 0
    prev_small = False
    for x in sigma:
        if x <= small:
            if not prev_small:
                gaps.append(seen_large)
            prev_small = True
        else:
            seen_large += 1
            prev_small = False
    return gaps


def drop_last_edge(F: Cylinder) -> Cylinder:
    return F.truncate(len(F) - 1)


__all__ = [
    "Permutation",
    "OrderedPartition",
    "path_to_perm",
    "perm_to_path",
    "project",
    "clusters",
    "ordered_partitions",
    "reinsert",
    "cluster_gaps",
    "format_perm",
    "parse_perm",
    "gap_turn",
    "drop_last_edge",
]
