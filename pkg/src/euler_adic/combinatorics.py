"""Eulerian numbers, binomials, factorials and rise/fall statistics.

All values are Python ints, so nothing overflows at the levels used by the
dimension experiments (a few hundred).
"""

from __future__ import annotations

import math
import threading
from typing import Sequence


class EulerianTable:
    """Triangular table of Eulerian numbers A(n, k), grown bottom-up on demand.

    Row n holds A(n, 0..n). Growth happens under a lock; reads of rows that
    already exist never mutate anything.
    """

    def __init__(self, max_level: int = 0):
        self._rows: list[list[int]] = [[1]]
        self._lock = threading.Lock()
        self.ensure(max_level)

    @property
    def max_level(self) -> int:
        return len(self._rows) - 1

    def ensure(self, level: int) -> None:
        if level <= self.max_level:
            return
        with self._lock:
            rows = self._rows
            while len(rows) <= level:
                n = len(rows)
                prev = rows[-1]
                row = [0] * (n + 1)
                for k in range(n + 1):
                    left = (n - k + 1) * prev[k - 1] if k >= 1 else 0
                    right = (k + 1) * prev[k] if k <= n - 1 else 0
                    row[k] = left + right
                rows.append(row)

    def row(self, n: int) -> tuple[int, ...]:
        if n < 0:
            raise ValueError(f"level must be non-negative, got {n}")
        self.ensure(n)
        return tuple(self._rows[n])

    def __call__(self, n: int, k: int) -> int:
        if n < 0:
            raise ValueError(f"level must be non-negative, got {n}")
        if k < 0 or k > n:
            return 0
        self.ensure(n)
        return self._rows[n][k]


_TABLE = EulerianTable(16)


def eulerian_table() -> EulerianTable:
    """The process-wide shared table."""
    return _TABLE


def eulerian(n: int, k: int) -> int:
    """A(n, k): permutations of {1, ..., n+1} with exactly k rises.

    Zero for k outside 0..n.
    """
    return _TABLE(n, k)


def binomial(n: int, m: int) -> int:
    """C(n, m), zero when m < 0 or m > n."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if m < 0 or m > n:
        return 0
    return math.comb(n, m)


def factorial(n: int) -> int:
    return math.factorial(n)


def _check_distinct(w: Sequence) -> None:
    if len(w) < 1:
        raise ValueError("statistic undefined on an empty sequence")
    if len(set(w)) != len(w):
        raise ValueError(f"entries must be pairwise distinct: {list(w)!r}")


def rises(w: Sequence) -> int:
    """Number of adjacent positions with w[j] < w[j+1]."""
    _check_distinct(w)
    return sum(1 for a, b in zip(w, w[1:]) if a < b)


def falls(w: Sequence) -> int:
    """Number of adjacent positions with w[j] > w[j+1]."""
    _check_distinct(w)
    return sum(1 for a, b in zip(w, w[1:]) if a > b)
