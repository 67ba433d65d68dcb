"""Counting root paths through a cylinder that reach a given vertex.

dim(F, (n, k)) is the number of permutations of {1, ..., n+1} with k rises in
which 1..n0+1 appear in the order pi(F). The regrouped cluster sum computes it
as

    sum_r  beta(F, r) * A(n - n0 - 1, r),   beta(F, r) = sum_m alpha(F, r, m)

where alpha sums, over ordered partitions M of pi(F) into m clusters, the
number of ways to drop the clusters into a permutation rho of the larger
symbols that has r rises. Two brute-force oracles back the formula up: a
direct scan of the symmetric group and a graph DP from the terminal vertex.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .codec import OrderedPartition, ordered_partitions, path_to_perm
from .combinatorics import binomial, eulerian
from .graph import Cylinder, Vertex, count_paths_between


class Variant(enum.Enum):
    SLOT_CORRECTED = "slot"
    AS_PRINTED = "literal"


@dataclass(frozen=True)
class DimQuery:
    F: Cylinder
    n: int
    k: int

    def __post_init__(self):
        if len(self.F) < 1:
            raise ValueError("the cylinder must have at least one edge")
        if self.n < len(self.F):
            raise ValueError(f"target level {self.n} lies above the cylinder's end {len(self.F)}")

    @property
    def n0(self) -> int:
        return len(self.F)

    @property
    def k0(self) -> int:
        return self.F.terminal.column

    @cached_property
    def pattern(self) -> tuple[int, ...]:
        return path_to_perm(self.F)


def placement_count(M: OrderedPartition, r: int, q: DimQuery, variant: Variant = Variant.SLOT_CORRECTED) -> int:
    """Ways to place the clusters of M into a rho with r rises so the result has k rises.

    j = k - r - r(M) clusters must land in rise-adding gaps (the start of rho
    or one of its falls: n - n0 - r of them); the remaining m - j go into the
    r + 1 other gaps (its rises or the end).
    """
    n, k, n0, k0 = q.n, q.k, q.n0, q.k0
    m = len(M)
    j = k - r - M.rises
    if variant is Variant.SLOT_CORRECTED:
        return binomial(n - n0 - r, j) * binomial(r + 1, m - j)
    a = n - n0 - (k - k0) + 1
    b = k - k0 + 1
    if a < 0 or b < 0:
        return 0
    return binomial(a, j) * binomial(b, m - j)


def alpha(q: DimQuery, r: int, m: int, variant: Variant = Variant.SLOT_CORRECTED) -> int:
    return sum(placement_count(M, r, q, variant) for M in ordered_partitions(q.pattern, m))


def beta(q: DimQuery, r: int, variant: Variant = Variant.SLOT_CORRECTED) -> int:
    return sum(alpha(q, r, m, variant) for m in range(1, q.n0 + 2))


def dominant_alpha(n: int, k: int, n0: int, r: int) -> int:
    """alpha(F, r, n0+1) in closed form: all singletons, so r(M) = 0 and pi(F) drops out."""
    return binomial(n - n0 - r, k - r) * binomial(r + 1, n0 + 1 - (k - r))


def dim_formula(q: DimQuery, variant: Variant = Variant.SLOT_CORRECTED) -> int:
    n, k, n0 = q.n, q.k, q.n0
    if n == n0:
        return int(k == q.k0)
    pattern = q.pattern
    parts = [ordered_partitions(pattern, m) for m in range(1, n0 + 2)]
    total = 0
    for r in range(max(0, k - (n0 + 1)), min(k, n - n0 - 1) + 1):
        a = eulerian(n - n0 - 1, r)
        if not a:
            continue
        b = sum(placement_count(M, r, q, variant) for group in parts for M in group)
        total += b * a
    return total


# -- oracles ---------------------------------------------------------------

PERM_ORACLE_MAX_N = 11
_TAIL = 8
_PATTERN_WIDTH = 5


class OracleTooLarge(ValueError):
    pass


def _perm_block(symbols: Sequence[int]) -> np.ndarray:
    return np.array(list(itertools.permutations(symbols)), dtype=np.int8).reshape(-1, len(symbols))


@lru_cache(maxsize=None)
def _tail_index(width: int) -> np.ndarray:
    return _perm_block(range(width))


@lru_cache(maxsize=None)
def _tail_rises(width: int) -> np.ndarray:
    idx = _tail_index(width)
    return np.count_nonzero(idx[:, 1:] > idx[:, :-1], axis=1).astype(np.int64)


@lru_cache(maxsize=None)
def rise_pattern_histogram(n: int) -> dict[tuple[tuple[int, ...], int], int]:
    """Scan every permutation of {1..n+1}; count by (order of the smallest symbols, rises).

    The key pattern is the left-to-right order of 1..min(5, n+1). Patterns for
    fewer small symbols are obtained by deleting the larger ones.
    """
    if n > PERM_ORACLE_MAX_N:
        raise OracleTooLarge(f"permutation scan over S_{n + 1} is too large (n <= {PERM_ORACLE_MAX_N})")
    size = n + 1
    width = min(_PATTERN_WIDTH, size)
    base = width + 1
    nbins = base ** width * size
    hist = np.zeros(nbins, dtype=np.int64)
    weights = base ** np.arange(width - 1, -1, -1, dtype=np.int64)
    symbols = list(range(1, size + 1))
    tail = min(_TAIL, size)
    index = _tail_index(tail)
    # rest is sorted, so a tail block has the same rises as its index row
    tail_rises = _tail_rises(tail)
    for prefix in itertools.permutations(symbols, size - tail):
        rest = np.array([s for s in symbols if s not in prefix], dtype=np.int8)
        block = rest[index]
        k = tail_rises
        if prefix:
            k = k + (sum(1 for a, b in zip(prefix, prefix[1:]) if a < b) + (block[:, 0] > prefix[-1]))
        head = [x for x in prefix if x <= width]
        code = sum(int(x) * int(w) for x, w in zip(head, weights))
        need = width - len(head)
        if need:
            small = block[block <= width].reshape(-1, need).astype(np.int64)
            code = code + small @ weights[len(head):]
        else:
            code = np.full(len(block), code, dtype=np.int64)
        hist += np.bincount(code * size + k, minlength=nbins)
    out: dict[tuple[tuple[int, ...], int], int] = {}
    for idx in np.flatnonzero(hist):
        code, k = divmod(int(idx), size)
        digits = []
        for _ in range(width):
            code, d = divmod(code, base)
            digits.append(d)
        out[(tuple(reversed(digits)), k)] = int(hist[idx])
    return out


def dim_perm_oracle(q: DimQuery) -> int:
    """Count permutations of {1..n+1} with k rises containing pi(F) as the order of 1..n0+1."""
    pattern = q.pattern
    if len(pattern) > _PATTERN_WIDTH:
        raise OracleTooLarge(f"cylinders longer than {_PATTERN_WIDTH - 1} edges are not supported")
    small = len(pattern)
    total = 0
    for (full, k), c in rise_pattern_histogram(q.n).items():
        if k == q.k and tuple(x for x in full if x <= small) == pattern:
            total += c
    return total


def dim_graph_oracle(q: DimQuery) -> int:
    return count_paths_between(q.F.terminal, Vertex(q.n, q.k)) if 0 <= q.k <= q.n else 0


@dataclass(frozen=True)
class OracleReport:
    graph: int
    permutations: int | None

    @property
    def consistent(self) -> bool:
        return self.permutations is None or self.permutations == self.graph

    @property
    def value(self) -> int:
        return self.graph


def dim_bruteforce(q: DimQuery, use_permutations: bool | None = None) -> OracleReport:
    """Both oracles. The permutation scan runs only when it fits the size guard,
    unless forced on, in which case an oversize query raises OracleTooLarge."""
    graph = dim_graph_oracle(q)
    if use_permutations is None:
        use_permutations = q.n <= PERM_ORACLE_MAX_N and q.n0 < _PATTERN_WIDTH
    perms = dim_perm_oracle(q) if use_permutations else None
    return OracleReport(graph, perms)


# -- ratio experiment ------------------------------------------------------

@dataclass(frozen=True)
class RatioRow:
    n: int
    k: int
    dim_F: int
    dim_Fprime: int

    @property
    def defined(self) -> bool:
        return self.dim_Fprime != 0 and self.dim_F != 0

    @property
    def ratio(self) -> Fraction | None:
        return Fraction(self.dim_F, self.dim_Fprime) if self.dim_Fprime else None

    @property
    def abs_dev(self) -> Fraction | None:
        r = self.ratio
        return abs(r - 1) if r is not None else None

    def as_dict(self) -> dict:
        r = self.ratio
        dev = self.abs_dev
        return {
            "n": self.n,
            "k": self.k,
            "dim_F": str(self.dim_F),
            "dim_Fprime": str(self.dim_Fprime),
            "ratio_num": str(r.numerator) if r is not None else "",
            "ratio_den": str(r.denominator) if r is not None else "",
            "abs_dev": _fmt_float(dev),
            "flag": "" if self.defined else "zero_dimension",
        }


def _fmt_float(x: Fraction | None) -> str:
    if x is None:
        return ""
    if x == 0:
        return "0"
    # float() of a huge Fraction is exact-rounded and never overflows here: |x| is small
    return repr(float(x))


def diagonal_schedule(ns: Iterable[int]) -> list[tuple[int, int]]:
    return [(n, n // 2) for n in ns]


def ratio_table(
    F: Cylinder,
    Fprime: Cylinder,
    schedule: Iterable[tuple[int, int]],
    variant: Variant = Variant.SLOT_CORRECTED,
) -> list[RatioRow]:
    if len(F) != len(Fprime):
        raise ValueError("cylinders must have the same length")
    rows = []
    for n, k in schedule:
        a = dim_formula(DimQuery(F, n, k), variant)
        b = dim_formula(DimQuery(Fprime, n, k), variant)
        rows.append(RatioRow(n, k, a, b))
    return rows


CSV_COLUMNS = ["n", "k", "dim_F", "dim_Fprime", "ratio_num", "ratio_den", "abs_dev"]


def ratio_rows_to_csv(rows: Sequence[RatioRow]) -> str:
    import csv
    import io

    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS + ["flag"], lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow(row.as_dict())
    return buf.getvalue()


def ratio_rows_to_json(rows: Sequence[RatioRow], F: Cylinder, Fprime: Cylinder) -> str:
    doc = {
        "cylinder_F": F.encode(),
        "cylinder_Fprime": Fprime.encode(),
        "rows": [row.as_dict() for row in rows],
    }
    return json.dumps(doc, indent=2)

