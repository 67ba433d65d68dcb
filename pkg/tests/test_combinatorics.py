import itertools
import math
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from euler_adic.combinatorics import EulerianTable, binomial, eulerian, factorial, falls, rises


def brute_rise_counts(n):
    c = Counter()
    for p in itertools.permutations(range(1, n + 2)):
        c[sum(a < b for a, b in zip(p, p[1:]))] += 1
    return c


@pytest.mark.parametrize("n,k,expected", [(0, 0, 1), (5, 3, 302), (5, 0, 1), (5, 5, 1), (3, -1, 0), (3, 4, 0)])
def test_eulerian_values(n, k, expected):
    assert eulerian(n, k) == expected


@pytest.mark.parametrize("n", range(8))
def test_eulerian_matches_permutation_count(n):
    counts = brute_rise_counts(n)
    assert [eulerian(n, k) for k in range(n + 1)] == [counts[k] for k in range(n + 1)]


def test_row_sums_and_symmetry():
    for n in range(13):
        row = [eulerian(n, k) for k in range(n + 1)]
        assert sum(row) == factorial(n + 1)
        assert row == row[::-1]


def test_table_grows_on_demand():
    t = EulerianTable()
    assert t.max_level == 0
    assert t(300, 150) > 0
    assert t.max_level == 300
    assert sum(t.row(300)) == math.factorial(301)


def test_binomial_zeroing():
    assert binomial(4, 2) == 6
    assert binomial(4, 0) == 1
    assert binomial(3, 5) == 0
    assert binomial(3, -1) == 0
    with pytest.raises(ValueError):
        binomial(-1, 0)


def test_factorial():
    assert factorial(0) == 1
    assert factorial(4) == 24


@pytest.mark.parametrize(
    "w,r,f",
    [("2341", 2, 1), ("1234567", 6, 0), ("974685", 2, 3), ("1", 0, 0)],
)
def test_rises_falls(w, r, f):
    assert rises(w) == r
    assert falls(w) == f


def test_duplicates_rejected():
    with pytest.raises(ValueError):
        rises([1, 2, 2])
    with pytest.raises(ValueError):
        falls([])


@given(st.permutations(list(range(12))).flatmap(lambda p: st.integers(1, 12).map(lambda m: p[:m])))
def test_rises_plus_falls(w):
    assert rises(w) + falls(w) == len(w) - 1
