import itertools
from fractions import Fraction

import pytest

from euler_adic.codec import OrderedPartition, path_to_perm, perm_to_path
from euler_adic.combinatorics import eulerian
from euler_adic.dimension import (
    DimQuery,
    OracleTooLarge,
    Variant,
    alpha,
    beta,
    diagonal_schedule,
    dim_bruteforce,
    dim_formula,
    dim_graph_oracle,
    dim_perm_oracle,
    dominant_alpha,
    placement_count,
    ratio_rows_to_csv,
    ratio_rows_to_json,
    ratio_table,
)
from euler_adic.graph import Cylinder, iter_cylinders

SLOT, LIT = Variant.SLOT_CORRECTED, Variant.AS_PRINTED


def cyl(p):
    return perm_to_path(tuple(int(c) for c in p))


def naive_dim(pattern, n, k):
    """Plain itertools scan, independent of the numpy histogram oracle."""
    small = len(pattern)
    total = 0
    for s in itertools.permutations(range(1, n + 2)):
        if sum(a < b for a, b in zip(s, s[1:])) == k and tuple(x for x in s if x <= small) == pattern:
            total += 1
    return total


def test_placement_examples():
    q = DimQuery(cyl("213"), 8, 4)
    M = OrderedPartition(((2,), (1, 3)))
    assert placement_count(M, 3, q, SLOT) == 6
    assert placement_count(M, 3, q, LIT) == 6
    q = DimQuery(cyl("21"), 2, 1)
    M = OrderedPartition(((2,), (1,)))
    assert placement_count(M, 0, q, SLOT) == 1
    assert placement_count(M, 0, q, LIT) == 2


def test_placement_zero_outside_range():
    q = DimQuery(cyl("213"), 8, 4)
    M = OrderedPartition(((2,), (1, 3)))
    # j = k - r - r(M) = 4 - 4 - 1 < 0
    assert placement_count(M, 4, q, SLOT) == 0
    # j = 4 - 0 - 1 = 3 > m = 2
    assert placement_count(M, 0, q, SLOT) == 0


def test_alpha_small_case():
    q = DimQuery(cyl("21"), 2, 1)
    assert alpha(q, 0, 1) == 1
    assert alpha(q, 0, 2) == 1
    assert alpha(q, 0, 3) == 0
    assert beta(q, 0) == 2


@pytest.mark.parametrize("p,expected_slot,expected_lit", [("21", 2, 3), ("12", 2, None)])
def test_dim_at_2_1(p, expected_slot, expected_lit):
    q = DimQuery(cyl(p), 2, 1)
    assert dim_formula(q, SLOT) == expected_slot
    assert naive_dim(tuple(int(c) for c in p), 2, 1) == expected_slot
    if expected_lit is not None:
        assert dim_formula(q, LIT) == expected_lit


def test_dim_at_terminal_vertex():
    F = cyl("2341")
    assert dim_formula(DimQuery(F, 3, 2)) == 1
    assert dim_formula(DimQuery(F, 3, 1)) == 0
    assert dim_bruteforce(DimQuery(F, 3, 2)).graph == 1


def test_empty_cylinder_rejected():
    with pytest.raises(ValueError):
        DimQuery(Cylinder(), 3, 1)
    with pytest.raises(ValueError):
        DimQuery(cyl("213"), 1, 0)


def test_213_at_8_4():
    q = DimQuery(cyl("213"), 8, 4)
    report = dim_bruteforce(q)
    assert report.graph == report.permutations == dim_formula(q) == 26440


def test_numpy_oracle_matches_naive_scan():
    for n0 in range(1, 4):
        for F in iter_cylinders(n0):
            pattern = path_to_perm(F)
            for n in range(n0, 7):
                for k in range(n + 1):
                    q = DimQuery(F, n, k)
                    assert dim_perm_oracle(q) == naive_dim(pattern, n, k)


def test_formula_matches_oracles_small():
    for n0 in range(1, 5):
        for F in iter_cylinders(n0):
            for n in range(n0, 10):
                for k in range(n + 1):
                    q = DimQuery(F, n, k)
                    r = dim_bruteforce(q)
                    assert r.consistent
                    assert dim_formula(q) == r.graph


def test_literal_variant_disagrees_somewhere():
    q = DimQuery(cyl("21"), 2, 1)
    assert dim_formula(q, LIT) != dim_graph_oracle(q)


def test_vertex_sum():
    for n0 in range(1, 4):
        cyls = list(iter_cylinders(n0))
        for n in range(n0, 11):
            for k in range(n + 1):
                assert sum(dim_formula(DimQuery(F, n, k)) for F in cyls) == eulerian(n, k)


def test_dominant_term_identity():
    for n0 in range(1, 6):
        cyls = list(iter_cylinders(n0))
        for n, k in [(n0 + 3, (n0 + 3) // 2), (2 * n0 + 6, n0 + 2), (30, 11)]:
            for r in range(max(0, k - n0 - 1), min(k, n - n0 - 1) + 1):
                values = {alpha(DimQuery(F, n, k), r, n0 + 1) for F in cyls}
                assert values == {dominant_alpha(n, k, n0, r)}


def test_equal_column_invariance():
    for n0 in range(1, 4):
        by_col = {}
        for F in iter_cylinders(n0):
            by_col.setdefault(F.terminal.column, []).append(F)
        for n, k in [(n0 + 4, 3), (12, 6), (20, 7)]:
            for group in by_col.values():
                assert len({dim_formula(DimQuery(F, n, k)) for F in group}) == 1


def test_perm_oracle_guard():
    with pytest.raises(OracleTooLarge):
        dim_perm_oracle(DimQuery(cyl("213"), 12, 6))
    assert dim_bruteforce(DimQuery(cyl("213"), 40, 20)).permutations is None


# frozen from the engine and cross-checked at n = 10 by both oracles
RATIO_213_123 = {
    10: (2643360, 2575404),
    20: (2494876609441415320, 2485431176852895678),
}


def test_ratio_regression():
    rows = ratio_table(cyl("213"), cyl("123"), diagonal_schedule([10, 20]))
    assert {r.n: (r.dim_F, r.dim_Fprime) for r in rows} == RATIO_213_123
    q = DimQuery(cyl("213"), 10, 5)
    assert dim_bruteforce(q).permutations == 2643360


def test_ratio_identical_cylinders():
    F = cyl("2341")
    rows = ratio_table(F, F, diagonal_schedule([5, 9, 17]))
    assert all(r.ratio == 1 for r in rows)


def test_ratio_monotone_for_distinct_columns():
    rows = ratio_table(cyl("213"), cyl("123"), diagonal_schedule([10, 20, 40, 80]))
    devs = [r.abs_dev for r in rows]
    assert all(a > b for a, b in zip(devs, devs[1:]))


def test_ratio_zero_denominator_flagged():
    rows = ratio_table(cyl("123"), cyl("321"), [(3, 0)])
    assert not rows[0].defined
    assert rows[0].as_dict()["flag"] == "zero_dimension"


def test_ratio_serialisation():
    F, G = cyl("213"), cyl("123")
    rows = ratio_table(F, G, [(10, 5)])
    text = ratio_rows_to_csv(rows)
    header, line = text.strip().splitlines()
    assert header.split(",")[:7] == ["n", "k", "dim_F", "dim_Fprime", "ratio_num", "ratio_den", "abs_dev"]
    fields = line.split(",")
    assert Fraction(int(fields[4]), int(fields[5])) == Fraction(2643360, 2575404)
    import json

    doc = json.loads(ratio_rows_to_json(rows, F, G))
    assert doc["rows"][0]["dim_F"] == "2643360"
