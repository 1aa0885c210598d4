from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dfc.bounds import (ProblemShape, SingularityProfile, bound_table, conjecture_degree, default_cost,
                        lemma7_bound, thm2_degree, thm3_degree, thm5_degree, thm9_degree)

BIG = ProblemShape(3, 4, 3, 4)
TINY = ProblemShape(1, 0, 1, 1)
EXAMPLE_PROFILE = SingularityProfile(544, 9, ((456, 1),))

shapes = st.builds(ProblemShape, st.integers(1, 4), st.integers(0, 4), st.integers(1, 4), st.integers(0, 4))


@pytest.mark.parametrize("shape, r, expected", [(BIG, 9, 3888), (TINY, 1, 2), (BIG, 10, 2160)])
def test_thm2_values(shape, r, expected):
    assert thm2_degree(shape, r) == expected


def test_thm2_below_minimal_order():
    with pytest.raises(ValueError):
        thm2_degree(BIG, 8)


@pytest.mark.parametrize("shape, r, expected", [(BIG, 9, 1568), (TINY, 1, 3)])
def test_thm3_values(shape, r, expected):
    assert thm3_degree(shape, r) == expected


@pytest.mark.parametrize("r", [0, 10])
def test_thm3_out_of_range(r):
    with pytest.raises(ValueError):
        thm3_degree(BIG, r)


@pytest.mark.parametrize("r_P, d_P", [(2, 1), (3, 2), (5, 3), (8, 4)])
def test_thm3_algebraic_specialization_leading_term(r_P, d_P):
    # L = D - 1 at r = r_P: leading term 4 r_P^2 d_P - r_P^2 / 2, lower terms linear in r_P
    shape = ProblemShape(1, 0, r_P, d_P)
    value = thm3_degree(shape, r_P)
    leading = 4 * r_P * r_P * d_P - Fraction(r_P * r_P, 2)
    assert value - leading == Fraction(3 * r_P, 2) - 1 - 2 * r_P * d_P + d_P


@pytest.mark.parametrize(
    "shape, value, in_scope",
    [(BIG, 544, True), (ProblemShape(2, 2, 2, 2), 48, True), (TINY, conjecture_degree(TINY).value, False)],
)
def test_conjecture_values(shape, value, in_scope):
    c = conjecture_degree(shape)
    assert (c.value, c.in_scope) == (value, in_scope)


@pytest.mark.parametrize("r, expected", [(10, 316), (11, 240), (12, 202), (161, 90)])
def test_thm9_values(r, expected):
    assert thm9_degree(EXAMPLE_PROFILE, r) == expected


def test_thm9_below_order():
    with pytest.raises(ValueError):
        thm9_degree(EXAMPLE_PROFILE, 8)


def test_thm9_ceiling_applies_to_the_sum():
    # two halves: per-term ceilings would give 2, a single outer ceiling gives 1
    prof = SingularityProfile(10, 1, ((1, 1), (1, 1)))
    assert thm9_degree(prof, 1) == 10
    assert thm9_degree(prof, 2) == 10 - 1


@pytest.mark.parametrize("shape, expected", [(BIG, 136), (TINY, 2), (ProblemShape(1, 5, 1, 0), 0)])
def test_lemma7_values(shape, expected):
    assert lemma7_bound(shape) == expected


def test_lemma7_matches_removability_degree():
    assert 544 - lemma7_bound(BIG) == 408


def test_thm5_values():
    assert thm5_degree(136, 544, 9, 1, 10) == 340
    assert thm5_degree(0, 7, 2, 1, 3) == 4
    far = [thm5_degree(136, 544, 9, 1, r) for r in (100, 1000, 10000)]
    assert far == sorted(far, reverse=True)
    assert all(v > 136 for v in far) and far[-1] <= 137


def test_thm5_preconditions():
    with pytest.raises(ValueError):
        thm5_degree(136, 544, 9, 2, 9)
    with pytest.raises(ValueError):
        thm5_degree(136, 544, 9, 0, 20)


@pytest.mark.parametrize("shape, expected", [(BIG, 1), (ProblemShape(3, 1, 1, 2), 3), (ProblemShape(1, 2, 1, 3), 1)])
def test_default_cost(shape, expected):
    assert default_cost(shape) == expected


def test_shape_validation():
    with pytest.raises(ValueError):
        ProblemShape(0, 1, 1, 1)
    with pytest.raises(ValueError):
        SingularityProfile(3, 1, ((4, 1),))


def test_bound_hierarchy():
    assert conjecture_degree(BIG).value <= thm3_degree(BIG, 9) <= thm2_degree(BIG, 9)


@given(shapes, st.integers(0, 20))
def test_thm2_non_increasing(shape, extra):
    r = shape.order + extra
    assert thm2_degree(shape, r + 1) <= thm2_degree(shape, r)


@given(st.integers(0, 60), st.integers(1, 5),
       st.lists(st.tuples(st.integers(0, 10), st.integers(0, 4)), max_size=4), st.integers(0, 40))
def test_thm9_non_increasing(extra_deg, ord_M, factors, extra):
    deg = sum(e for e, _ in factors) + extra_deg
    prof = SingularityProfile(deg, ord_M, tuple(factors))
    r = ord_M + extra
    assert thm9_degree(prof, r + 1) <= thm9_degree(prof, r) <= deg


@given(shapes)
def test_thm3_is_integral_on_its_domain(shape):
    for r in range(1, shape.order + 1):
        assert isinstance(thm3_degree(shape, r), int)


def test_bound_table_columns():
    rows = bound_table(BIG, [9], EXAMPLE_PROFILE, 136)
    row = rows[0]
    assert (row.thm2, row.thm3, row.conjecture, row.thm9) == (3888, 1568, 544, 544)
    rows = bound_table(None, [10, 11, 12], EXAMPLE_PROFILE)
    assert [r.thm9 for r in rows] == [316, 240, 202]
    assert all(r.thm2 is None and r.thm5 is None for r in rows)
