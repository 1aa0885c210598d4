from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dfc.compose import InvalidInstance, minimal_annihilator, validate_inputs
from dfc.diffop import DiffOp, primitive_normalize, right_divide
from dfc.exactalg import BiPoly, UniPoly, squarefree_part
from dfc.instance import suite_instance
from dfc.singular import (INFINITY, branch_data_at_infinity, check_witness, degree_schedule, delta_for_thm5,
                          desingularize, lower_hull, operator_newton_height, rational_roots,
                          removability_profile, resultant_multiplicity_diagnostic, upper_hull,
                          weighted_height_sum)

from support import X, op, ypoly

SQRT_OP = op(-1, 2, 4 * X)
EULER_1_3 = op(3, -3 * X, X * X)


def euler(a: int, b: int, s: int = 0) -> DiffOp:
    """Operator with solution basis ``(x - s)^a, (x - s)^b``."""
    t = X - s
    return primitive_normalize(op(a * b, -(a + b - 1) * t, t * t))


# -- hulls and heights -----------------------------------------------------------

def test_hulls():
    pts = [(0, 0), (1, 2), (2, 1), (3, 3)]
    assert lower_hull(pts) == [(0, 0), (2, 1), (3, 3)]
    assert upper_hull(pts) == [(0, 0), (1, 2), (3, 3)]


def test_height_examples():
    poly, h = operator_newton_height(SQRT_OP, INFINITY)
    assert h == 0 and poly.points == ((0, 0), (1, 0), (2, 1))
    assert operator_newton_height(SQRT_OP, 0)[1] == 1
    assert operator_newton_height(op(1, 2, 3), INFINITY)[1] == 0
    assert operator_newton_height(op(X ** 3, 1, X), 5)[1] == 0


def test_height_of_zero_operator():
    with pytest.raises(ValueError):
        operator_newton_height(DiffOp())


ops = st.lists(st.lists(st.integers(-3, 3), min_size=1, max_size=4), min_size=2, max_size=4).map(
    lambda rows: DiffOp(UniPoly(r) for r in rows)).filter(lambda M: not M.is_zero() and M.order >= 1)


@given(ops)
@settings(max_examples=80, deadline=None)
def test_height_at_infinity_bounded_by_degree_gap(M):
    assert operator_newton_height(M, INFINITY)[1] <= M.x_degree - M.lc().degree


@given(ops, st.integers(-3, 3))
@settings(max_examples=80, deadline=None)
def test_ordinary_points_have_height_zero(M, alpha):
    if M.lc()(alpha) != 0:
        assert operator_newton_height(M, alpha)[1] == 0


@given(st.lists(st.integers(-5, 5), min_size=2, max_size=5))
def test_constant_coefficients_have_height_zero(cs):
    M = DiffOp(UniPoly([c]) for c in cs)
    if not M.is_zero():
        assert operator_newton_height(M, INFINITY)[1] == 0


# -- branch data at infinity ------------------------------------------------------

@pytest.mark.parametrize(
    "P, expected",
    [
        (ypoly(-X, 0, 1), [("infinity", Fraction(1, 2), 2)]),
        (ypoly(-X * X, 1), [("infinity", Fraction(2), 1)]),
        (ypoly(-X, 0, 1 + X), [("-1", Fraction(1), 1), ("1", Fraction(1), 1)]),
        (ypoly(-2 * X, 0, 1 + X), [("root of t^2 - 2", Fraction(1), 2)]),
        (ypoly(-X - 2, 0, 1), [("infinity", Fraction(1, 2), 2)]),
    ],
)
def test_branch_data_examples(P, expected):
    data = branch_data_at_infinity(P)
    assert [(e.describe(), e.rho, e.multiplicity) for e in data.entries] == expected
    assert data.total == P.y_degree


bipolys = st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3).map(
    BiPoly.from_table)


@given(bipolys)
@settings(max_examples=60, deadline=None)
def test_branch_multiplicities_sum_to_degree(P):
    try:
        validate_inputs(op(-1, 1), P)
    except InvalidInstance:
        return
    data = branch_data_at_infinity(P)
    assert data.total == P.y_degree
    assert all(e.rho > 0 for e in data.entries)


def test_rational_roots():
    assert rational_roots((2 * X - 1) * (X + 3) * (X * X + 1)) == [Fraction(-3), Fraction(1, 2)]


# -- weighted heights and the degree offset -----------------------------------------

def test_delta_examples():
    assert delta_for_thm5(op(-1, 1), ypoly(-X, 0, 1)) == 6
    assert weighted_height_sum(op(-1, 1), ypoly(-X, 0, 1 + X)) == 0
    # L singular at 1 with a branch of P tending to 1: that branch contributes its height
    L = op(1, X - 1)
    assert operator_newton_height(L, 1)[1] == 1
    assert weighted_height_sum(L, ypoly(-X, 0, 1 + X)) == 1


def test_height_at_infinity_for_exp_of_polynomial():
    # exp(x^2 + 1): the minimal operator D - 2x has H_inf = 1 while every
    # contribution on the right (the operator D - 1 is constant) vanishes
    L, P = op(-1, 1), ypoly(X * X - 1, -1)
    M, _, _ = minimal_annihilator(validate_inputs(L, P))
    assert M == op(-2 * X, 1)
    assert operator_newton_height(M, INFINITY)[1] == 1
    assert weighted_height_sum(L, P) == 0


@pytest.mark.parametrize("seed", range(8))
def test_height_inequality_on_suite(seed):
    inst = suite_instance(seed)
    M, _, _ = minimal_annihilator(validate_inputs(inst.L, inst.P))
    h = operator_newton_height(M, INFINITY)[1]
    assert h <= M.x_degree - M.lc().degree
    assert h <= weighted_height_sum(inst.L, inst.P)


# -- discriminant multiplicities ------------------------------------------------------

def test_diagnostic_examples():
    (entry,) = resultant_multiplicity_diagnostic(ypoly(-X, 0, 1))
    assert (entry.factor, entry.multiplicity, entry.squarefree_degree, entry.bound) == (X, 1, 1, 1)
    assert resultant_multiplicity_diagnostic(ypoly(-X, 1)) == []


@given(bipolys)
@settings(max_examples=60, deadline=None)
def test_diagnostic_bound_holds(P):
    try:
        validate_inputs(op(-1, 1), P)
    except InvalidInstance:
        return
    for entry in resultant_multiplicity_diagnostic(P):
        assert entry.holds


# -- removability -------------------------------------------------------------------------

def test_desingularize_trivial_cases():
    assert desingularize(EULER_1_3, X - 1, 1, 3) == EULER_1_3
    assert desingularize(EULER_1_3, X, 0, 3) is None


def test_solutions_x_and_x_cubed_need_cost_two():
    # an order-3 operator regular at 0 has solutions of valuations 0, 1, 2, which cannot contain x^3
    assert desingularize(EULER_1_3, X, 1, 3) is None
    assert desingularize(EULER_1_3, X, 1, 12) is None
    R = desingularize(EULER_1_3, X, 2, 3)
    assert R is not None
    check_witness(R, EULER_1_3, X, 2)
    assert right_divide(op(0, 0, 0, 0, 1), EULER_1_3)[1].is_zero()


def test_profile_examples():
    report = removability_profile(EULER_1_3)
    (f,) = report.factors
    assert (f.factor, f.status) == (X, "removable_at(2)")
    check_witness(f.witness, EULER_1_3, X, 2)
    report = removability_profile(SQRT_OP, 3, 20)
    assert [f.status for f in report.factors] == ["not_within(3)"]
    assert removability_profile(op(-1, 1)).factors == []


@pytest.mark.parametrize("a, b", [(a, b) for b in range(1, 5) for a in range(b) if a + b >= 2])
def test_euler_operators_have_exact_cost(a, b):
    M = euler(a, b)
    report = removability_profile(M, 3)
    if M.lc().degree == 0:
        assert report.factors == []
        return
    (f,) = report.factors
    expected = b - 1
    if expected <= 3:
        assert f.status == f"removable_at({expected})"
        check_witness(f.witness, M, f.factor, expected)
    else:
        assert f.status == "not_within(3)"


@given(st.integers(-3, 3), st.sampled_from([(1, 2), (0, 2), (1, 3), (2, 3)]))
@settings(max_examples=20, deadline=None)
def test_removal_at_shifted_points(s, ab):
    a, b = ab
    M = euler(a, b, s)
    (f,) = removability_profile(M, 2).factors
    assert f.factor == X - s
    assert f.status == f"removable_at({b - 1})"


def test_profile_splits_mixed_factors():
    # solutions 1 and the integral of x sqrt(x - 1): apparent at 0, branch point at 1
    M = op(0, 2 - 3 * X, 2 * X * (X - 1))
    report = removability_profile(M, 2)
    statuses = {f.factor: f.status for f in report.factors}
    assert statuses == {X: "removable_at(1)", X - 1: "not_within(2)"}
    assert report.removable_degree == 1


def test_degree_schedule():
    assert degree_schedule(3, 20) == [3, 6, 12, 20]
    assert degree_schedule(0, 4) == [1, 2, 4]
    assert degree_schedule(30, 20) == [30]


def test_factors_cover_the_squarefree_part_of_lc():
    M = op(1, X, X ** 3 * (X - 1))
    report = removability_profile(M, 1, 6)
    prod = UniPoly([1])
    for f in report.factors:
        prod = prod * f.factor
    assert prod.monic() == squarefree_part(M.lc()).monic()
    assert {f.multiplicity for f in report.factors if f.factor == X} <= {3}
