from __future__ import annotations

from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dfc.diffop import DiffOp, op_apply
from dfc.exactalg import BiPoly, QuotRing, UniPoly
from dfc.series import (SingularBranch, SingularExpansionPoint, TruncSeries, all_branches, branch_lift,
                        local_solution_basis, series_compose)

X = UniPoly([0, 1])


def ypoly(*coeffs) -> BiPoly:
    return BiPoly(c if isinstance(c, UniPoly) else UniPoly([c]) for c in coeffs)


def series(coeffs, n=None, base=0) -> TruncSeries:
    n = len(coeffs) if n is None else n
    return TruncSeries(list(coeffs) + [0] * (n - len(coeffs)), None, base)


def residual(P: BiPoly, g: TruncSeries) -> TruncSeries:
    """``P(x, g(x))`` for ``g`` expanded at 0."""
    n = g.order
    acc = series([], n)
    for b in range(P.y_degree, -1, -1):
        acc = acc * g + series(P[b].c[:n], n)
    return acc


def test_arithmetic_examples():
    a, b = series([1, 1], 3), series([1, -1], 3)
    assert a * b == series([1, 0, -1])
    assert a + b == series([2], 3)
    assert series([0, 0, 1]).derive() == series([0, 2])


def test_mul_truncates_to_shorter():
    assert (series([1, 1], 5) * series([1, 1], 3)).order == 3


@pytest.mark.parametrize(
    "f, g, expected",
    [
        (series([1, 1], 4), series([0, 0, 1], 4), series([1, 0, 1], 4)),
        (series([0, 0, 1], 4), series([0, 1, 1], 4), series([0, 0, 1, 2], 4)),
    ],
)
def test_compose_examples(f, g, expected):
    assert series_compose(f, g) == expected


def test_compose_base_mismatch():
    with pytest.raises(ValueError):
        series_compose(series([1, 1], 4, base=1), series([0, 1], 4))


@given(st.lists(st.integers(-5, 5), min_size=8, max_size=8),
       st.lists(st.integers(-5, 5), min_size=7, max_size=7))
@settings(max_examples=50, deadline=None)
def test_compose_chain_rule(f, gtail):
    fs, gs = series(f), series([0] + gtail)
    lhs = series_compose(fs, gs).derive()
    rhs = series_compose(fs.derive(), gs.truncate(7)) * gs.derive()
    n = 6
    assert lhs.truncate(n) == rhs.truncate(n)


def test_branch_lift_sqrt():
    g = branch_lift(ypoly(-1 - X, 0, 1), 0, 1, 4)
    assert g == series([1, Fraction(1, 2), Fraction(-1, 8), Fraction(1, 16)])


def test_branch_lift_identity():
    assert branch_lift(ypoly(-X, 1), 0, 0, 6) == series([0, 1], 6)


def test_branch_lift_singular():
    with pytest.raises(SingularBranch):
        branch_lift(ypoly(-X, 0, 1), 0, 0, 5)


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=3), st.integers(-3, 3), st.integers(5, 25))
@settings(max_examples=40, deadline=None)
def test_branch_lift_residual_vanishes(lowcoeffs, y0, N):
    # P = y^2 + (a0 + a1 x + ...) y + c(x) with c chosen so that P(0, y0) = 0
    a = UniPoly(lowcoeffs)
    c0 = -(y0 * y0 + a.c[0] * y0 if a.c else y0 * y0)
    P = ypoly(UniPoly([c0, 1]), a, 1)
    if (2 * y0 + (a.c[0] if a.c else 0)) == 0:
        return
    g = branch_lift(P, 0, y0, N)
    assert g.order == N and g[0] == y0
    assert residual(P, g).is_zero()


def test_all_branches_generic_root():
    g = all_branches(ypoly(-2 - X, 0, 1), 0, 3)
    t = g[0]
    assert g[1] == t * Fraction(1, 4)
    assert g[2] == t * Fraction(-1, 32)
    assert g.ring.modulus == X * X - 2


def test_all_branches_specializes_to_rational_branches():
    P = ypoly(-1 - X, 0, 1)
    g = all_branches(P, 0, 6)
    assert g[1] == g[0] * Fraction(1, 2)
    for root in (1, -1):
        direct = branch_lift(P, 0, root, 6)
        for n in range(6):
            assert g[n].representative(root) == direct[n]


def test_all_branches_rejects_non_squarefree():
    with pytest.raises(ValueError):
        all_branches(ypoly(1 - X, -2, 1), 0, 3)


def test_branches_over_quotient_ring_use_shared_modulus():
    K = QuotRing(X * X - 3)
    g = branch_lift(ypoly(-3 - X, 0, 1), 0, K.gen(), 5)
    assert all(c.ring == K for c in g.coeffs)


@pytest.mark.parametrize(
    "L, expected",
    [
        (DiffOp([UniPoly([-1]), UniPoly([1])]), [[Fraction(1, factorial(n)) for n in range(5)]]),
        (DiffOp([UniPoly([]), UniPoly([]), UniPoly([1])]), [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0]]),
    ],
)
def test_local_basis_examples(L, expected):
    basis = local_solution_basis(L, 0, 5)
    assert [list(f.coeffs) for f in basis] == expected


def test_local_basis_singular_point():
    with pytest.raises(SingularExpansionPoint):
        local_solution_basis(DiffOp([UniPoly([-1]), X]), 0, 5)


ops = st.lists(st.lists(st.integers(-3, 3), min_size=1, max_size=3), min_size=2, max_size=4).map(
    lambda rows: DiffOp(UniPoly(r) for r in rows[:-1] + [[1] + rows[-1][1:]]))


@given(ops, st.integers(-2, 2))
@settings(max_examples=40, deadline=None)
def test_local_basis_is_annihilated(L, beta):
    if L.lc()(beta) == 0:
        return
    N = 14
    basis = local_solution_basis(L, beta, N)
    assert len(basis) == L.order
    for i, f in enumerate(basis):
        head = [f[k] for k in range(L.order)]
        assert head == [1 if k == i else 0 for k in range(L.order)]
        # op_apply works in the local variable; shift L to beta first
        shifted = DiffOp(p.shift(beta) for p in L.coeffs)
        assert op_apply(shifted, TruncSeries(f.coeffs)).is_zero()
