from __future__ import annotations

import random

import pytest

from dfc.compose import minimal_annihilator, validate_inputs
from dfc.instance import random_instance
from dfc.bounds import ProblemShape
from dfc.oracle import (InadmissiblePoint, admissible_points, check_admissible, default_order,
                        verify_annihilation)

from support import X, op, ypoly

EXP = op(-1, 1)
SQRT_SHIFTED = ypoly(-1 - X, 0, 1)
GOOD = op(-1, 2, 4 + 4 * X)


def test_known_operator_passes():
    rep = verify_annihilation(GOOD, EXP, SQRT_SHIFTED, 0, 60)
    assert rep.passed and rep.first_failure is None
    assert rep.checked_order == 60


def test_identity_substitution_passes():
    L = op(X, 3, 1 - X * X)
    assert verify_annihilation(L, L, ypoly(-X, 1), 0, 40).passed


def test_perturbed_operator_fails_early():
    rep = verify_annihilation(op(-2, 2, 4 + 4 * X), EXP, SQRT_SHIFTED, 0, 60)
    assert not rep.passed
    branch, exponent, _ = rep.first_failure
    assert exponent <= 2
    assert rep.to_dict()["status"] == "fail"


def test_zero_operator_passes_trivially():
    assert verify_annihilation(op(), EXP, SQRT_SHIFTED, 0, 10).passed


@pytest.mark.parametrize(
    "L, P, alpha, failed",
    [
        (EXP, SQRT_SHIFTED, -1, ["S1"]),
        (EXP, ypoly(-X, 0, X), 0, ["S1"]),
        (op(1, X - 1), ypoly(-1 - X, 1), 0, ["S2"]),
    ],
)
def test_inadmissible_points(L, P, alpha, failed):
    with pytest.raises(InadmissiblePoint) as info:
        check_admissible(L, P, alpha)
    assert info.value.failed == failed


def test_admissible_point_order():
    assert admissible_points(EXP, SQRT_SHIFTED, 3) == [0, 1, 2]


def test_default_order():
    assert default_order(GOOD) == 2 * (2 + 1) + 10


def test_chain_and_horner_routes_agree():
    for seed in range(4):
        inst = random_instance(ProblemShape(2, 1, 2, 1), seed)
        ctx = validate_inputs(inst.L, inst.P)
        M, _, _ = minimal_annihilator(ctx)
        alpha = admissible_points(inst.L, inst.P, 1)[0]
        a = verify_annihilation(M, inst.L, inst.P, alpha, 12, method="chain")
        b = verify_annihilation(M, inst.L, inst.P, alpha, 12, method="horner")
        assert a.passed and b.passed
        broken = op(*[c + 1 for c in M.coeffs])
        a = verify_annihilation(broken, inst.L, inst.P, alpha, 12, method="chain")
        b = verify_annihilation(broken, inst.L, inst.P, alpha, 12, method="horner")
        assert not a.passed and not b.passed
        assert a.first_failure[1] == b.first_failure[1]


def test_unknown_method():
    with pytest.raises(ValueError):
        verify_annihilation(GOOD, EXP, SQRT_SHIFTED, 0, 5, method="numeric")


@pytest.mark.parametrize("seed", range(3))
def test_two_point_agreement(seed):
    rng = random.Random(seed)
    inst = random_instance(ProblemShape(1, 1, 2, 1), rng.randint(0, 1000))
    M, _, _ = minimal_annihilator(validate_inputs(inst.L, inst.P))
    points = admissible_points(inst.L, inst.P, 2)
    results = [verify_annihilation(M, inst.L, inst.P, a).passed for a in points]
    assert results == [True, True]
    broken = op(*(list(M.coeffs[:-1]) + [M.coeffs[-1] + 1]))
    results = [verify_annihilation(broken, inst.L, inst.P, a).passed for a in points]
    assert results == [False, False]
