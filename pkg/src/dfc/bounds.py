"""Closed-form order-degree bounds for annihilators of compositions.

All evaluators work with exact rationals and return Python integers.  The
shape of a problem is ``(r_L, d_L, r_P, d_P)``: order and degree of the
operator ``L``, y-degree and x-degree of the polynomial ``P``.

>>> s = ProblemShape(3, 4, 3, 4)
>>> thm3_degree(s, 9), conjecture_degree(s).value, thm2_degree(s, 9)
(1568, 544, 3888)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class ProblemShape:
    r_L: int
    d_L: int
    r_P: int
    d_P: int

    def __post_init__(self):
        if min(self.r_L, self.d_L, self.r_P, self.d_P) < 0:
            raise ValueError("shape entries must be nonnegative")
        if self.r_L < 1 or self.r_P < 1:
            raise ValueError("r_L and r_P must be at least 1")

    @property
    def order(self) -> int:
        """Generic order ``r_L * r_P`` of the minimal annihilator."""
        return self.r_L * self.r_P


@dataclass(frozen=True)
class SingularityProfile:
    """Degree and order of an operator with the degrees and removal costs of lc factors."""

    deg_x_M: int
    ord_M: int
    factors: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple((int(e), int(c)) for e, c in self.factors))
        if any(e < 0 or c < 0 for e, c in self.factors):
            raise ValueError("factor degrees and costs must be nonnegative")
        if sum(e for e, _ in self.factors) > self.deg_x_M:
            raise ValueError("factor degrees exceed deg_x(M)")


@dataclass(frozen=True)
class ConjectureValue:
    value: int
    in_scope: bool


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def thm2_degree(shape: ProblemShape, r: int) -> int:
    """Smallest ``d`` with ``d >= r (3 r_P + d_L - 1) d_P r_L r_P / (r + 1 - r_L r_P)``."""
    if r < shape.order:
        raise ValueError(f"order {r} is below r_L*r_P = {shape.order}")
    s = shape
    q = Fraction(r * (3 * s.r_P + s.d_L - 1) * s.d_P * s.r_L * s.r_P, r + 1 - s.order)
    return max(0, _ceil(q))


def thm3_degree(shape: ProblemShape, r: int) -> int:
    """Degree bound for the minimal operator, evaluated at order ``r``."""
    s = shape
    if not 1 <= r <= s.order:
        raise ValueError(f"order {r} outside 1..{s.order}")
    q = (Fraction(2 * r * r * s.d_P) - Fraction((r - 2) * (r - 1), 2)
         + r * s.d_P * s.r_L * (2 * s.r_P + s.d_L - 1) - s.d_P * s.r_L * (s.r_P - 1))
    if q.denominator != 1:
        raise ArithmeticError("non-integral bound")
    return int(q)


def conjecture_degree(shape: ProblemShape) -> ConjectureValue:
    """Conjectured generic degree at order ``r_L * r_P``; ``in_scope`` needs all four parameters >= 2."""
    rL, dL, rP, dP = shape.r_L, shape.d_L, shape.r_P, shape.d_P
    value = (rL * rL * (2 * rP * (rP - 1) + 1) * dP + rL * rP * (dP * (dL + 1) + 1)
             + dL * dP - rL * rL * rP * rP - rL * dL * dP)
    return ConjectureValue(value, min(rL, dL, rP, dP) >= 2)


def thm9_degree(profile: SingularityProfile, r: int) -> int:
    """Degree reachable at order ``r`` after removing the profile's removable factors."""
    if r < profile.ord_M:
        raise ValueError(f"order {r} is below deg_D(M) = {profile.ord_M}")
    k = r - profile.ord_M + 1
    total = Fraction(0)
    for deg, cost in profile.factors:
        t = 1 - Fraction(cost, k)
        if t > 0:
            total += t * deg
    return profile.deg_x_M - _ceil(total)


def lemma7_bound(shape: ProblemShape) -> int:
    """``d_P (4 r_L r_P - 2 r_L + d_L)``, the bound on the non-removable part."""
    s = shape
    return s.d_P * (4 * s.r_L * s.r_P - 2 * s.r_L + s.d_L)


def thm5_degree(delta, deg_x_M: int, ord_M: int, c: int, r: int) -> int:
    """Smallest ``d >= delta (1 - c/k) + deg_x_M c/k`` with ``k = r - ord_M + 1``."""
    if c < 1:
        raise ValueError("cost must be positive")
    if r < ord_M + c - 1:
        raise ValueError(f"order {r} is below deg_D(M) + c - 1 = {ord_M + c - 1}")
    k = r - ord_M + 1
    q = Fraction(delta) * (1 - Fraction(c, k)) + Fraction(deg_x_M * c, k)
    return _ceil(q)


def default_cost(shape: ProblemShape) -> int:
    """Expected removal cost: 1 when ``r_P > 1``, otherwise ``r_L``."""
    return 1 if shape.r_P > 1 else shape.r_L


@dataclass(frozen=True)
class BoundRow:
    r: int
    thm2: int | None
    thm3: int | None
    conjecture: int | None
    thm9: int | None = None
    thm5: int | None = None


def bound_table(shape: ProblemShape | None, rs: Sequence[int],
                profile: SingularityProfile | None = None,
                delta=None, cost: int | None = None) -> list[BoundRow]:
    """Every applicable bound for each order in ``rs``; ``None`` where a formula does not apply."""
    rows = []
    conj = conjecture_degree(shape).value if shape is not None else None
    for r in rs:
        t2 = t3 = cj = t9 = t5 = None
        if shape is not None:
            if r >= shape.order:
                t2 = thm2_degree(shape, r)
            if 1 <= r <= shape.order:
                t3 = thm3_degree(shape, r)
            if r == shape.order:
                cj = conj
        if profile is not None and r >= profile.ord_M:
            t9 = thm9_degree(profile, r)
        if delta is not None and profile is not None:
            c = cost if cost is not None else (default_cost(shape) if shape is not None else 1)
            if r >= profile.ord_M + c - 1:
                t5 = thm5_degree(delta, profile.deg_x_M, profile.ord_M, c, r)
        rows.append(BoundRow(r, t2, t3, cj, t9, t5))
    return rows


__all__ = [
    "BoundRow",
    "ConjectureValue",
    "ProblemShape",
    "SingularityProfile",
    "bound_table",
    "conjecture_degree",
    "default_cost",
    "lemma7_bound",
    "thm2_degree",
    "thm3_degree",
    "thm5_degree",
    "thm9_degree",
]
