"""Helpers shared by the test modules."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field

from dfc.compose import CompositionContext, derivative_expansion
from dfc.diffop import DiffOp
from dfc.exactalg import BiPoly, UniPoly
from dfc.oracle import admissible_points
from dfc.series import TruncSeries, all_branches, local_solution_basis, poly_series, series_compose

X = UniPoly([0, 1])


def ypoly(*coeffs) -> BiPoly:
    """Bivariate polynomial from its coefficients in powers of y."""
    return BiPoly(c if isinstance(c, UniPoly) else UniPoly([c]) for c in coeffs)


def op(*coeffs) -> DiffOp:
    """Operator from its coefficients in powers of D."""
    return DiffOp(c if isinstance(c, UniPoly) else UniPoly([c]) for c in coeffs)


def expansion_residuals(ctx: CompositionContext, max_level: int, order: int = 25):
    """Yield ``(level, solution index, residual)`` for the derivative expansion identity.

    Each composition ``f o g`` is built independently of the rewriting code:
    ``g`` is the generic branch of ``P`` at an admissible point and ``f`` runs
    through the local solution basis of ``L`` at the generic root.
    """
    alpha = admissible_points(ctx.L, ctx.P, 1)[0]
    n = order + max_level + ctx.r_L
    g = all_branches(ctx.P, alpha, n)
    ring = g.ring
    basis = local_solution_basis(ctx.L, g[0], n)

    def lift(p: UniPoly, m: int) -> TruncSeries:
        return poly_series(p, m, alpha, ring)

    gpow = [lift(UniPoly([1]), n)]
    for _ in range(ctx.r_P):
        gpow.append(gpow[-1] * g)
    for idx, f in enumerate(basis):
        derivs = [f]
        for _ in range(ctx.r_L):
            derivs.append(derivs[-1].derive())
        comps = [series_compose(fd, g) for fd in derivs]
        lhs_base = comps[0]
        for level in range(max_level + 1):
            exp = derivative_expansion(ctx, level)
            m = order
            lhs = lhs_base.truncate(m)
            for _ in range(level):
                lhs = lhs * lift(ctx.u, m)
            rhs = lift(UniPoly([]), m)
            for i in range(ctx.r_P):
                for j in range(ctx.r_L):
                    e = exp.table[i][j]
                    if not e.is_zero():
                        rhs = rhs + lift(e, m) * gpow[i].truncate(m) * comps[j].truncate(m)
            yield level, idx, lhs - rhs
            lhs_base = lhs_base.derive()


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool = False
    elapsed: float = 0.0
    notes: list = field(default_factory=list)


ACCEPTANCE: dict[int, CriterionResult] = {}


@contextmanager
def criterion(number: int, title: str, limit: float):
    """Time an acceptance check, enforce its time limit and record the outcome for the summary."""
    result = CriterionResult(number, title)
    ACCEPTANCE[number] = result
    start = time.perf_counter()
    try:
        yield result.notes
    except BaseException as exc:
        result.elapsed = time.perf_counter() - start
        result.notes.append(f"{type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}")
        raise
    result.elapsed = time.perf_counter() - start
    if result.elapsed > limit:
        result.notes.append(f"took {result.elapsed:.1f}s, limit {limit:.0f}s")
        raise AssertionError(f"criterion {number} exceeded its time limit ({result.elapsed:.1f}s > {limit}s)")
    result.passed = True
