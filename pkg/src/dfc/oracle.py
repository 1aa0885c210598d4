"""Independent check that an operator annihilates every composition ``f(g(x))``.

All roots of ``P(alpha, y)`` are handled at once: the branch ``g`` is lifted
over ``K = Q[t]/(m(t))`` with ``m`` the monic form of ``P(alpha, t)``, so its
constant term is the generic root ``t``.  The local solutions of ``L`` at
``t`` are expanded over the same ring, composed with ``g``, and the candidate
operator is applied to each composition.  The check is exact: every residual
coefficient must vanish in ``K``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .diffop import DiffOp, op_apply
from .exactalg.polys import BiPoly, UniPoly, as_rational, poly_gcd
from .series import (TruncSeries, all_branches, generic_modulus, local_solution_basis,
                     series_compose)


class InadmissiblePoint(ValueError):
    """The expansion point violates S1 (``P(alpha, y)`` squarefree of full degree)
    or S2 (no root of ``P(alpha, y)`` is a singularity of ``L``)."""

    def __init__(self, alpha, failed: list[str], detail: str):
        super().__init__(f"alpha = {alpha} is not admissible ({', '.join(failed)} failed): {detail}")
        self.alpha = alpha
        self.failed = failed


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    expansion_point: object
    checked_order: int
    first_failure: Optional[tuple[str, int, str]] = None

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        out = {"status": self.status, "expansion_point": str(self.expansion_point),
               "checked_order": self.checked_order}
        if self.first_failure is not None:
            branch, exponent, coeff = self.first_failure
            out["first_failure"] = {"branch": branch, "exponent": exponent, "residual": coeff}
        return out


def default_order(M: DiffOp) -> int:
    return 2 * (M.order + max(M.x_degree, 0)) + 10


def check_admissible(L: DiffOp, P: BiPoly, alpha) -> UniPoly:
    """Return the modulus ``m`` for ``alpha`` or raise :class:`InadmissiblePoint`."""
    alpha = as_rational(alpha)
    try:
        m = generic_modulus(P, alpha)
    except ValueError as exc:
        raise InadmissiblePoint(alpha, ["S1"], str(exc)) from None
    # lc(L)(t) must be a unit modulo m
    lead = L.lc()
    if poly_gcd(lead % m if lead.degree >= 0 else lead, m).degree > 0:
        raise InadmissiblePoint(alpha, ["S2"], "a root of P(alpha, y) is a singularity of L")
    return m


def candidate_points() -> Iterator[int]:
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


def admissible_points(L: DiffOp, P: BiPoly, count: int, limit: int = 1000) -> list[int]:
    """The first ``count`` admissible points in the order 0, 1, -1, 2, -2, ..."""
    out = []
    for n, alpha in enumerate(candidate_points()):
        if n > limit:
            break
        try:
            check_admissible(L, P, alpha)
        except InadmissiblePoint:
            continue
        out.append(alpha)
        if len(out) == count:
            return out
    raise RuntimeError("could not find enough admissible expansion points")


def _poly_at_series(p: UniPoly, g: TruncSeries) -> TruncSeries:
    """``p(g(x))`` for a polynomial ``p``, by Horner."""
    n = g.order
    zero = g._zero()
    acc = TruncSeries([zero] * n, g.ring, g.base)
    for a in reversed(p.c):
        acc = acc.mul_trunc(g, n) + a
    return acc


def compositions_by_chain_rule(L: DiffOp, g: TruncSeries) -> list[TruncSeries]:
    """``f_i o g`` for the canonical local basis ``f_i`` of ``L`` at ``g(alpha)``.

    The vector ``F_k = f^(k) o g`` obeys ``F_k' = g' F_{k+1}`` for ``k < r - 1``
    and ``F_{r-1}' = -g' sum_k (l_k(g) / l_r(g)) F_k``, which is solved one
    coefficient at a time.  Cost is quadratic in the order instead of cubic.
    """
    r = L.order
    n = g.order
    zero = g._zero()
    gp = g.derive()
    inv_lead = _poly_at_series(L.lc(), g).inverse()
    drive = []
    for k in range(r):
        a = _poly_at_series(L[k], g).mul_trunc(inv_lead, n - 1).mul_trunc(gp, n - 1)
        drive.append([-c for c in a.coeffs])
    gpc = gp.coeffs
    out = []
    for i in range(r):
        F = [[zero] * n for _ in range(r)]
        fact = 1
        for t in range(2, i + 1):
            fact *= t
        F[i][0] = F[i][0] + fact
        for m in range(n - 1):
            nxt = []
            for k in range(r):
                s = zero
                if k < r - 1:
                    row = F[k + 1]
                    for j in range(m + 1):
                        if row[j] and gpc[m - j]:
                            s = s + row[j] * gpc[m - j]
                else:
                    for kk in range(r):
                        row, dk = F[kk], drive[kk]
                        for j in range(m + 1):
                            if row[j] and dk[m - j]:
                                s = s + row[j] * dk[m - j]
                nxt.append(s * Fraction(1, m + 1))
            for k in range(r):
                F[k][m + 1] = nxt[k]
        out.append(TruncSeries(F[0], g.ring, g.base))
    return out


def verify_annihilation(M: DiffOp, L: DiffOp, P: BiPoly, alpha=0, N: Optional[int] = None,
                        method: str = "chain") -> VerificationReport:
    """Check ``M(f o g) = O((x - alpha)^N)`` for all branches ``g`` and all local solutions ``f``.

    ``method="chain"`` builds each ``f o g`` from the chain rule for ``L``;
    ``method="horner"`` expands ``f`` at the generic root and substitutes ``g``.
    Both give the same truncated series.
    """
    alpha = as_rational(alpha)
    m = check_admissible(L, P, alpha)
    if N is None:
        N = default_order(M)
    total = N + max(M.order, 0)
    g = all_branches(P, alpha, total)
    if method == "chain":
        comps = compositions_by_chain_rule(L, g)
    elif method == "horner":
        comps = [series_compose(f, g) for f in local_solution_basis(L, g[0], total)]
    else:
        raise ValueError(f"unknown method {method!r}")
    branch = f"generic root t of {m.to_str('t')}"
    for idx, h in enumerate(comps):
        res = op_apply(M, h) if not M.is_zero() else h.truncate(N).scale(0)
        for n in range(N):
            c = res.coeffs[n]
            if c:
                return VerificationReport(False, alpha, N, (f"{branch}, solution {idx + 1}", n, repr(c)))
    return VerificationReport(True, alpha, N)
