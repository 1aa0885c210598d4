"""Annihilating operators for ``f(g(x))`` with ``L(f) = 0`` and ``P(x, g) = 0``.

Derivatives of the composition are rewritten in the basis
``g^i * (f^(j) o g)`` (``i < r_P``, ``j < r_L``) with polynomial coefficients
over a power of a fixed denominator ``u``.  Three rewriting rules suffice:
pseudo-reduction of powers of ``g`` by ``P``, elimination of ``f^(r_L)`` using
``L``, and multiplication by ``g'``.  An operator ``sum c_ij x^i D^j``
annihilates every composition exactly when all coefficients of the expanded
``u^r * M(f o g)`` vanish, which is a linear system in the ``c_ij``.

Everything is kept in integer arithmetic: the inputs are scaled to primitive
integer form when the context is built.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Optional

import numpy as np

from .bounds import ProblemShape, thm3_degree
from .diffop import DiffOp, primitive_normalize
from .exactalg.linalg import ExactMatrix, LiftError, ModularSystem, nullspace, primes, rank_mod
from .exactalg.polys import (
    ONE,
    ZERO,
    BiPoly,
    UniPoly,
    content_y,
    cramer_solve,
    full_reduce,
    poly_gcd,
    pseudo_reduce_step,
    resultant_y,
)

log = logging.getLogger(__name__)


class InvalidInstance(ValueError):
    """The pair ``(L, P)`` violates an input condition; ``kind`` names which."""

    kind = "invalid"

    def __init__(self, message: str):
        super().__init__(f"{self.kind}: {message}")


class NotSquarefree(InvalidInstance):
    kind = "non-squarefree"


class ConstantRootFactor(InvalidInstance):
    kind = "constant-root-factor"


class LeadingCoefficientClash(InvalidInstance):
    kind = "leading-coefficient-clash"


class LiftInconsistency(RuntimeError):
    """A kernel vector produced an operator that fails verification."""


# ---------------------------------------------------------------------------
# input normalization
# ---------------------------------------------------------------------------

def _integer_bipoly(P: BiPoly) -> BiPoly:
    """Primitive integer associate of ``P`` without factors depending on ``x`` only."""
    g = ZERO
    for p in P.ycoeffs:
        g = poly_gcd(g, p)
    if g.degree > 0:
        P = BiPoly(p.exact_div(g) for p in P.ycoeffs)
    den = 1
    for p in P.ycoeffs:
        for c in p.c:
            if type(c) is Fraction:
                den = lcm(den, c.denominator)
    rows = [[int(c * den) for c in p.c] for p in P.ycoeffs]
    cont = 0
    for row in rows:
        for c in row:
            cont = gcd(cont, c)
    sign = -1 if rows[-1][-1] < 0 else 1
    return BiPoly(UniPoly(sign * c // cont for c in row) for row in rows)


def _as_y_poly(a: UniPoly) -> BiPoly:
    """A polynomial of ``x`` reinterpreted as a polynomial in ``y``."""
    return BiPoly(UniPoly.const(c) for c in a.c)


def _cols_high_first(poly_by_y: BiPoly, width: int) -> list[UniPoly]:
    c = list(poly_by_y.ycoeffs) + [ZERO] * (width - len(poly_by_y.ycoeffs))
    if len(c) > width:
        raise ValueError("polynomial does not fit the system")
    return [c[width - 1 - i] for i in range(width)]


def _solve_linear_combination(F: BiPoly, G: BiPoly, nA: int, nB: int,
                              rhs: list[BiPoly]) -> tuple[UniPoly, list[list[UniPoly]]]:
    """Solve ``A F + B G = rhs`` with ``deg A < nA`` and ``deg B < nB``.

    The coefficient matrix (rows are shifts of F and G, highest power first)
    is the Sylvester matrix of ``F, G`` when ``nA = deg G`` and ``nB = deg F``.
    Returns the determinant and, per right-hand side, the numerators of B
    (``det * B``) indexed by the power of ``y``.
    """
    width = nA + nB
    rows = []
    fc = list(F.ycoeffs)
    gc = list(G.ycoeffs)
    for a in range(nA):
        shift = nA - 1 - a
        row = [ZERO] * width
        for b, c in enumerate(fc):
            row[width - 1 - (b + shift)] = c
        rows.append(row)
    for a in range(nB):
        shift = nB - 1 - a
        row = [ZERO] * width
        for b, c in enumerate(gc):
            row[width - 1 - (b + shift)] = c
        rows.append(row)
    mat = [[rows[i][j] for i in range(width)] for j in range(width)]
    rhs_cols = [_cols_high_first(r, width) for r in rhs]
    det, nums = cramer_solve(mat, rhs_cols)
    out = []
    for num in nums:
        bpart = num[nA:]
        out.append([bpart[nB - 1 - j] for j in range(nB)])
    return det, out


# ---------------------------------------------------------------------------
# the context
# ---------------------------------------------------------------------------

@dataclass
class CompositionContext:
    """Precomputed rewriting data for a valid pair ``(L, P)`` (both in primitive integer form)."""

    L: DiffOp
    P: BiPoly
    lcP: UniPoly
    v: UniPoly
    w: UniPoly
    u: UniPoly
    top_rewrite: list[list[UniPoly]]
    gprime_table: list[list[UniPoly]]
    shape: ProblemShape
    v_width: int
    _expansions: list = field(default_factory=list, repr=False)
    _h_cache: dict = field(default_factory=dict, repr=False)

    @property
    def r_L(self) -> int:
        return self.L.order

    @property
    def r_P(self) -> int:
        return self.P.y_degree

    @property
    def u_degree_budget(self) -> int:
        """Degree count for ``u`` from the sizes of the determinants it is built from."""
        d_P = self.shape.d_P
        return (self.v_width + 2 * self.r_P - 1) * d_P + self.r_P * d_P

    def derivative(self, level: int) -> "DerivativeExpansion":
        return derivative_expansion(self, level)


def validate_inputs(L: DiffOp, P: BiPoly) -> CompositionContext:
    """Check the input conditions and precompute the rewriting data."""
    if L.is_zero() or L.order < 1:
        raise InvalidInstance("L must be a nonzero operator of positive order")
    if P.y_degree < 1:
        raise InvalidInstance("P must have positive degree in y")
    L = primitive_normalize(L)
    P = _integer_bipoly(P)
    rP = P.y_degree
    Py = P.diff_y()
    w = resultant_y(P, Py)
    if w.is_zero():
        raise NotSquarefree("P is not squarefree as a polynomial in y over Q(x)")
    lrL = _as_y_poly(L.lc())
    if lrL.y_degree >= 1 and resultant_y(P, lrL).is_zero():
        raise LeadingCoefficientClash("P and the leading coefficient of L (in y) share a factor")
    if content_y(P).degree > 0:
        raise ConstantRootFactor("P has a factor in Q[y]")
    if P.x_degree < 1:
        raise ConstantRootFactor("P does not depend on x")
    lcP = P.lc_y()
    m = lrL.y_degree
    low = [_as_y_poly(L[k]) for k in range(L.order)]
    nA = max([m] + [lk.y_degree - rP + 1 for lk in low])
    rhs = [-lk for lk in low]
    v, nums = _solve_linear_combination(P, lrL, nA, rP, rhs)
    # top_rewrite[j][k]: coefficient of g^j (f^(k) o g) in v * f^(r_L) o g
    top = [[nums[k][j] for k in range(L.order)] for j in range(rP)]
    shape = ProblemShape(L.order, L.x_degree, rP, P.x_degree)
    ctx = CompositionContext(L=L, P=P, lcP=lcP, v=v, w=w, u=v * w * lcP ** rP,
                             top_rewrite=top, gprime_table=[], shape=shape, v_width=nA)
    for b in range(rP):
        num = multiply_by_gprime(ctx, BiPoly([ZERO] * b + [ONE]))
        ctx.gprime_table.append([num[i] for i in range(rP)])
    _check_context(ctx)
    return ctx


def _check_context(ctx: CompositionContext) -> None:
    s = ctx.shape
    assert not ctx.u.is_zero()
    assert ctx.u == ctx.v * ctx.w * ctx.lcP ** ctx.r_P
    assert ctx.u.degree <= (3 * s.r_P + s.d_L - 1) * s.d_P, "degree certificate for u"
    assert all(q.degree <= s.d_L * s.d_P for row in ctx.top_rewrite for q in row), "degree certificate for q"


def rewrite_top_derivative(ctx: CompositionContext) -> tuple[UniPoly, list[list[UniPoly]]]:
    """``(v, q)`` with ``f^(r_L) o g = (1/v) sum_{j,k} q[j][k] g^j (f^(k) o g)``."""
    return ctx.v, ctx.top_rewrite


def multiply_by_gprime(ctx: CompositionContext, Q: BiPoly) -> BiPoly:
    """Numerator ``sum_j q_j y^j`` of ``g' Q(x, g)`` over the denominator ``w * lc_y(P)``."""
    P = ctx.P
    rP = P.y_degree
    if Q.y_degree >= rP:
        raise ValueError("multiply_by_gprime needs deg_y(Q) < deg_y(P)")
    if Q.is_zero():
        return BiPoly()
    N = -(Q * P.diff_x())
    if N.y_degree >= 2 * rP - 1:
        N = pseudo_reduce_step(N, P)
    else:
        N = N * ctx.lcP
    det, nums = _solve_linear_combination(P, P.diff_y(), rP - 1, rP, [N])
    if det != ctx.w:
        raise AssertionError("determinant mismatch in the g' system")
    return BiPoly(nums[0])


# ---------------------------------------------------------------------------
# derivatives of the composition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DerivativeExpansion:
    """``D^level (f o g) = u^-level * sum_{i,j} table[i][j] g^i (f^(j) o g)``."""

    level: int
    table: tuple[tuple[UniPoly, ...], ...]
    u: UniPoly

    def max_degree(self) -> int:
        return max(e.degree for row in self.table for e in row)

    def within_degree(self, per_level: int) -> bool:
        return all(e.degree <= self.level * per_level for row in self.table for e in row)


def _step(ctx: CompositionContext, prev: DerivativeExpansion) -> DerivativeExpansion:
    rP, rL = ctx.r_P, ctx.r_L
    e = prev.table
    ell = prev.level
    u = ctx.u
    du = u.derivative()
    # H[k](y) collects the coefficient of f^(k) o g after differentiating g^i f^(j) o g (before the g' factor)
    H = []
    for k in range(rL + 1):
        coeffs = []
        for i in range(rP):
            c = ZERO
            if i + 1 < rP and k < rL:
                c = c + e[i + 1][k] * (i + 1)
            if k >= 1:
                c = c + e[i][k - 1]
            coeffs.append(c)
        H.append(BiPoly(coeffs))
    top = H[rL]
    new = [[ZERO] * rL for _ in range(rP)]
    for k in range(rL):
        S = H[k] * ctx.v
        if not top.is_zero():
            S = S + top * BiPoly(ctx.top_rewrite[j][k] for j in range(rP))
        R, s = full_reduce(S, ctx.P)
        R = R * ctx.lcP ** (rP - 1 - s)
        for b in range(rP):
            Rb = R[b]
            if Rb.is_zero():
                continue
            for i in range(rP):
                gb = ctx.gprime_table[b][i]
                if not gb.is_zero():
                    new[i][k] = new[i][k] + Rb * gb
    for i in range(rP):
        for k in range(rL):
            eik = e[i][k]
            if not eik.is_zero():
                new[i][k] = new[i][k] + eik.derivative() * u - eik * du * ell
    out = DerivativeExpansion(ell + 1, tuple(tuple(row) for row in new), u)
    if not out.within_degree(ctx.u_degree_budget):
        raise AssertionError("derivative expansion exceeds its degree budget")
    return out


def derivative_expansion(ctx: CompositionContext, level: int) -> DerivativeExpansion:
    """Coefficients of the ``level``-th derivative of ``f o g`` over ``u^level``."""
    if level < 0:
        raise ValueError("level must be nonnegative")
    cache = ctx._expansions
    if not cache:
        base = [[ZERO] * ctx.r_L for _ in range(ctx.r_P)]
        base[0][0] = ONE
        cache.append(DerivativeExpansion(0, tuple(tuple(r) for r in base), ctx.u))
    while len(cache) <= level:
        cache.append(_step(ctx, cache[-1]))
    return cache[level]


# ---------------------------------------------------------------------------
# the linear system
# ---------------------------------------------------------------------------

def _h_polys(ctx: CompositionContext, r: int) -> list[list[list[int]]]:
    """``h[j][ab]`` = integer coefficients of ``u^(r-j) e^(j)_ab``, ``ab = a * r_L + b``."""
    if r in ctx._h_cache:
        return ctx._h_cache[r]
    upow = [ONE]
    for _ in range(r):
        upow.append(upow[-1] * ctx.u)
    h = []
    for j in range(r + 1):
        ex = derivative_expansion(ctx, j)
        row = []
        for a in range(ctx.r_P):
            for b in range(ctx.r_L):
                p = ex.table[a][b] * upow[r - j]
                row.append([int(c) for c in p.c])
        h.append(row)
    ctx._h_cache[r] = h
    return h


def _system_layout(ctx: CompositionContext, r: int, d: int):
    h = _h_polys(ctx, r)
    nab = ctx.r_P * ctx.r_L
    hdeg = [max((len(h[j][ab]) - 1 for j in range(r + 1)), default=-1) for ab in range(nab)]
    offsets = []
    nrows = 0
    for ab in range(nab):
        offsets.append(nrows)
        if hdeg[ab] >= 0:
            nrows += d + hdeg[ab] + 1
    return h, offsets, nrows, (r + 1) * (d + 1)


def column_index(d: int, i: int, j: int) -> int:
    """Column of the unknown coefficient of ``x^i D^j``."""
    return j * (d + 1) + i


def build_ansatz_system(ctx: CompositionContext, r: int, d: int) -> ExactMatrix:
    """Matrix whose kernel is the set of operators of order <= r, degree <= d annihilating f o g."""
    if r < 0 or d < 0:
        raise ValueError("order and degree must be nonnegative")
    h, offsets, nrows, ncols = _system_layout(ctx, r, d)
    rows = [[0] * ncols for _ in range(nrows)]
    for j in range(r + 1):
        for ab, hp in enumerate(h[j]):
            off = offsets[ab]
            for i in range(d + 1):
                col = column_index(d, i, j)
                for k, c in enumerate(hp):
                    if c:
                        rows[off + i + k][col] = c
    return ExactMatrix(rows, ncols)


def _ansatz_mod(ctx: CompositionContext, r: int, d: int, p: int) -> np.ndarray:
    h, offsets, nrows, ncols = _system_layout(ctx, r, d)
    A = np.zeros((nrows, ncols), dtype=np.int64)
    for j in range(r + 1):
        for ab, hp in enumerate(h[j]):
            if not hp:
                continue
            vec = np.array([c % p for c in hp], dtype=np.int64)
            off = offsets[ab]
            n = len(vec)
            for i in range(d + 1):
                A[off + i: off + i + n, column_index(d, i, j)] = vec
    return A


def kernel_dimension_mod(ctx: CompositionContext, r: int, d: int, p: int) -> int:
    A = _ansatz_mod(ctx, r, d, p)
    return A.shape[1] - rank_mod(A, p)


def _assemble(vec, r: int, d: int) -> DiffOp:
    coeffs = []
    for j in range(r + 1):
        coeffs.append(UniPoly(vec[column_index(d, i, j)] for i in range(d + 1)))
    return primitive_normalize(DiffOp(coeffs))


def _first_kernel_vector(ctx: CompositionContext, r: int, d: int, mode: str):
    M = build_ansatz_system(ctx, r, d)
    if mode == "exact":
        basis = nullspace(M)
        return basis[0] if basis else None
    system = ModularSystem(M.rows, M.col_count)
    p = primes()[0]
    kd = system.kernel_dim(p)
    if kd == 0:
        return None
    # free variables (1, 0, ..., 0) select the first RREF basis vector
    _, vectors = system.lifted_kernel(free_values=[[1] + [0] * (kd - 1)])
    if not vectors:
        return None
    return vectors[0]


def operator_at(ctx: CompositionContext, r: int, d: int, mode: str = "modular",
                verify: bool = True) -> Optional[DiffOp]:
    """An operator of order <= r and degree <= d annihilating all compositions, or None."""
    if mode not in ("exact", "modular"):
        raise ValueError("mode must be 'exact' or 'modular'")
    try:
        vec = _first_kernel_vector(ctx, r, d, mode)
    except LiftError:
        log.warning("multi-modular lift failed at (r, d) = (%d, %d); solving exactly", r, d)
        vec = _first_kernel_vector(ctx, r, d, "exact")
        mode = "exact"
    if vec is None:
        return None
    M = _assemble(vec, r, d)
    if verify and not verify_operator(ctx, M):
        if mode == "modular":
            log.warning("lift inconsistency at (r, d) = (%d, %d); recomputing exactly", r, d)
            return operator_at(ctx, r, d, "exact", verify)
        raise LiftInconsistency(f"operator at (r, d) = ({r}, {d}) failed verification")
    return M


def verify_operator(ctx: CompositionContext, M: DiffOp, points: int = 2) -> bool:
    """Run the series oracle at the first ``points`` admissible expansion points."""
    from .oracle import admissible_points, verify_annihilation

    for alpha in admissible_points(ctx.L, ctx.P, points):
        if not verify_annihilation(M, ctx.L, ctx.P, alpha).passed:
            return False
    return True


# ---------------------------------------------------------------------------
# searching for small operators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CurvePoint:
    r: int
    d: Optional[int]
    witness: Optional[DiffOp] = None


def _smallest_degree_mod(ctx: CompositionContext, r: int, lo: int, hi: int, p: int) -> Optional[int]:
    """Smallest ``d`` in ``[lo, hi]`` with a nonzero kernel mod ``p``, assuming none below ``lo``."""
    if kernel_dimension_mod(ctx, r, hi, p) == 0:
        return None
    # gallop up from lo, then bisect
    bad = lo - 1
    step = 1
    good = hi
    probe = lo
    while probe < hi:
        if kernel_dimension_mod(ctx, r, probe, p) > 0:
            good = probe
            break
        bad = probe
        probe = min(hi, lo + 2 * step - 1)
        step *= 2
    while good - bad > 1:
        mid = (good + bad) // 2
        if kernel_dimension_mod(ctx, r, mid, p) > 0:
            good = mid
        else:
            bad = mid
    return good


def minimal_degree_at_order(ctx: CompositionContext, r: int, d_cap: int,
                            witness: bool = True, d_min: int = 0) -> Optional[CurvePoint]:
    """Smallest degree of an annihilating operator of order <= r, searched up to ``d_cap``."""
    if d_cap < 0:
        raise ValueError("d_cap must be nonnegative")
    plist = primes()
    lo = d_min
    attempt = 0
    while lo <= d_cap:
        p = plist[attempt % len(plist)]
        d = _smallest_degree_mod(ctx, r, lo, d_cap, p)
        if d is None:
            return None
        q = plist[(attempt + 1) % len(plist)]
        if kernel_dimension_mod(ctx, r, d, q) == 0:
            # p was unlucky: there is no rational kernel at this degree
            lo = d + 1
            attempt += 1
            continue
        M = operator_at(ctx, r, d, verify=witness)
        if M is not None:
            return CurvePoint(r, d, M if witness else None)
        lo = d + 1
        attempt += 1
    return None


def minimal_annihilator(ctx: CompositionContext) -> tuple[DiffOp, int, int]:
    """The annihilator of least order, and of least degree among those."""
    top = ctx.shape.order
    caps = {r: thm3_degree(ctx.shape, r) for r in range(1, top + 1)}
    factor = 1
    while True:
        for r in range(1, top + 1):
            pt = minimal_degree_at_order(ctx, r, caps[r] * factor)
            if pt is not None:
                return pt.witness, r, pt.d
        factor *= 2
        log.warning("no annihilator within the degree caps; doubling them (factor %d)", factor)
        if factor > 64:
            raise AssertionError("no annihilator found although one must exist")


def order_degree_scan(ctx: CompositionContext, r_from: int, r_to: int, d_cap: int,
                      witness: bool = True) -> list[CurvePoint]:
    """Minimal degree for every order in ``r_from..r_to``; ``d`` is None beyond the cap."""
    out = []
    cap = d_cap
    for r in range(r_from, r_to + 1):
        pt = minimal_degree_at_order(ctx, r, cap, witness=witness)
        if pt is None:
            out.append(CurvePoint(r, None))
            continue
        if out and out[-1].d is not None:
            assert pt.d <= out[-1].d, "minimal degree increased with the order"
        out.append(pt)
        cap = pt.d
    return out
