"""Singularities of annihilating operators.

Covers removability of leading-coefficient factors at bounded cost, Newton
polygon heights of operators at finite points and at infinity, the branch
data ``(beta, rho)`` of an algebraic equation at infinity, the resultant
multiplicity diagnostic, and the quantity ``delta`` used by the
singularity-aware order-degree curve.

Heights use the following fixed definition.  At a finite point the polygon
has points ``(j, v(a_j))`` and the height is ``v(a_r) - min_j v(a_j)``.  At
infinity it has points ``(j, deg a_j)`` and the height is
``max_j deg a_j - deg a_r``.  Ordinary points and constant coefficients give
height zero, and the height at infinity never exceeds
``deg_x M - deg lc(M)``.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional, Union

from .bounds import lemma7_bound, ProblemShape
from .diffop import DiffOp, right_divide
from .exactalg.linalg import LiftError, ModularSystem, primes, rref_mod
from .exactalg.polys import (ONE, ZERO, BiPoly, UniPoly, as_rational, poly_gcd, resultant_y,
                             squarefree_decompose)
from .exactalg.quotient import QuotElem, QuotRing, ZeroDivisorWitness, quot_inverse

log = logging.getLogger(__name__)

INFINITY = "infinity"
Point = Union[int, Fraction, str]


# ---------------------------------------------------------------------------
# convex hulls and Newton polygons
# ---------------------------------------------------------------------------

def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points: list[tuple]) -> list[tuple]:
    """Vertices of the lower convex hull, left to right (monotone chain)."""
    pts = sorted(set(points))
    hull: list[tuple] = []
    for p in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return hull


def upper_hull(points: list[tuple]) -> list[tuple]:
    return [(a, -b) for a, b in lower_hull([(a, -b) for a, b in points])]


@dataclass(frozen=True)
class NewtonPolygon:
    points: tuple
    hull_vertices: tuple
    height: Fraction

    def edges(self) -> list[tuple[tuple, tuple]]:
        v = self.hull_vertices
        return list(zip(v, v[1:]))


def _valuation_at(a: UniPoly, alpha) -> int:
    """Order of vanishing of ``a`` at the rational point ``alpha``."""
    if a.is_zero():
        raise ValueError("valuation of zero")
    return a.shift(alpha).valuation()


def operator_newton_height(M: DiffOp, at: Point = INFINITY) -> tuple[NewtonPolygon, Fraction]:
    """Newton polygon of ``M`` at a rational point or at ``"infinity"`` and its height."""
    if M.is_zero():
        raise ValueError("Newton polygon of the zero operator")
    r = M.order
    if at == INFINITY:
        pts = [(j, M[j].degree) for j in range(r + 1) if not M[j].is_zero()]
        hull = upper_hull(pts)
        top = max(b for _, b in hull)
        h = max(0, top - M[r].degree)
    else:
        alpha = as_rational(at)
        pts = [(j, _valuation_at(M[j], alpha)) for j in range(r + 1) if not M[j].is_zero()]
        hull = lower_hull(pts)
        bottom = min(b for _, b in hull)
        h = max(0, _valuation_at(M[r], alpha) - bottom)
    return NewtonPolygon(tuple(pts), tuple(hull), Fraction(h)), Fraction(h)


def _uniform_pieces(q: UniPoly, polys: list[UniPoly]) -> list[UniPoly]:
    """Split the squarefree ``q`` until every poly has the same multiplicity at all roots of a piece."""
    work = [q.monic()]
    done = []
    while work:
        piece = work.pop()
        split = None
        for a in polys:
            if a.is_zero():
                continue
            b = a
            while True:
                g = poly_gcd(b, piece)
                if g.degree <= 0:
                    break
                if g.degree < piece.degree:
                    split = g
                    break
                b = b.exact_div(piece)
            if split is not None:
                break
        if split is None:
            done.append(piece)
        else:
            work.extend([split.monic(), piece.exact_div(split).monic()])
    return sorted(done, key=lambda p: (p.degree, p.c))


def _multiplicity(a: UniPoly, q: UniPoly) -> int:
    k = 0
    while q.divides(a):
        a = a.exact_div(q)
        k += 1
    return k


def heights_over(M: DiffOp, q: UniPoly) -> list[tuple[UniPoly, Fraction]]:
    """Height of ``M`` at the roots of the squarefree ``q``, as ``(piece, H)`` with uniform pieces."""
    if poly_gcd(M.lc(), q).degree <= 0:
        return [(q.monic(), Fraction(0))]
    out = []
    for piece in _uniform_pieces(q, list(M.coeffs)):
        vals = [_multiplicity(a, piece) for a in M.coeffs if not a.is_zero()]
        h = _multiplicity(M.lc(), piece) - min(vals)
        out.append((piece, Fraction(max(0, h))))
    return out


# ---------------------------------------------------------------------------
# branch data at infinity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BranchClass:
    """A class of branches at infinity.

    ``beta`` is ``"infinity"``, a rational limit, or a squarefree polynomial
    whose roots are the (conjugate) limits.  ``multiplicity`` counts branches.
    """

    beta: Union[str, Fraction, UniPoly]
    rho: Fraction
    multiplicity: int

    @property
    def is_infinite(self) -> bool:
        return isinstance(self.beta, str)

    def describe(self) -> str:
        if self.is_infinite:
            return "infinity"
        if isinstance(self.beta, UniPoly):
            return f"root of {self.beta.to_str('t')}"
        return str(self.beta)


@dataclass(frozen=True)
class BranchDataAtInfinity:
    entries: tuple[BranchClass, ...]

    @property
    def total(self) -> int:
        return sum(e.multiplicity for e in self.entries)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(p: UniPoly, limit: int = 10**12) -> list[Fraction]:
    """Rational roots of ``p`` (skipped for huge coefficients)."""
    if p.degree < 1:
        return []
    _, q = p.primitive()
    out = []
    if q[0] == 0:
        out.append(Fraction(0))
        q = UniPoly(q.c[q.valuation():])
    c0, cn = int(q[0]), int(q.lc())
    if q.degree < 1 or abs(c0) > limit or abs(cn) > limit:
        return out
    for a in _divisors(c0):
        for b in _divisors(cn):
            for s in (1, -1):
                z = Fraction(s * a, b)
                if z not in out and q(z) == 0:
                    out.append(z)
    return sorted(out)


def _edge_classes(points: list[tuple[int, int]]):
    """Lower-hull edges as (slope, horizontal length, left end, right end)."""
    hull = lower_hull(points)
    for (b1, w1), (b2, w2) in zip(hull, hull[1:]):
        yield Fraction(w2 - w1, b2 - b1), b2 - b1, b1, b2


def _s_valuation(coeffs: list) -> int | None:
    """Index of the first nonzero coefficient; raise on a nonzero non-unit (zero divisor)."""
    for i, c in enumerate(coeffs):
        if c:
            if isinstance(c, QuotElem):
                inv = quot_inverse(c)
                if isinstance(inv, ZeroDivisorWitness):
                    raise inv
            return i
    return None


def _shifted_ycoeffs(Pt: list[list], c, k: int, zero) -> list[list]:
    """Coefficients of ``z^b`` (b <= k) of ``Pt(s, c + z)``, each a list in powers of ``s``."""
    n = len(Pt)
    width = max(len(row) for row in Pt)
    out = []
    for b in range(k + 1):
        acc = [zero] * width
        binom = 1
        cpow = None
        for j in range(b, n):
            if j > b:
                binom = binom * j // (j - b)
            cp = 1 if j == b else cpow * c
            cpow = cp
            factor = cp * binom
            for i, a in enumerate(Pt[j]):
                if a:
                    acc[i] = acc[i] + factor * a
        out.append(acc)
    return out


def _finite_classes(Pt: list[list], root_poly: UniPoly, k: int) -> list[BranchClass]:
    """Branches tending to the roots of ``root_poly`` (each a root of multiplicity ``k``)."""
    Pt_rat = Pt
    if root_poly.degree == 1:
        c = -root_poly[0] / root_poly[1]
        ring = None
        zero = Fraction(0)
        beta: Union[Fraction, UniPoly] = Fraction(c)
    else:
        ring = QuotRing(root_poly.monic(), check=False)
        c = ring.gen()
        zero = ring.zero()
        beta = root_poly.monic()
        Pt = [[ring(a) for a in row] for row in Pt]
    try:
        shifted = _shifted_ycoeffs(Pt, c, k, zero)
        pts = []
        for b, row in enumerate(shifted):
            v = _s_valuation(row)
            if v is not None:
                pts.append((b, v))
    except ZeroDivisorWitness as w:
        f, cof = w.split()
        return _finite_classes(Pt_rat, f.monic(), k) + _finite_classes(Pt_rat, cof.monic(), k)
    deg = root_poly.degree
    out = []
    for slope, length, _, _ in _edge_classes(pts):
        if slope >= 0:
            raise ArithmeticError("non-negative slope among branches at a finite limit")
        out.append(BranchClass(beta, -slope, length * deg))
    return out


def branch_data_at_infinity(P: BiPoly) -> BranchDataAtInfinity:
    """Limits ``beta_i`` and vanishing orders ``rho_i`` of the branches of ``P(x, y) = 0`` at infinity."""
    rP, dP = P.y_degree, P.x_degree
    if rP < 1 or dP < 0:
        raise ValueError("P must have positive y-degree")
    if P[0].is_zero():
        raise ValueError("y divides P; the branch y = 0 has infinite order")
    # Pt(s, y) = s^dP P(1/s, y): coefficient of s^i in the y^b part is P_b[dP - i]
    Pt = [[as_rational(P[b][dP - i]) for i in range(dP + 1)] for b in range(rP + 1)]
    pts = [(b, dP - P[b].degree) for b in range(rP + 1) if not P[b].is_zero()]
    entries: list[BranchClass] = []
    for slope, length, b1, b2 in _edge_classes(pts):
        if slope > 0:
            entries.append(BranchClass(INFINITY, slope, length))
        elif slope < 0:
            entries.append(BranchClass(Fraction(0), -slope, length))
        else:
            w = pts[[b for b, _ in pts].index(b1)][1]
            phi = UniPoly(Pt[b][w] for b in range(b1, b2 + 1))
            for f, k in squarefree_decompose(phi):
                roots = rational_roots(f)
                rest = f
                for z in roots:
                    lin = UniPoly([-z, 1])
                    entries.extend(_finite_classes(Pt, lin, k))
                    rest = rest.exact_div(lin)
                if rest.degree > 0:
                    entries.extend(_finite_classes(Pt, rest, k))
    data = BranchDataAtInfinity(tuple(entries))
    if data.total != rP:
        raise ArithmeticError(f"branch count {data.total} differs from deg_y P = {rP}")
    return data


# ---------------------------------------------------------------------------
# delta
# ---------------------------------------------------------------------------

def weighted_height_sum(L: DiffOp, P: BiPoly) -> Fraction:
    """``sum_i rho_i H_{beta_i}(L)`` over all branches of ``P`` at infinity."""
    total = Fraction(0)
    for entry in branch_data_at_infinity(P).entries:
        if entry.is_infinite:
            _, h = operator_newton_height(L, INFINITY)
            total += entry.multiplicity * entry.rho * h
        elif isinstance(entry.beta, UniPoly):
            per_root = Fraction(entry.multiplicity, entry.beta.degree)
            for piece, h in heights_over(L, entry.beta):
                total += per_root * piece.degree * entry.rho * h
        else:
            _, h = operator_newton_height(L, entry.beta)
            total += entry.multiplicity * entry.rho * h
    return total


def delta_for_thm5(L: DiffOp, P: BiPoly) -> int:
    """``sum_i rho_i H_{beta_i}(L)`` plus the bound on the non-removable part of ``lc(M)``."""
    s = weighted_height_sum(L, P)
    shape = ProblemShape(L.order, max(L.x_degree, 0), P.y_degree, max(P.x_degree, 0))
    value = s + lemma7_bound(shape)
    if value.denominator != 1:
        log.warning("delta %s is not integral; rounding up", value)
    return -((-value.numerator) // value.denominator)


# ---------------------------------------------------------------------------
# Lemma-6 style diagnostic
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ResultantFactor:
    factor: UniPoly
    multiplicity: int
    squarefree_degree: int
    bound: int

    @property
    def holds(self) -> bool:
        return self.squarefree_degree >= self.bound


def _trim(c: list) -> list:
    """Drop exactly-zero leading coefficients; raise on a zero-divisor leading coefficient."""
    c = list(c)
    while c and not c[-1]:
        c.pop()
    if c and isinstance(c[-1], QuotElem):
        inv = quot_inverse(c[-1])
        if isinstance(inv, ZeroDivisorWitness):
            raise inv
    return c


def _gcd_degree_over(a: list, b: list) -> int:
    """Degree of ``gcd(a, b)`` over a quotient ring (Euclid; zero divisors propagate)."""
    a, b = _trim(a), _trim(b)
    while b:
        inv = b[-1].inverse()
        while len(a) >= len(b):
            q = a[-1] * inv
            shift = len(a) - len(b)
            for i, x in enumerate(b):
                a[i + shift] = a[i + shift] - q * x
            a.pop()
            a = _trim(a)
        a, b = b, a
    return len(a) - 1


def _squarefree_degrees(P: BiPoly, f: UniPoly) -> list[tuple[UniPoly, int]]:
    ring = QuotRing(f.monic(), check=False)
    t = ring.gen()
    try:
        pa = [ring(0) + sum((t ** i * c for i, c in enumerate(P[b].c)), ring(0))
              for b in range(P.y_degree + 1)]
        pa = _trim(pa)
        dpa = [pa[b] * b for b in range(1, len(pa))]
        g = _gcd_degree_over(list(pa), dpa)
        return [(f.monic(), (len(pa) - 1) - g)]
    except ZeroDivisorWitness as w:
        g1, g2 = w.split()
        return _squarefree_degrees(P, g1) + _squarefree_degrees(P, g2)


def resultant_multiplicity_diagnostic(P: BiPoly) -> list[ResultantFactor]:
    """For each root class of ``Res_y(P, P_y)`` of multiplicity ``k``, the squarefree degree of ``P(alpha, y)``."""
    R = resultant_y(P, P.diff_y())
    if R.is_zero():
        raise ValueError("P is not squarefree")
    out = []
    for f, k in squarefree_decompose(R):
        for piece, sd in _squarefree_degrees(P, f):
            entry = ResultantFactor(piece, k, sd, P.y_degree - k)
            if not entry.holds:
                raise AssertionError(f"squarefree degree {sd} below {P.y_degree} - {k} at roots of {piece}")
            out.append(entry)
    return out


# ---------------------------------------------------------------------------
# desingularization
# ---------------------------------------------------------------------------

def _integral(M: DiffOp) -> DiffOp:
    den = 1
    for a in M.coeffs:
        for c in a.c:
            if type(c) is Fraction:
                den = den * c.denominator // gcd(den, c.denominator)
    return M * den if den != 1 else M


def _scaled_remainders(M: DiffOp, top: int) -> list[tuple[int, list[UniPoly]]]:
    """``(e_j, S_j)`` with ``lc^e_j * rem(D^j, M) = sum_k S_j[k] D^k`` for ``j <= top``."""
    r = M.order
    lc = M.lc()
    dlc = lc.derivative()
    out = []
    for j in range(min(r, top + 1)):
        out.append((0, [ONE if k == j else ZERO for k in range(r)]))
    if top < r:
        return out
    s = [-M[k] for k in range(r)]
    out.append((1, s))
    for j in range(r + 1, top + 1):
        e, s = out[-1]
        nxt = []
        for k in range(r):
            v = lc * s[k].derivative() - dlc * s[k] * e - s[r - 1] * M[k]
            if k > 0:
                v = v + lc * s[k - 1]
            nxt.append(v)
        out.append((e + 1, nxt))
    return out


def remainder_system(M: DiffOp, n: int, D: int) -> tuple[list[list[int]], int]:
    """Integer matrix whose kernel is the set of left multiples ``QM`` of order ``ord(M) + n``, degree ``<= D``.

    Column ``j * (D + 1) + i`` holds the coefficient of ``x^i D^j``.
    """
    r = M.order
    top = r + n
    rems = _scaled_remainders(M, top)
    E = max(e for e, _ in rems)
    lc = M.lc()
    lc_pows = [ONE]
    for _ in range(E):
        lc_pows.append(lc_pows[-1] * lc)
    cols = (top + 1) * (D + 1)
    blocks = []
    height = 0
    for j, (e, s) in enumerate(rems):
        scaled = [lc_pows[E - e] * a for a in s]
        blocks.append(scaled)
        height = max(height, max(a.degree for a in scaled))
    nrows_per_k = D + height + 1
    rows = [[0] * cols for _ in range(r * nrows_per_k)]
    for j, scaled in enumerate(blocks):
        for k, a in enumerate(scaled):
            for t, c in enumerate(a.c):
                if not c:
                    continue
                c = int(c)
                for i in range(D + 1):
                    rows[k * nrows_per_k + t + i][j * (D + 1) + i] = c
    rows = [row for row in rows if any(row)]
    return rows, cols


def _polymod_p(c: list[int], p: int) -> list[int]:
    c = [a % p for a in c]
    while c and not c[-1]:
        c.pop()
    return c


def _gcd_mod_p(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _polymod_p(a, p), _polymod_p(b, p)
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            q = a[-1] * inv % p
            shift = len(a) - len(b)
            for i, x in enumerate(b):
                a[i + shift] = (a[i + shift] - q * x) % p
            a = _polymod_p(a, p)
            if not a:
                break
        a, b = b, a
    return a


def _poly_mod_p(f: UniPoly, p: int) -> list[int]:
    out = []
    for c in f.c:
        c = Fraction(c)
        out.append(c.numerator * pow(c.denominator, -1, p) % p)
    return _polymod_p(out, p)


@dataclass
class _SearchOutcome:
    witness: Optional[DiffOp] = None
    split: Optional[UniPoly] = None


def _search(M: DiffOp, p: UniPoly, n: int, D: int, attempts: int) -> _SearchOutcome:
    M = _integral(M)
    r = M.order
    top = r + n
    rows, cols = remainder_system(M, n, D)
    system = ModularSystem(rows, cols)
    lc_cols = [top * (D + 1) + i for i in range(D + 1)]
    for prime in primes()[:3]:
        try:
            p_mod = _poly_mod_p(p, prime)
        except (ValueError, ZeroDivisionError):
            continue
        if len(p_mod) - 1 != p.degree:
            continue
        R, piv = rref_mod(system.mod(prime), prime)
        free = [c for c in range(cols) if c not in set(piv)]
        rng = random.Random(1000 * n + D)
        best = None  # (gcd degree, free values)
        pivot_of = {c: row for row, c in enumerate(piv)}
        for attempt in range(attempts):
            fv = [rng.randint(1, 100) for _ in free]
            fvals = dict(zip(free, fv))
            lc_mod = []
            for c in lc_cols:
                if c in fvals:
                    lc_mod.append(fvals[c] % prime)
                elif c in pivot_of:
                    row = R[pivot_of[c]]
                    lc_mod.append(-sum(int(row[f]) * v for f, v in zip(free, fv)) % prime)
                else:
                    lc_mod.append(0)
            lc_mod = _polymod_p(lc_mod, prime)
            if not lc_mod:
                continue
            gdeg = len(_gcd_mod_p(lc_mod, p_mod, prime)) - 1
            if best is None or gdeg < best[0]:
                best = (gdeg, fv)
            if gdeg == 0:
                break
        if best is None or best[0] >= p.degree:
            return _SearchOutcome()
        try:
            fcols, vectors = system.lifted_kernel(free_values=[best[1]])
        except LiftError:
            log.info("lift failed for desingularization system; trying another prime")
            continue
        if fcols != free:
            continue
        vec = vectors[0]
        Rop = DiffOp(UniPoly(vec[j * (D + 1) + i] for i in range(D + 1)) for j in range(top + 1))
        if Rop.is_zero() or Rop.order != top:
            continue
        g = poly_gcd(Rop.lc(), p)
        if g.degree == 0:
            return _SearchOutcome(witness=Rop)
        if g.degree < p.degree:
            return _SearchOutcome(split=g.monic())
        return _SearchOutcome()
    return _SearchOutcome()


def check_witness(R: DiffOp, M: DiffOp, p: UniPoly, n: int) -> None:
    """Assert the four witness postconditions of a removal of ``p`` at cost ``n``."""
    assert R.order == M.order + n, "witness order"
    assert all(isinstance(a, UniPoly) for a in R.coeffs), "polynomial coefficients"
    assert poly_gcd(R.lc(), p).degree == 0, "leading coefficient not coprime to the factor"
    _, rem = right_divide(R, M)
    assert rem.numerator.is_zero(), "witness is not a left multiple"


def desingularize(M: DiffOp, p: UniPoly, n: int, D: int) -> Optional[DiffOp]:
    """A left multiple ``R = QM`` with ``ord Q = n``, ``deg_x R <= D`` and ``gcd(lc R, p) = 1``."""
    from .diffop import primitive_normalize

    if n < 0:
        raise ValueError("cost must be nonnegative")
    if poly_gcd(M.lc(), p).degree <= 0:
        return M
    if n == 0:
        return None
    out = _search(M, p, n, D, attempts=M.order + n + 1)
    if out.witness is None:
        return None
    R = primitive_normalize(out.witness)
    check_witness(R, M, p, n)
    return R


@dataclass
class FactorReport:
    factor: UniPoly
    multiplicity: int
    removable: bool
    cost: int
    witness: Optional[DiffOp] = None

    @property
    def status(self) -> str:
        return f"removable_at({self.cost})" if self.removable else f"not_within({self.cost})"

    def to_dict(self) -> dict:
        out = {"factor": self.factor.to_str(), "degree": self.factor.degree,
               "multiplicity": self.multiplicity, "status": self.status}
        if self.witness is not None:
            out["witness_order"] = self.witness.order
            out["witness_degree"] = self.witness.x_degree
        return out


@dataclass
class RemovabilityReport:
    factors: list[FactorReport] = field(default_factory=list)

    @property
    def removable_degree(self) -> int:
        return sum(f.factor.degree for f in self.factors if f.removable)

    def to_dict(self) -> dict:
        return {"factors": [f.to_dict() for f in self.factors],
                "removable_degree": self.removable_degree}


def degree_schedule(start: int, cap: int) -> list[int]:
    d = max(start, 1)
    out = []
    while d < cap:
        out.append(d)
        d *= 2
    out.append(max(cap, start))
    return out


def removability_profile(M: DiffOp, n_max: int = 3, D_cap: Optional[int] = None) -> RemovabilityReport:
    """Smallest removal cost ``n <= n_max`` of each squarefree factor of ``lc(M)``."""
    from .diffop import primitive_normalize

    if M.is_zero():
        raise ValueError("zero operator")
    if D_cap is None:
        D_cap = max(20, 2 * M.x_degree)
    report = RemovabilityReport()
    work = [(f, k) for f, k in squarefree_decompose(M.lc())]
    while work:
        p, k = work.pop(0)
        found = None
        split = None
        for n in range(1, n_max + 1):
            for D in degree_schedule(M.x_degree, D_cap):
                out = _search(M, p, n, D, attempts=M.order + n + 1)
                if out.witness is not None:
                    R = primitive_normalize(out.witness)
                    check_witness(R, M, p, n)
                    found = (n, R)
                    break
                if out.split is not None and split is None:
                    split = out.split
            if found:
                break
        if found:
            report.factors.append(FactorReport(p, k, True, found[0], found[1]))
        elif split is not None:
            log.info("factor %s splits into parts with different removability", p)
            work = [(split, k), (p.exact_div(split).monic(), k)] + work
        else:
            report.factors.append(FactorReport(p, k, False, n_max))
    report.factors.sort(key=lambda f: (f.factor.degree, f.factor.c))
    return report


__all__ = [
    "BranchClass",
    "BranchDataAtInfinity",
    "FactorReport",
    "INFINITY",
    "NewtonPolygon",
    "RemovabilityReport",
    "ResultantFactor",
    "branch_data_at_infinity",
    "check_witness",
    "degree_schedule",
    "delta_for_thm5",
    "desingularize",
    "heights_over",
    "lower_hull",
    "operator_newton_height",
    "rational_roots",
    "remainder_system",
    "removability_profile",
    "resultant_multiplicity_diagnostic",
    "upper_hull",
    "weighted_height_sum",
]
