"""Truncated power series over Q or over a squarefree quotient ring Q[t]/(m).

A series records its expansion point ``base`` (a rational number or a ring
element such as the generic root ``t``) and the number ``order`` of known
coefficients.  Arithmetic is truncated to the shorter operand.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .diffop import DiffOp
from .exactalg.polys import BiPoly, UniPoly, as_rational, poly_gcd
from .exactalg.quotient import QuotElem, QuotRing, ZeroDivisorWitness, quot_inverse


class SingularBranch(ArithmeticError):
    """``P_y`` is not invertible at the starting point of a branch."""

    def __init__(self, message: str, witness: Optional[ZeroDivisorWitness] = None):
        super().__init__(message)
        self.witness = witness


class SingularExpansionPoint(ArithmeticError):
    """The leading coefficient of the operator vanishes at the expansion point."""

    def __init__(self, message: str, witness: Optional[ZeroDivisorWitness] = None):
        super().__init__(message)
        self.witness = witness


def _ring_of(values) -> Optional[QuotRing]:
    for v in values:
        if isinstance(v, QuotElem):
            return v.ring
    return None


def _invert(a, ring: Optional[QuotRing]):
    """Inverse of a scalar; returns a ZeroDivisorWitness for quotient-ring zero divisors."""
    if isinstance(a, QuotElem):
        return quot_inverse(a)
    if ring is not None:
        return quot_inverse(ring(a))
    if not a:
        return None
    return Fraction(1) / a


def _lift(a, ring: Optional[QuotRing]):
    if ring is None or isinstance(a, QuotElem):
        return a
    return ring(a)


def _norm(a):
    if type(a) is Fraction and a.denominator == 1:
        return a.numerator
    return a


def _is_zero(a) -> bool:
    return not a


class TruncSeries:
    """``sum_{n < order} coeffs[n] * (x - base)^n + O((x - base)^order)``."""

    __slots__ = ("coeffs", "ring", "base")

    def __init__(self, coeffs: Sequence, ring: Optional[QuotRing] = None, base=0):
        coeffs = list(coeffs)
        if ring is None:
            ring = _ring_of(coeffs)
        if ring is not None:
            coeffs = [_lift(c, ring) for c in coeffs]
        else:
            coeffs = [_norm(as_rational(c)) for c in coeffs]
        self.coeffs = tuple(coeffs)
        self.ring = ring
        self.base = base

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def _zero(self):
        return self.ring.zero() if self.ring is not None else 0

    def _check(self, other: "TruncSeries"):
        if not isinstance(other, TruncSeries):
            raise TypeError("expected a TruncSeries")
        if self.ring is not None and other.ring is not None and self.ring != other.ring:
            raise ValueError("coefficient ring mismatch")
        if self.base != other.base:
            raise ValueError("expansion point mismatch")

    def _ring_with(self, other):
        return self.ring if self.ring is not None else other.ring

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def truncate(self, n: int) -> "TruncSeries":
        if n > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncSeries(self.coeffs[:n], self.ring, self.base)

    def scale(self, c) -> "TruncSeries":
        return TruncSeries([a * c for a in self.coeffs], self.ring, self.base)

    def __add__(self, other):
        if isinstance(other, TruncSeries):
            self._check(other)
            n = min(self.order, other.order)
            return TruncSeries([self.coeffs[i] + other.coeffs[i] for i in range(n)],
                               self._ring_with(other), self.base)
        if self.order == 0:
            return self
        return TruncSeries([self.coeffs[0] + other, *self.coeffs[1:]], self.ring, self.base)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-a for a in self.coeffs], self.ring, self.base)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            self._check(other)
            n = min(self.order, other.order)
            return TruncSeries(_mul_coeffs(self.coeffs, other.coeffs, n, self._zero()),
                               self._ring_with(other), self.base)
        return self.scale(other)

    __rmul__ = __mul__

    def mul_trunc(self, other: "TruncSeries", n: int) -> "TruncSeries":
        """Product keeping only the first ``n`` coefficients."""
        self._check(other)
        n = min(n, self.order, other.order)
        return TruncSeries(_mul_coeffs(self.coeffs, other.coeffs, n, self._zero()),
                           self._ring_with(other), self.base)

    def derive(self) -> "TruncSeries":
        return TruncSeries([self.coeffs[n] * n for n in range(1, self.order)], self.ring, self.base)

    def valuation(self) -> int:
        for n, a in enumerate(self.coeffs):
            if not _is_zero(a):
                return n
        return self.order

    def is_zero(self) -> bool:
        return all(_is_zero(a) for a in self.coeffs)

    def mul_poly(self, p: UniPoly) -> "TruncSeries":
        """Multiply by a polynomial in ``x`` (re-expanded around ``base``)."""
        q = _shifted(p, self.base)
        return TruncSeries(_mul_coeffs(self.coeffs, q, self.order, self._zero()), self.ring, self.base)

    def inverse(self) -> "TruncSeries":
        """Multiplicative inverse; the constant term must be a unit."""
        inv0 = _invert(self.coeffs[0], self.ring)
        if inv0 is None or isinstance(inv0, ZeroDivisorWitness):
            raise ZeroDivisionError("constant term is not invertible")
        out = [inv0]
        for n in range(1, self.order):
            s = self._zero()
            for k in range(1, n + 1):
                a = self.coeffs[k]
                if not _is_zero(a):
                    s = s + a * out[n - k]
            out.append(-(s * inv0))
        return TruncSeries(out, self.ring, self.base)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        if self.order != other.order or self.base != other.base:
            return False
        return all(_is_zero(a - b) for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.coeffs, self.order))

    def __repr__(self):
        terms = ", ".join(str(c) for c in self.coeffs[:6])
        more = ", ..." if self.order > 6 else ""
        return f"TruncSeries([{terms}{more}], order={self.order}, base={self.base})"


def _mul_coeffs(a: Sequence, b: Sequence, n: int, zero):
    out = []
    na, nb = len(a), len(b)
    nza = [i for i in range(min(na, n)) if not _is_zero(a[i])]
    for k in range(n):
        s = zero
        for i in nza:
            if i > k:
                break
            j = k - i
            if j < nb:
                bj = b[j]
                if not _is_zero(bj):
                    s = s + a[i] * bj
        out.append(s)
    return out


def _shifted(p: UniPoly, base) -> list:
    """Coefficients of ``p(base + s)`` in powers of ``s``."""
    if isinstance(base, QuotElem):
        c = [base.ring(a) for a in p.c]
        # Taylor shift by repeated synthetic division
        n = len(c)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                c[j] = c[j] + base * c[j + 1]
        return c
    if base == 0:
        return list(p.c)
    return list(p.shift(base).c)


def series_add(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a + b


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a * b


def series_derive(a: TruncSeries) -> TruncSeries:
    return a.derive()


def poly_series(p: UniPoly, n: int, base=0, ring: Optional[QuotRing] = None) -> TruncSeries:
    """The polynomial ``p`` expanded around ``base`` to order ``n``."""
    c = _shifted(p, base)[:n]
    zero = ring.zero() if ring is not None else 0
    c = c + [zero] * (n - len(c))
    return TruncSeries(c, ring, base)


def series_compose(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    """``f(g(x))`` for ``f`` expanded at ``g``'s constant term.

    Horner evaluation in ``Z = g - g(base)``; since ``Z`` has positive
    valuation, the step that will later be multiplied by ``Z^k`` only needs
    ``N - k`` coefficients.
    """
    if g.order == 0:
        raise ValueError("empty series")
    if not _is_zero(g.coeffs[0] - f.base):
        raise ValueError("base point mismatch: g(base) differs from the expansion point of f")
    Z = TruncSeries([g._zero(), *g.coeffs[1:]], g._ring_with(f), g.base) if g.order > 1 else None
    N = min(f.order, g.order)
    ring = g._ring_with(f)
    zero = ring.zero() if ring is not None else 0
    if N == 0:
        return TruncSeries([], ring, g.base)
    acc = [f.coeffs[N - 1]]
    zc = Z.coeffs if Z is not None else ()
    for k in range(N - 2, -1, -1):
        width = N - k
        prod = [zero] * width
        for i, a in enumerate(acc):
            if _is_zero(a):
                continue
            for j in range(1, width - i):
                if j >= len(zc):
                    break
                z = zc[j]
                if not _is_zero(z):
                    prod[i + j] = prod[i + j] + a * z
        prod[0] = prod[0] + f.coeffs[k]
        acc = prod
    return TruncSeries(acc, ring, g.base)


# ---------------------------------------------------------------------------
# algebraic branches
# ---------------------------------------------------------------------------

def _bivariate_at(P: BiPoly, alpha, ring: Optional[QuotRing]):
    """``P(alpha + s, y)`` as a list (by powers of y) of coefficient lists in ``s``."""
    return [_shifted(p, alpha) for p in P.ycoeffs]


def _eval_bipoly_series(Pshift, g: TruncSeries, n: int) -> TruncSeries:
    """``P(alpha + s, g(s))`` truncated to order ``n`` (Horner in y)."""
    zero = g._zero()
    acc = TruncSeries(list(Pshift[-1][:n]) + [zero] * max(0, n - len(Pshift[-1])), g.ring, g.base)
    acc = acc.truncate(n)
    for b in range(len(Pshift) - 2, -1, -1):
        acc = acc.mul_trunc(g, n)
        c = Pshift[b]
        acc = TruncSeries([acc.coeffs[i] + (c[i] if i < len(c) else 0) for i in range(acc.order)],
                          g.ring, g.base)
    return acc


def branch_lift(P: BiPoly, alpha, y0, N: int) -> TruncSeries:
    """Root ``g`` of ``P(x, g) = 0`` with ``g(alpha) = y0``, to order ``N``, by Newton iteration."""
    ring = _ring_of([alpha, y0])
    alpha_r = alpha
    Pshift = _bivariate_at(P, alpha_r, ring)
    if ring is not None:
        Pshift = [[ring(a) for a in c] for c in Pshift]
    Py = P.diff_y()
    Pyshift = _bivariate_at(Py, alpha_r, ring)
    if ring is not None:
        Pyshift = [[ring(a) for a in c] for c in Pyshift]
    g0 = TruncSeries([y0], ring, alpha)
    if not _eval_bipoly_series(Pshift, g0, 1).is_zero():
        raise ValueError("y0 is not a root of P(alpha, y)")
    d0 = _eval_bipoly_series(Pyshift, g0, 1).coeffs[0]
    inv = _invert(d0, ring)
    if inv is None:
        raise SingularBranch("singular branch: P_y vanishes at the starting point")
    if isinstance(inv, ZeroDivisorWitness):
        raise SingularBranch("singular branch: P_y is a zero divisor at the starting point", inv)
    g = g0
    prec = 1
    zero = g._zero()
    while prec < N:
        prec = min(2 * prec, N)
        gext = TruncSeries(list(g.coeffs) + [zero] * (prec - g.order), ring, alpha)
        res = _eval_bipoly_series(Pshift, gext, prec)
        der = _eval_bipoly_series(Pyshift, gext, prec)
        corr = res.mul_trunc(der.inverse(), prec)
        g = gext - corr
    if N == 0:
        return TruncSeries([], ring, alpha)
    g = g.truncate(N)
    if not _eval_bipoly_series(Pshift, g, N).is_zero():
        raise ArithmeticError("Newton iteration did not converge")
    return g


def generic_modulus(P: BiPoly, alpha) -> UniPoly:
    """Monic ``P(alpha, t)``; raises if it is not squarefree of full degree."""
    alpha = as_rational(alpha)
    p = P.eval_x(alpha)
    if p.degree != P.y_degree:
        raise ValueError(f"P({alpha}, y) drops degree (condition S1 fails)")
    if poly_gcd(p, p.derivative()).degree > 0:
        raise ValueError(f"P({alpha}, y) is not squarefree (condition S1 fails)")
    return p.monic()


def all_branches(P: BiPoly, alpha, N: int) -> TruncSeries:
    """The generic branch over ``Q[t]/(P(alpha, t))`` whose constant term is ``t``."""
    m = generic_modulus(P, alpha)
    K = QuotRing(m, check=False)
    return branch_lift(P, as_rational(alpha), K.gen(), N)


# ---------------------------------------------------------------------------
# local solutions of L
# ---------------------------------------------------------------------------

def local_solution_basis(L: DiffOp, beta, N: int) -> list[TruncSeries]:
    """Solutions ``f_i = (x - beta)^(i-1) + O((x - beta)^r)`` of ``L`` to order ``N``."""
    r = L.order
    ring = beta.ring if isinstance(beta, QuotElem) else None
    zero = ring.zero() if ring is not None else 0
    shifted = [_shifted(L[k], beta) for k in range(r + 1)]
    lead = shifted[r][0] if shifted[r] else zero
    inv = _invert(lead, ring)
    if inv is None:
        raise SingularExpansionPoint("singular expansion point: leading coefficient vanishes")
    if isinstance(inv, ZeroDivisorWitness):
        raise SingularExpansionPoint("singular expansion point: leading coefficient is a zero divisor", inv)
    # falling factorials (n+k)!/n! for k <= r
    basis = []
    for i in range(min(r, N)):
        c = [zero] * N
        c[i] = _lift(1, ring)
        for n in range(0, N - r):
            # coefficient of s^n in L(f): sum_k sum_j l_{k,j} * (n-j+k)!/(n-j)! * c[n-j+k]
            s = zero
            for k in range(r + 1):
                lk = shifted[k]
                for j, a in enumerate(lk):
                    if _is_zero(a) or j > n or (k == r and j == 0):
                        continue
                    m = n - j
                    ff = 1
                    for t in range(1, k + 1):
                        ff *= m + t
                    s = s + a * (c[m + k] * ff)
            ff = 1
            for t in range(1, r + 1):
                ff *= n + t
            c[n + r] = -(s * inv) * Fraction(1, ff)
        basis.append(TruncSeries(c, ring, beta))
    return basis
