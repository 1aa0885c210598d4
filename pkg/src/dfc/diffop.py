"""Linear differential operators with polynomial or rational-function coefficients.

Operators are written ``sum_j a_j(x) D^j`` with ``D x = x D + 1``.  A
:class:`DiffOp` has coefficients in Q[x]; a :class:`RatDiffOp` is a DiffOp
divided by a common polynomial denominator, which is enough to represent any
element of Q(x)[D].

>>> D, x = DiffOp.d(), DiffOp.x()
>>> D * x
DiffOp(x*D + 1)
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd, lcm
from typing import Iterable, Sequence, Union

from .exactalg.polys import ONE, ZERO, UniPoly, as_rational, poly_gcd


def _poly(a) -> UniPoly:
    return a if isinstance(a, UniPoly) else UniPoly.const(as_rational(a))


class DiffOp:
    """An element of Q[x][D]; ``coeffs[j]`` multiplies ``D**j``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [_poly(a) for a in coeffs]
        while c and c[-1].is_zero():
            c.pop()
        self.coeffs: tuple[UniPoly, ...] = tuple(c)

    @classmethod
    def d(cls) -> "DiffOp":
        return cls([ZERO, ONE])

    @classmethod
    def x(cls) -> "DiffOp":
        return cls([UniPoly((0, 1))])

    @classmethod
    def from_table(cls, table: Sequence[Sequence]) -> "DiffOp":
        """``table[j][i]`` is the coefficient of ``x**i D**j``."""
        return cls(UniPoly(row) for row in table)

    def to_table(self) -> list[list]:
        return [list(a.c) for a in self.coeffs]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def x_degree(self) -> int:
        return max((a.degree for a in self.coeffs), default=-1)

    def lc(self) -> UniPoly:
        return self.coeffs[-1] if self.coeffs else ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, j: int) -> UniPoly:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else ZERO

    def __eq__(self, other):
        if isinstance(other, DiffOp):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _as_op(other)
        if other is None:
            return NotImplemented
        if isinstance(other, RatDiffOp):
            return RatDiffOp(self) + other
        n = max(len(self.coeffs), len(other.coeffs))
        return DiffOp(self[j] + other[j] for j in range(n))

    __radd__ = __add__

    def __neg__(self):
        return DiffOp(-a for a in self.coeffs)

    def __sub__(self, other):
        other = _as_op(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, UniPoly)):
            return op_mul(self, DiffOp([other]))
        if isinstance(other, (DiffOp, RatDiffOp)):
            return op_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, UniPoly)):
            return DiffOp(other * a for a in self.coeffs)
        return NotImplemented

    def __pow__(self, n: int):
        out = DiffOp([ONE])
        for _ in range(n):
            out = out * self
        return out

    def to_str(self) -> str:
        parts = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[j]
            if a.is_zero():
                continue
            d = "" if j == 0 else ("D" if j == 1 else f"D^{j}")
            s = a.to_str("x")
            if not d:
                parts.append(s)
            elif s == "1":
                parts.append(d)
            elif s == "-1":
                parts.append("-" + d)
            elif len(a.c) - sum(1 for c in a.c if not c) > 1:
                parts.append(f"({s})*{d}")
            else:
                parts.append(f"{s}*{d}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"DiffOp({self.to_str()})"


class RatDiffOp:
    """``numerator / denominator`` with the denominator on the left."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: DiffOp, denominator: UniPoly = ONE, reduce: bool = True):
        denominator = _poly(denominator)
        if denominator.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce:
            numerator, denominator = _content_reduce(numerator, denominator)
        self.numerator = numerator
        self.denominator = denominator

    @property
    def order(self) -> int:
        return self.numerator.order

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def is_polynomial(self) -> bool:
        return self.denominator.degree == 0

    def coefficient(self, j: int) -> tuple[UniPoly, UniPoly]:
        return self.numerator[j], self.denominator

    def __eq__(self, other):
        other = _as_rat(other)
        if other is None:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __add__(self, other):
        other = _as_rat(other)
        if other is None:
            return NotImplemented
        g = poly_gcd(self.denominator, other.denominator)
        fa = other.denominator.exact_div(g)
        fb = self.denominator.exact_div(g)
        num = DiffOp(fa * a for a in self.numerator.coeffs) + DiffOp(fb * b for b in other.numerator.coeffs)
        return RatDiffOp(num, self.denominator * fa)

    __radd__ = __add__

    def __neg__(self):
        return RatDiffOp(-self.numerator, self.denominator, reduce=False)

    def __sub__(self, other):
        other = _as_rat(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, UniPoly)):
            other = DiffOp([other])
        if isinstance(other, (DiffOp, RatDiffOp)):
            return op_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, UniPoly)):
            return RatDiffOp(DiffOp(other * a for a in self.numerator.coeffs), self.denominator)
        return NotImplemented

    def to_str(self) -> str:
        if self.denominator == ONE:
            return self.numerator.to_str()
        return f"({self.denominator.to_str()})^-1 * ({self.numerator.to_str()})"

    def __repr__(self):
        return f"RatDiffOp({self.to_str()})"


AnyOp = Union[DiffOp, RatDiffOp]


def _as_op(other):
    if isinstance(other, (DiffOp, RatDiffOp)):
        return other
    if isinstance(other, (int, Fraction, UniPoly)):
        return DiffOp([other])
    return None


def _as_rat(other):
    other = _as_op(other)
    if isinstance(other, DiffOp):
        return RatDiffOp(other, reduce=False)
    return other


def _content_reduce(num: DiffOp, den: UniPoly) -> tuple[DiffOp, UniPoly]:
    if num.is_zero():
        return num, ONE
    g = den
    for a in num.coeffs:
        if g.degree == 0:
            break
        g = poly_gcd(g, a)
    if g.degree > 0:
        num = DiffOp(a.exact_div(g) for a in num.coeffs)
        den = den.exact_div(g)
    # make the denominator monic
    lc = den.lc()
    if lc != 1:
        inv = Fraction(1) / lc
        num = DiffOp(a * inv for a in num.coeffs)
        den = den * inv
    return num, den


def _mul_poly_ops(A: DiffOp, B: DiffOp) -> DiffOp:
    """Leibniz rule: ``(a D^i)(b D^j) = a * sum_k C(i,k) b^(k) D^(i+j-k)``."""
    if A.is_zero() or B.is_zero():
        return DiffOp()
    out = [ZERO] * (A.order + B.order + 1)
    for j, b in enumerate(B.coeffs):
        if b.is_zero():
            continue
        derivs = [b]
        for _ in range(A.order):
            derivs.append(derivs[-1].derivative())
        for i, a in enumerate(A.coeffs):
            if a.is_zero():
                continue
            for k in range(i + 1):
                dk = derivs[k]
                if dk.is_zero():
                    break
                out[i + j - k] = out[i + j - k] + a * dk * comb(i, k)
    return DiffOp(out)


def _inverse_derivs(q: UniPoly, n: int) -> list[UniPoly]:
    """``s_k`` with ``(1/q)^(k) = s_k / q^(k+1)`` for ``k = 0..n``."""
    s = [ONE]
    dq = q.derivative()
    for k in range(n):
        s.append(s[k].derivative() * q - s[k] * dq * (k + 1))
    return s


def op_mul(A: AnyOp, B: AnyOp) -> AnyOp:
    """Product in the operator algebra; polynomial times polynomial stays a DiffOp."""
    if isinstance(A, DiffOp) and isinstance(B, DiffOp):
        return _mul_poly_ops(A, B)
    A = _as_rat(A)
    B = _as_rat(B)
    if A.is_zero() or B.is_zero():
        return RatDiffOp(DiffOp())
    q = B.denominator
    if q.degree == 0:
        num = _mul_poly_ops(A.numerator, DiffOp(a * (Fraction(1) / q.lc()) for a in B.numerator.coeffs))
        return RatDiffOp(num, A.denominator)
    # A.numerator * (1/q) = q^-(n+1) * sum_i a_i sum_k C(i,k) s_k q^(n-k) D^(i-k)
    n = A.order
    s = _inverse_derivs(q, n)
    qpow = [ONE]
    for _ in range(n + 1):
        qpow.append(qpow[-1] * q)
    mid = [ZERO] * (n + 1)
    for i, a in enumerate(A.numerator.coeffs):
        if a.is_zero():
            continue
        for k in range(i + 1):
            if s[k].is_zero():
                continue
            mid[i - k] = mid[i - k] + a * s[k] * qpow[n - k] * comb(i, k)
    num = _mul_poly_ops(DiffOp(mid), B.numerator)
    return RatDiffOp(num, A.denominator * qpow[n + 1])


def op_apply(A: DiffOp, f):
    """Apply ``A`` to a truncated series; the result loses ``order(A)`` coefficients."""
    from .series import TruncSeries

    if not isinstance(f, TruncSeries):
        raise TypeError("op_apply expects a TruncSeries")
    if A.is_zero():
        return f.truncate(f.order).scale(0)
    r = A.order
    if f.order < r:
        raise ValueError(f"series truncated at order {f.order} is too short for an operator of order {r}")
    n = f.order - r
    out = None
    deriv = f
    for j in range(r + 1):
        a = A[j]
        if not a.is_zero():
            term = deriv.truncate(n).mul_poly(a)
            out = term if out is None else out + term
        if j < r:
            deriv = deriv.derive()
    if out is None:
        out = f.truncate(n).scale(0)
    return out


def right_divide(A: AnyOp, B: DiffOp) -> tuple[RatDiffOp, RatDiffOp]:
    """``A = Q*B + R`` with ``order(R) < order(B)`` over Q(x)."""
    if B.is_zero():
        raise ZeroDivisionError("right division by the zero operator")
    R = _as_rat(A)
    rb = B.order
    lb = B.lc()
    Q = RatDiffOp(DiffOp())
    while not R.is_zero() and R.order >= rb:
        k = R.order - rb
        # term = (lc(R) / lc(B)) D^k
        top = R.numerator.lc()
        term = RatDiffOp(DiffOp([ZERO] * k + [top]), R.denominator * lb)
        Q = Q + term
        R = R - op_mul(term, B)
    return Q, R


def primitive_normalize(A: AnyOp) -> DiffOp:
    """Canonical associate: integral coefficients, trivial content, positive leading rational."""
    if isinstance(A, RatDiffOp):
        A = A.numerator
    if A.is_zero():
        raise ValueError("cannot normalize the zero operator")
    g = ZERO
    for a in A.coeffs:
        g = poly_gcd(g, a)
        if g.degree == 0:
            break
    coeffs = [a.exact_div(g) for a in A.coeffs] if g.degree > 0 else list(A.coeffs)
    den = 1
    for a in coeffs:
        for c in a.c:
            if type(c) is Fraction:
                den = lcm(den, c.denominator)
    ints = [[int(c * den) for c in a.c] for a in coeffs]
    cont = 0
    for row in ints:
        for c in row:
            cont = gcd(cont, c)
    sign = -1 if ints[-1][-1] < 0 else 1
    return DiffOp(UniPoly([sign * c // cont for c in row]) for row in ints)


def associates(A: AnyOp, B: AnyOp) -> bool:
    """True when ``A`` and ``B`` agree up to a nonzero factor in Q(x)."""
    return primitive_normalize(A) == primitive_normalize(B)
