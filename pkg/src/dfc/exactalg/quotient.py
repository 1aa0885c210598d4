"""Arithmetic in ``Q[t]/(m(t))`` for a monic squarefree modulus ``m``.

Such a ring is a finite product of number fields, which is how we compute with
all conjugate roots of ``m`` at once.  Inverting an element that is a zero
divisor yields a :class:`ZeroDivisorWitness` carrying the nontrivial gcd, so
that callers can split the modulus and continue on each factor.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .polys import ONE, UniPoly, as_rational, poly_gcd, poly_xgcd


class ZeroDivisorWitness(ArithmeticError):
    """Raised (or returned) when an element shares a factor with the modulus."""

    def __init__(self, factor: UniPoly, modulus: UniPoly):
        super().__init__(f"zero divisor: gcd {factor.to_str('t')} of modulus {modulus.to_str('t')}")
        self.factor = factor
        self.modulus = modulus

    def split(self) -> tuple[UniPoly, UniPoly]:
        """``(g, m/g)``; both factors are again monic and squarefree."""
        return self.factor, self.modulus.exact_div(self.factor).monic()


class QuotRing:
    """The ring ``Q[t]/(m)``."""

    __slots__ = ("modulus", "n", "_reduce_table", "_hash")

    def __init__(self, modulus: UniPoly, check: bool = True):
        if modulus.degree < 1:
            raise ValueError("modulus must have positive degree")
        modulus = modulus.monic()
        if check and poly_gcd(modulus, modulus.derivative()).degree > 0:
            raise ValueError(f"modulus {modulus.to_str('t')} is not squarefree")
        self.modulus = modulus
        self.n = modulus.degree
        # t^(n+k) mod m for k = 0..n-2, as coefficient lists of length n
        table = []
        cur = [-a for a in modulus.c[:-1]]
        for _ in range(max(self.n - 1, 0)):
            table.append(cur)
            top = cur[-1]
            nxt = [0] + cur[:-1]
            if top:
                for i in range(self.n):
                    nxt[i] += top * table[0][i]
            cur = nxt
        self._reduce_table = table
        self._hash = hash(("QuotRing", modulus.c))

    def __eq__(self, other):
        return isinstance(other, QuotRing) and self.modulus == other.modulus

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"QuotRing({self.modulus.to_str('t')})"

    # elements -------------------------------------------------------------
    def __call__(self, value) -> "QuotElem":
        if isinstance(value, QuotElem):
            if value.ring != self:
                raise ValueError("ring mismatch")
            return value
        if isinstance(value, UniPoly):
            return QuotElem(self, self._reduce_list(list((value % self.modulus).c)))
        return QuotElem(self, self._reduce_list([as_rational(value)]))

    def gen(self) -> "QuotElem":
        return self(UniPoly((0, 1)))

    def zero(self) -> "QuotElem":
        return QuotElem(self, (0,) * self.n)

    def one(self) -> "QuotElem":
        return self(1)

    def _reduce_list(self, c: list) -> tuple:
        n = self.n
        if len(c) <= n:
            c = c + [0] * (n - len(c))
            return tuple(c)
        out = c[:n]
        for k, a in enumerate(c[n:]):
            if a:
                row = self._reduce_table[k]
                for i in range(n):
                    out[i] += a * row[i]
        return tuple(out)

    def _mul(self, a: tuple, b: tuple) -> tuple:
        n = self.n
        if n == 1:
            return (a[0] * b[0],)
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return self._reduce_list(prod)


def _norm(a):
    return a.numerator if type(a) is Fraction and a.denominator == 1 else a


class QuotElem:
    """Element of a :class:`QuotRing`; ``rep`` holds coefficients of ``1, t, ..., t^(n-1)``."""

    __slots__ = ("ring", "rep")

    def __init__(self, ring: QuotRing, rep: tuple):
        self.ring = ring
        self.rep = tuple(_norm(a) for a in rep)

    @property
    def representative(self) -> UniPoly:
        return UniPoly(self.rep)

    @property
    def modulus(self) -> UniPoly:
        return self.ring.modulus

    def is_zero(self) -> bool:
        return not any(self.rep)

    def __bool__(self):
        return any(self.rep)

    def _coerce(self, other):
        if isinstance(other, QuotElem):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("quotient ring mismatch")
            return other.rep
        if isinstance(other, (int, Fraction)):
            return (other,) + (0,) * (self.ring.n - 1)
        return None

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return QuotElem(self.ring, tuple(x + y for x, y in zip(self.rep, b)))

    __radd__ = __add__

    def __neg__(self):
        return QuotElem(self.ring, tuple(-x for x in self.rep))

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return QuotElem(self.ring, tuple(x - y for x, y in zip(self.rep, b)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return QuotElem(self.ring, (0,) * self.ring.n)
            return QuotElem(self.ring, tuple(x * other for x in self.rep))
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return QuotElem(self.ring, self.ring._mul(self.rep, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        return self * self.ring(other).inverse()

    def __rtruediv__(self, other):
        return self.ring(other) * self.inverse()

    def __pow__(self, k: int):
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "QuotElem":
        """Inverse, or raise :class:`ZeroDivisorWitness`."""
        res = quot_inverse(self)
        if isinstance(res, ZeroDivisorWitness):
            raise res
        return res

    def __eq__(self, other):
        b = self._coerce(other) if not isinstance(other, QuotElem) or other.ring == self.ring else None
        if b is None:
            return NotImplemented if not isinstance(other, QuotElem) else False
        return all(x == y for x, y in zip(self.rep, b))

    def __hash__(self):
        return hash((self.ring, self.rep))

    def __repr__(self):
        return f"[{self.representative.to_str('t')} mod {self.ring.modulus.to_str('t')}]"


RingElem = Union[int, Fraction, QuotElem]


def quot_inverse(e: QuotElem) -> Union[QuotElem, ZeroDivisorWitness]:
    """Inverse of ``e`` via extended Euclid, or the nontrivial gcd as a witness."""
    m = e.ring.modulus
    a = e.representative
    if a.is_zero():
        return ZeroDivisorWitness(m, m)
    if e.ring.n == 1:
        return QuotElem(e.ring, (Fraction(1) / e.rep[0],))
    g, s, _ = poly_xgcd(a, m)
    if g != ONE:
        return ZeroDivisorWitness(g, m)
    return e.ring(s)


def is_unit(value) -> bool:
    if isinstance(value, QuotElem):
        return not isinstance(quot_inverse(value), ZeroDivisorWitness)
    return bool(value)
