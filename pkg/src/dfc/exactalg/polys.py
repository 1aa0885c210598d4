"""Dense univariate and bivariate polynomials over the rationals.

Coefficients are Python ``int`` or :class:`fractions.Fraction`; a Fraction
whose denominator is 1 is stored as an ``int`` so that integral inputs stay on
the fast path.  Polynomials are immutable.

``BiPoly`` stores a polynomial in ``x`` and ``y`` as a tuple of ``UniPoly`` in
``x`` indexed by the power of ``y``, which is the convenient layout for
eliminating ``y``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from math import lcm as ilcm
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


def as_rational(value) -> Rational:
    """Coerce ``value`` (int, Fraction or a string such as ``"-3/4"``) to a rational."""
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        value = Fraction(value.strip())
        return value.numerator if value.denominator == 1 else value
    raise TypeError(f"not an exact rational: {value!r}")


def _clean(c: list) -> tuple:
    while c and not c[-1]:
        c.pop()
    for i, a in enumerate(c):
        if type(a) is Fraction and a.denominator == 1:
            c[i] = a.numerator
    return tuple(c)


def _is_scalar(other) -> bool:
    return isinstance(other, (int, Fraction)) and not isinstance(other, bool)


class UniPoly:
    """A polynomial in one variable; ``coeffs[i]`` is the coefficient of ``x**i``."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        self.c = _clean([as_rational(a) for a in coeffs])

    @classmethod
    def _raw(cls, c: list) -> "UniPoly":
        obj = cls.__new__(cls)
        obj.c = _clean(c)
        return obj

    @classmethod
    def const(cls, a) -> "UniPoly":
        return cls((a,))

    @classmethod
    def monomial(cls, n: int, a=1) -> "UniPoly":
        return cls._raw([0] * n + [as_rational(a)])

    # -- basic queries -----------------------------------------------------
    @property
    def coeffs(self) -> tuple:
        return self.c

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self) -> bool:
        return bool(self.c)

    def lc(self) -> Rational:
        return self.c[-1] if self.c else 0

    def __getitem__(self, i: int) -> Rational:
        return self.c[i] if 0 <= i < len(self.c) else 0

    def valuation(self) -> int:
        """Order of vanishing at 0 (``-1`` for the zero polynomial)."""
        for i, a in enumerate(self.c):
            if a:
                return i
        return -1

    def is_const(self) -> bool:
        return len(self.c) <= 1

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        if _is_scalar(other):
            other = UniPoly._raw([other])
        elif not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        c = list(a)
        for i, x in enumerate(b):
            c[i] += x
        return UniPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw([-a for a in self.c])

    def __sub__(self, other):
        if _is_scalar(other):
            other = UniPoly._raw([other])
        elif not isinstance(other, UniPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            if not other:
                return ZERO
            return UniPoly._raw([a * other for a in self.c])
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self.c, other.c
        if not a or not b:
            return ZERO
        c = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    c[i + j] += x * y
        return UniPoly._raw(c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other: "UniPoly"):
        if _is_scalar(other):
            other = UniPoly._raw([other])
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        db = other.degree
        lb = other.c[-1]
        if len(r) - 1 < db:
            return ZERO, self
        q = [0] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            a = r[k + db]
            if a:
                f = Fraction(a, lb) if isinstance(a, int) and isinstance(lb, int) else a / lb
                q[k] = f
                for j, y in enumerate(other.c):
                    r[k + j] -= f * y
        return UniPoly._raw(q), UniPoly._raw(r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UniPoly":
        """Quotient of an exact division; raises ``ArithmeticError`` otherwise."""
        if _is_scalar(other):
            if not other:
                raise ZeroDivisionError("division by zero")
            inv = Fraction(1, other) if isinstance(other, int) else 1 / other
            return self * inv
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def divides(self, other: "UniPoly") -> bool:
        return not (other % self)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.c == other.c
        if _is_scalar(other):
            return self.c == _clean([other])
        return NotImplemented

    def __hash__(self):
        return hash(("UniPoly", self.c))

    # -- calculus / evaluation --------------------------------------------
    def __call__(self, value):
        """Horner evaluation; ``value`` may be any ring element supporting + and *."""
        if not self.c:
            return 0 * value if not _is_scalar(value) else 0
        acc = self.c[-1]
        for a in reversed(self.c[:-1]):
            acc = acc * value + a
        if not _is_scalar(value) and _is_scalar(acc):
            acc = 0 * value + acc
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly._raw([i * a for i, a in enumerate(self.c)][1:])

    def shift(self, a) -> "UniPoly":
        """The Taylor shift ``p(x + a)``."""
        a = as_rational(a)
        c = list(self.c)
        n = len(c)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                c[j] += a * c[j + 1]
        return UniPoly._raw(c)

    def compose(self, q: "UniPoly") -> "UniPoly":
        return self(q) if self.c else ZERO

    def monic(self) -> "UniPoly":
        if not self.c:
            return self
        return self.exact_div(self.c[-1])

    def primitive(self) -> tuple[Fraction, "UniPoly"]:
        """Split into ``(content, p)`` with ``p`` integral, primitive and positive leading coefficient."""
        if not self.c:
            return Fraction(0), self
        den = 1
        for a in self.c:
            if type(a) is Fraction:
                den = ilcm(den, a.denominator)
        ints = [int(a * den) for a in self.c]
        g = 0
        for a in ints:
            g = igcd(g, a)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), UniPoly._raw([a // g for a in ints])

    def to_str(self, var: str = "x") -> str:
        if not self.c:
            return "0"
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if not a:
                continue
            mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if mon and a == 1:
                s = mon
            elif mon and a == -1:
                s = "-" + mon
            else:
                s = f"({a})" if type(a) is Fraction or (mon and a < 0) else str(a)
                s = s + ("*" + mon if mon else "")
            terms.append(s)
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self):
        return f"UniPoly({self.to_str()})"


ZERO = UniPoly._raw([])
ONE = UniPoly._raw([1])
X = UniPoly._raw([0, 1])


# ---------------------------------------------------------------------------
# gcd and friends
# ---------------------------------------------------------------------------

def _prem_int(a: tuple, b: tuple) -> list:
    """Integer pseudo-remainder of coefficient tuples (ints)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        t = r[-1]
        r = [lb * x for x in r]
        for j, y in enumerate(b):
            r[k + j] -= t * y
        r.pop()
        while r and not r[-1]:
            r.pop()
    return r


def _primitive_int(c: list) -> tuple:
    g = 0
    for a in c:
        g = igcd(g, a)
    if g == 0:
        return ()
    if c[-1] < 0:
        g = -g
    return tuple(a // g for a in c)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor (``gcd(0, 0) = 0``)."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    _, pa = a.primitive()
    _, pb = b.primitive()
    x, y = pa.c, pb.c
    if len(x) < len(y):
        x, y = y, x
    while y:
        if len(y) == 1:
            return ONE
        r = _prem_int(x, y)
        x, y = y, _primitive_int(r) if r else ()
    return UniPoly._raw(list(x)).monic()


def poly_lcm(a: UniPoly, b: UniPoly) -> UniPoly:
    if a.is_zero() or b.is_zero():
        return ZERO
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def poly_xgcd(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    """Extended Euclid over Q: returns ``(g, s, t)`` with ``s*a + t*b = g`` monic."""
    r0, r1 = a, b
    s0, s1 = ONE, ZERO
    t0, t1 = ZERO, ONE
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return ZERO, ZERO, ZERO
    lc = r0.lc()
    return r0.exact_div(lc), s0.exact_div(lc), t0.exact_div(lc)


def squarefree_decompose(a: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm.

    Returns monic, pairwise coprime, squarefree factors with multiplicities,
    so that ``a == a.lc() * prod(f**k)``.  Raises ``ValueError`` on zero.
    """
    if a.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    a = a.monic()
    if a.degree < 1:
        return []
    b = a.derivative()
    c = poly_gcd(a, b)
    w = a.exact_div(c)
    y = b.exact_div(c)
    z = y - w.derivative()
    out = []
    i = 1
    while w.degree > 0:
        g = poly_gcd(w, z)
        if g.degree > 0:
            out.append((g, i))
        w = w.exact_div(g)
        y = z.exact_div(g)
        z = y - w.derivative()
        i += 1
    return out


def squarefree_part(a: UniPoly) -> UniPoly:
    if a.is_zero():
        return a
    return a.monic().exact_div(poly_gcd(a, a.derivative()))


# ---------------------------------------------------------------------------
# matrices over Q[x]
# ---------------------------------------------------------------------------

def _bareiss(rows: list[list[UniPoly]], n: int) -> tuple[int, list[list[UniPoly]]] | None:
    """Fraction-free elimination of the leading ``n`` columns in place.

    Returns ``(sign, rows)`` or ``None`` if the leading square block is singular.
    """
    sign = 1
    prev = ONE
    width = len(rows[0]) if rows else 0
    for k in range(n):
        piv = next((i for i in range(k, n) if rows[i][k]), None)
        if piv is None:
            return None
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            sign = -sign
        rk = rows[k]
        akk = rk[k]
        for i in range(k + 1, n):
            ri = rows[i]
            aik = ri[k]
            for j in range(k + 1, width):
                t = ri[j] * akk - aik * rk[j]
                ri[j] = t.exact_div(prev) if prev != ONE else t
            ri[k] = ZERO
        prev = akk
    return sign, rows


def poly_det(matrix: Sequence[Sequence[UniPoly]]) -> UniPoly:
    """Determinant of a square matrix with ``UniPoly`` entries (Bareiss)."""
    n = len(matrix)
    if n == 0:
        return ONE
    rows = [[e if isinstance(e, UniPoly) else UniPoly.const(e) for e in row] for row in matrix]
    res = _bareiss(rows, n)
    if res is None:
        return ZERO
    sign, rows = res
    return rows[n - 1][n - 1] * sign


def cramer_solve(matrix: Sequence[Sequence[UniPoly]],
                 rhs: Sequence[Sequence[UniPoly]]) -> tuple[UniPoly, list[list[UniPoly]]]:
    """Solve ``matrix @ X = rhs`` over Q(x) for several right-hand sides.

    Returns ``(det, numerators)`` where ``numerators[k][i] = det * X[i][k]`` are
    polynomials (the Cramer numerators).  ``rhs`` is a list of column vectors.
    Raises ``ZeroDivisionError`` if the matrix is singular.
    """
    n = len(matrix)
    m = len(rhs)
    rows = [[*row, *(rhs[k][i] for k in range(m))] for i, row in enumerate(matrix)]
    res = _bareiss(rows, n)
    if res is None:
        raise ZeroDivisionError("singular polynomial system")
    sign, rows = res
    dlast = rows[n - 1][n - 1]
    out = []
    for k in range(m):
        y = [ZERO] * n
        for i in range(n - 1, -1, -1):
            t = dlast * rows[i][n + k]
            for j in range(i + 1, n):
                t = t - rows[i][j] * y[j]
            y[i] = t.exact_div(rows[i][i])
        out.append([yi * sign for yi in y])
    return dlast * sign, out


# ---------------------------------------------------------------------------
# bivariate polynomials
# ---------------------------------------------------------------------------

class BiPoly:
    """A polynomial in ``x`` and ``y`` stored by powers of ``y``."""

    __slots__ = ("ycoeffs",)

    def __init__(self, ycoeffs: Iterable[UniPoly] = ()):
        c = [p if isinstance(p, UniPoly) else UniPoly.const(p) for p in ycoeffs]
        while c and c[-1].is_zero():
            c.pop()
        self.ycoeffs = tuple(c)

    @classmethod
    def from_table(cls, table: Sequence[Sequence]) -> "BiPoly":
        """Build from ``table[a][b]`` = coefficient of ``x**a * y**b``."""
        if not table:
            return cls()
        ny = max(len(row) for row in table)
        cols = [UniPoly(row[b] if b < len(row) else 0 for row in table) for b in range(ny)]
        return cls(cols)

    @classmethod
    def from_y_poly(cls, p: UniPoly) -> "BiPoly":
        """Embed a polynomial with constant coefficients, read as a polynomial in ``y``."""
        return cls(UniPoly.const(a) for a in p.c)

    def to_table(self) -> list[list[Rational]]:
        dx, dy = self.x_degree, self.y_degree
        return [[self.ycoeffs[b][a] for b in range(dy + 1)] for a in range(dx + 1)]

    @property
    def y_degree(self) -> int:
        return len(self.ycoeffs) - 1

    @property
    def x_degree(self) -> int:
        return max((p.degree for p in self.ycoeffs), default=-1)

    def is_zero(self) -> bool:
        return not self.ycoeffs

    def __bool__(self):
        return bool(self.ycoeffs)

    def __getitem__(self, b: int) -> UniPoly:
        return self.ycoeffs[b] if 0 <= b < len(self.ycoeffs) else ZERO

    def lc_y(self) -> UniPoly:
        return self.ycoeffs[-1] if self.ycoeffs else ZERO

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.ycoeffs == other.ycoeffs

    def __hash__(self):
        return hash(("BiPoly", self.ycoeffs))

    def __add__(self, other: "BiPoly") -> "BiPoly":
        a, b = self.ycoeffs, other.ycoeffs
        if len(a) < len(b):
            a, b = b, a
        c = list(a)
        for i, p in enumerate(b):
            c[i] = c[i] + p
        return BiPoly(c)

    def __neg__(self):
        return BiPoly(-p for p in self.ycoeffs)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other) -> "BiPoly":
        if isinstance(other, UniPoly) or _is_scalar(other):
            return BiPoly(p * other for p in self.ycoeffs)
        a, b = self.ycoeffs, other.ycoeffs
        if not a or not b:
            return BiPoly()
        c = [ZERO] * (len(a) + len(b) - 1)
        for i, p in enumerate(a):
            for j, q in enumerate(b):
                c[i + j] = c[i + j] + p * q
        return BiPoly(c)

    __rmul__ = __mul__

    def shift_y(self, k: int) -> "BiPoly":
        """Multiply by ``y**k``."""
        return BiPoly([ZERO] * k + list(self.ycoeffs))

    def diff_y(self) -> "BiPoly":
        return BiPoly(p * i for i, p in enumerate(self.ycoeffs) if i)

    def diff_x(self) -> "BiPoly":
        return BiPoly(p.derivative() for p in self.ycoeffs)

    def eval_x(self, alpha) -> UniPoly:
        """Specialize ``x = alpha`` (rational); the result is a polynomial in ``y``."""
        return UniPoly(p(as_rational(alpha)) for p in self.ycoeffs)

    def eval_y(self, value):
        """Horner in ``y`` with ``UniPoly`` coefficients applied to ``value``."""
        acc = None
        for p in reversed(self.ycoeffs):
            acc = p if acc is None else acc * value + p
        return ZERO if acc is None else acc

    def shift_x(self, alpha) -> "BiPoly":
        return BiPoly(p.shift(alpha) for p in self.ycoeffs)

    def to_str(self) -> str:
        parts = []
        for b, p in enumerate(self.ycoeffs):
            if p:
                mon = "" if b == 0 else ("y" if b == 1 else f"y^{b}")
                parts.append(f"({p.to_str()})" + ("*" + mon if mon else ""))
        return " + ".join(parts) or "0"

    def __repr__(self):
        return f"BiPoly({self.to_str()})"


def _sylvester(p: Sequence[UniPoly], q: Sequence[UniPoly]) -> list[list[UniPoly]]:
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [ZERO] * size
        for k in range(m + 1):
            row[i + k] = p[m - k]
        rows.append(row)
    for i in range(m):
        row = [ZERO] * size
        for k in range(n + 1):
            row[i + k] = q[n - k]
        rows.append(row)
    return rows


def sylvester_matrix_y(P: BiPoly, Q: BiPoly) -> list[list[UniPoly]]:
    return _sylvester(P.ycoeffs, Q.ycoeffs)


def resultant_y(P: BiPoly, Q: BiPoly) -> UniPoly:
    """``det Syl_y(P, Q)``, a polynomial in ``x``."""
    if P.is_zero() and Q.is_zero():
        raise ValueError("resultant of two zero polynomials")
    if P.is_zero() or Q.is_zero():
        return ZERO
    m, n = P.y_degree, Q.y_degree
    if n == 0:
        return Q[0] ** m
    if m == 0:
        return P[0] ** n
    return poly_det(sylvester_matrix_y(P, Q))


def discriminant_y(P: BiPoly) -> UniPoly:
    """``Res_y(P, P_y) / lc_y(P)``."""
    if P.y_degree < 1:
        raise ValueError("discriminant needs positive y-degree")
    return resultant_y(P, P.diff_y()).exact_div(P.lc_y())


def pseudo_reduce_step(Q: BiPoly, P: BiPoly) -> BiPoly:
    """One pseudo-division step: ``lc_y(P)*Q - lc_y(Q)*y^(deg Q - deg P)*P``."""
    if Q.y_degree < P.y_degree or P.y_degree < 0:
        raise ValueError("pseudo_reduce_step needs deg_y(Q) >= deg_y(P)")
    k = Q.y_degree - P.y_degree
    return Q * P.lc_y() - (P * Q.lc_y()).shift_y(k)


def full_reduce(Q: BiPoly, P: BiPoly) -> tuple[BiPoly, int]:
    """Pseudo-remainder of ``Q`` by ``P`` in ``y``.

    Returns ``(R, k)`` with ``deg_y R < deg_y P`` and ``lc_y(P)**k * Q = R mod P``.
    """
    if P.y_degree < 1:
        raise ValueError("full_reduce needs deg_y(P) >= 1")
    k = 0
    while Q.y_degree >= P.y_degree:
        Q = pseudo_reduce_step(Q, P)
        k += 1
    return Q, k


def content_y(P: BiPoly) -> UniPoly:
    """gcd over Q[y] of the coefficients of the powers of ``x`` (as polynomials in ``y``)."""
    g = ZERO
    for a in range(P.x_degree + 1):
        g = poly_gcd(g, UniPoly(p[a] for p in P.ycoeffs))
        if g.degree == 0:
            break
    return g
