"""Exact and modular linear algebra.

The exact route is plain Gauss-Jordan elimination over the rationals.  The
modular route does the same elimination over GF(p) with numpy ``int64``
arithmetic (primes below 2**31 so that products fit), and
:func:`lifted_nullspace` recovers the rational kernel from several primes by
Chinese remaindering and rational reconstruction, followed by an exact check.

Pivoting is deterministic everywhere: the pivot of a column is its first
nonzero entry at or below the current row.
"""

from __future__ import annotations

import logging
import os
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Iterable, Sequence

import numpy as np

from .polys import Rational, as_rational

log = logging.getLogger(__name__)


class BadPrime(ArithmeticError):
    """The prime divides a denominator of the input."""


class LiftError(ArithmeticError):
    """Multi-modular reconstruction did not produce a verified kernel."""


class ExactMatrix:
    """A dense rectangular matrix of rationals."""

    __slots__ = ("rows", "row_count", "col_count")

    def __init__(self, rows: Iterable[Sequence], col_count: int | None = None):
        rows = [[as_rational(a) for a in row] for row in rows]
        if col_count is None:
            col_count = len(rows[0]) if rows else 0
        if any(len(r) != col_count for r in rows):
            raise ValueError("ragged matrix")
        self.rows = rows
        self.row_count = len(rows)
        self.col_count = col_count

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "ExactMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.row_count, self.col_count

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def apply(self, v: Sequence[Rational]) -> list[Rational]:
        return [sum(a * b for a, b in zip(row, v) if a) for row in self.rows]

    def integer_rows(self) -> list[list[int]]:
        """Rows scaled by the lcm of their denominators (kernel unchanged)."""
        out = []
        for row in self.rows:
            d = 1
            for a in row:
                if type(a) is Fraction:
                    d = lcm(d, a.denominator)
            out.append([int(a * d) for a in row])
        return out

    def __repr__(self):
        return f"ExactMatrix({self.row_count}x{self.col_count})"


# ---------------------------------------------------------------------------
# exact elimination
# ---------------------------------------------------------------------------

def rref(M: ExactMatrix) -> tuple[list[list[Rational]], list[int]]:
    """Reduced row echelon form over Q; returns ``(nonzero rows, pivot columns)``."""
    A = [[Fraction(a) for a in row] for row in M.rows]
    nrows, ncols = M.shape
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        rowr = [a * inv for a in A[r]]
        A[r] = rowr
        for i in range(nrows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], rowr)]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _kernel_from_rref(R, pivots: list[int], ncols: int) -> list[list]:
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][f]
        basis.append(v)
    return basis


def nullspace(M: ExactMatrix) -> list[list[Rational]]:
    """Basis of the right kernel, one vector per free column in increasing order."""
    R, pivots = rref(M)
    basis = _kernel_from_rref(R, pivots, M.col_count)
    return [[as_rational(a) for a in v] for v in basis]


# ---------------------------------------------------------------------------
# modular elimination
# ---------------------------------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _default_primes(count: int = 4000) -> list[int]:
    out = []
    n = 2**31 - 1
    while len(out) < count:
        if _is_prime(n):
            out.append(n)
        n -= 2
    return out


_PRIMES: list[int] | None = None


def primes() -> list[int]:
    """The fixed list of moduli, largest first; ``DFC_PRIMES`` (comma separated) overrides it."""
    global _PRIMES
    env = os.environ.get("DFC_PRIMES")
    if env:
        return [int(s) for s in env.split(",") if s.strip()]
    if _PRIMES is None:
        _PRIMES = _default_primes(600)
    return _PRIMES


def _to_mod(rows: Sequence[Sequence], p: int) -> np.ndarray:
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    out = np.zeros((nrows, ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, a in enumerate(row):
            if not a:
                continue
            if type(a) is Fraction:
                d = a.denominator % p
                if d == 0:
                    raise BadPrime(f"prime {p} divides a denominator")
                out[i, j] = a.numerator * pow(d, -1, p) % p
            else:
                out[i, j] = a % p
    return out


def rref_mod(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(p) of an ``int64`` array with entries in ``[0, p)``."""
    A = A.copy()
    nrows, ncols = A.shape
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r, c:] = A[r, c:] * inv % p
        f = A[:, c].copy()
        f[r] = 0
        rows = np.flatnonzero(f)
        if rows.size:
            A[rows, c:] = (A[rows, c:] - f[rows, None] * A[r, c:]) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank_mod(A: np.ndarray, p: int) -> int:
    """Rank over GF(p) by forward elimination only."""
    A = A.copy()
    nrows, ncols = A.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r, c + 1:] = A[r, c + 1:] * inv % p
        below = r + 1 + np.flatnonzero(A[r + 1:, c])
        if below.size:
            A[below, c + 1:] = (A[below, c + 1:] - A[below, c][:, None] * A[r, c + 1:]) % p
            A[below, c] = 0
        r += 1
    return r


def nullspace_mod_prime(M: ExactMatrix, p: int) -> tuple[int, int, list[list[int]]]:
    """``(rank, kernel dimension, kernel basis mod p)``; raises :class:`BadPrime`."""
    A = _to_mod(M.rows, p)
    R, pivots = rref_mod(A, p)
    basis = _kernel_from_rref(R.tolist(), pivots, M.col_count)
    basis = [[a % p for a in v] for v in basis]
    return len(pivots), M.col_count - len(pivots), basis


def rational_reconstruct(residue: int, modulus: int) -> Fraction | None:
    """Find ``n/d`` with ``n * d^-1 = residue (mod modulus)`` and ``|n|, d <= sqrt(modulus/2)``."""
    bound = isqrt(modulus // 2)
    r0, r1 = modulus, residue % modulus
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound or gcd(r1, abs(t1)) != 1:
        return None
    if t1 < 0:
        r1, t1 = -r1, -t1
    return Fraction(r1, t1)


# ---------------------------------------------------------------------------
# multi-modular kernel
# ---------------------------------------------------------------------------

class ModularSystem:
    """An integer matrix prepared for repeated reduction modulo primes."""

    def __init__(self, int_rows: Sequence[Sequence[int]], ncols: int | None = None):
        self.nrows = len(int_rows)
        self.ncols = ncols if ncols is not None else (len(int_rows[0]) if int_rows else 0)
        self._obj = np.array([list(r) for r in int_rows], dtype=object).reshape(self.nrows, self.ncols)
        self.int_rows = int_rows
        self.bad_primes: list[int] = []

    def mod(self, p: int) -> np.ndarray:
        return (self._obj % p).astype(np.int64)

    def rank(self, p: int) -> int:
        return rank_mod(self.mod(p), p)

    def kernel_dim(self, p: int) -> int:
        return self.ncols - self.rank(p)

    def is_zero(self, v: Sequence[Rational]) -> bool:
        d = 1
        for a in v:
            if type(a) is Fraction:
                d = lcm(d, a.denominator)
        iv = [int(a * d) for a in v]
        nz = [(j, a) for j, a in enumerate(iv) if a]
        for row in self.int_rows:
            if sum(row[j] * a for j, a in nz):
                return False
        return True

    def lifted_kernel(self, free_values: Sequence[Sequence[int]] | None = None,
                      max_primes: int | None = None) -> tuple[list[int], list[list[Fraction]]]:
        """Rational kernel vectors from several primes.

        With ``free_values=None`` the full RREF basis is returned (one vector
        per free column); otherwise one vector per assignment of the free
        variables.  Returns ``(free columns, vectors)``.  Raises
        :class:`LiftError` if the primes are exhausted.
        """
        plist = primes()
        if max_primes is not None:
            plist = plist[:max_primes]
        best = None  # (rank, pivots)
        modulus = 1
        acc = None
        previous = None
        used = 0
        for p in plist:
            R, pivots = rref_mod(self.mod(p), p)
            key = (len(pivots), [-c for c in pivots])
            if best is not None and key != best:
                if (len(pivots), [-c for c in pivots]) > best:
                    log.info("discarding %d primes after better pivot pattern at %d", used, p)
                    best, modulus, acc, previous, used = None, 1, None, None, 0
                else:
                    self.bad_primes.append(p)
                    continue
            if best is None:
                best = key
                piv = pivots
                free = [c for c in range(self.ncols) if c not in set(piv)]
                if not free:
                    return [], []
            vals = self._kernel_values(R, piv, free, free_values, p)
            if acc is None:
                acc = vals
            else:
                acc = _crt_arrays(acc, modulus, vals, p)
            modulus *= p
            used += 1
            if used >= 2 and used % 2 == 0 or used == 1 and modulus > 2**62:
                cand = _reconstruct_all(acc, modulus)
                if cand is not None:
                    if cand == previous:
                        vectors = self._assemble(cand, piv, free, free_values)
                        if all(self.is_zero(v) for v in vectors):
                            return free, vectors
                    previous = cand
        raise LiftError("ran out of primes while lifting the kernel")

    def _kernel_values(self, R, piv, free, free_values, p):
        Rf = R[:, free]  # rank x nfree
        if free_values is None:
            return [[int(-a) % p for a in row] for row in Rf.T.tolist()]
        out = []
        for fv in free_values:
            fv_arr = np.array([int(a) % p for a in fv], dtype=np.int64)
            col = (-(Rf % p) * fv_arr[None, :]) % p
            s = col.sum(axis=1) % p if col.size else np.zeros(len(piv), dtype=np.int64)
            out.append([int(a) for a in s])
        return out

    def _assemble(self, cand, piv, free, free_values):
        vectors = []
        for k, vals in enumerate(cand):
            v = [0] * self.ncols
            if free_values is None:
                v[free[k]] = 1
            else:
                for f, a in zip(free, free_values[k]):
                    v[f] = a
            for pc, a in zip(piv, vals):
                v[pc] = as_rational(a)
            vectors.append(v)
        return vectors


def _crt_arrays(acc, m, vals, p):
    inv = pow(m, -1, p)
    out = []
    for arow, vrow in zip(acc, vals):
        row = []
        for a, v in zip(arow, vrow):
            t = (v - a) * inv % p
            row.append(a + m * t)
        out.append(row)
    return out


def _reconstruct_all(acc, m):
    out = []
    for row in acc:
        r = []
        for a in row:
            q = rational_reconstruct(a, m)
            if q is None:
                return None
            r.append(q)
        out.append(r)
    return out


def lifted_nullspace(M: ExactMatrix) -> list[list[Rational]]:
    """Same basis as :func:`nullspace`, computed multi-modularly."""
    system = ModularSystem(M.integer_rows(), M.col_count)
    _, vectors = system.lifted_kernel()
    return vectors
