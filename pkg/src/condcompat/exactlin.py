"""Exact rational linear algebra.

Scalars are ``gmpy2.mpq`` values (always canonical: positive denominator,
reduced by the gcd).  Matrices are small, dense and immutable.  There is no
tolerance anywhere in this module: a pivot is either zero or it is not.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from numbers import Rational as _RationalABC
from operator import mul
from typing import Iterable, Sequence

from gmpy2 import mpq

Rational = type(mpq(0))

ZERO = mpq(0)
ONE = mpq(1)


def rational(value) -> Rational:
    """Convert ``value`` to an exact rational.

    Accepts ints, ``Fraction``/``mpq`` values and strings such as ``"3/8"``,
    ``"0.375"`` or ``"-2"``.  Decimal strings are read exactly (``"0.3"`` is
    3/10).  Floats go through their shortest repr so ``0.3`` also maps to
    3/10 rather than the nearest binary double.
    """
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, (Fraction, _RationalABC)):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, float):
        return _from_text(repr(value))
    if isinstance(value, str):
        return _from_text(value)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def _from_text(text: str) -> Rational:
    s = text.strip()
    if not s:
        raise ValueError("empty numeric literal")
    try:
        f = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact numeric literal: {text!r}") from exc
    return mpq(f.numerator, f.denominator)


def _integer_rows(rows: tuple) -> tuple[int, list]:
    den = 1
    for r in rows:
        for x in r:
            d = int(x.denominator)
            if d != 1:
                den = lcm(den, d)
    return den, [[int(x.numerator) * (den // int(x.denominator)) for x in r] for r in rows]


def _pivot_cost(x: Rational) -> int:
    return (abs(x.numerator) + x.denominator).bit_length()


class RatMatrix:
    """Dense immutable matrix of rationals, stored row-major."""

    __slots__ = ("_rows", "_nrows", "_ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(rational(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged rows")
            if ncols is not None and ncols != width:
                raise ValueError("ncols does not match row width")
        else:
            width = ncols or 0
        self._rows = data
        self._nrows = len(data)
        self._ncols = width

    @classmethod
    def _wrap(cls, rows: tuple, ncols: int) -> "RatMatrix":
        # trusted constructor: rows are already tuples of mpq
        m = object.__new__(cls)
        m._rows = rows
        m._nrows = len(rows)
        m._ncols = ncols
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RatMatrix":
        return cls._wrap(tuple((ZERO,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls._wrap(
            tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def column(cls, values: Iterable) -> "RatMatrix":
        return cls([[v] for v in values], ncols=1)

    @property
    def rows(self) -> tuple:
        return self._rows

    @property
    def nrows(self) -> int:
        return self._nrows

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return self._nrows, self._ncols

    def __getitem__(self, idx):
        i, j = idx
        return self._rows[i][j]

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def entries(self) -> list:
        """Row-major flat list of entries."""
        return [x for r in self._rows for x in r]

    @property
    def T(self) -> "RatMatrix":
        return RatMatrix._wrap(tuple(zip(*self._rows)) if self._nrows else (), self._nrows)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._rows for x in r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def _check_same_shape(self, other: "RatMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        return RatMatrix._wrap(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self._ncols,
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        return RatMatrix._wrap(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self._ncols,
        )

    def __neg__(self) -> "RatMatrix":
        return RatMatrix._wrap(tuple(tuple(-a for a in r) for r in self._rows), self._ncols)

    def scale(self, c) -> "RatMatrix":
        c = rational(c)
        return RatMatrix._wrap(tuple(tuple(c * a for a in r) for r in self._rows), self._ncols)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self._ncols != other._nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        # integer product over a common denominator, reduced once per entry
        da, ai = _integer_rows(self._rows)
        db, bi = _integer_rows(other.T._rows)
        den = da * db
        out = tuple(
            tuple(mpq(sum(map(mul, r, c)), den) for c in bi) for r in ai
        )
        return RatMatrix._wrap(out, other._ncols)

    def apply(self, vector: Sequence) -> list:
        """Matrix-vector product with a plain sequence; returns a list."""
        if len(vector) != self._ncols:
            raise ValueError("vector length does not match column count")
        v = [rational(x) for x in vector]
        return [sum((a * b for a, b in zip(r, v) if a != 0), ZERO) for r in self._rows]

    def select_rows(self, indices: Sequence[int]) -> "RatMatrix":
        return RatMatrix._wrap(tuple(self._rows[i] for i in indices), self._ncols)

    def select_cols(self, indices: Sequence[int]) -> "RatMatrix":
        return RatMatrix._wrap(
            tuple(tuple(r[j] for j in indices) for r in self._rows), len(indices)
        )

    def to_floats(self) -> list[list[float]]:
        return [[float(x) for x in r] for r in self._rows]

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self._rows)
        return f"RatMatrix({self._nrows}x{self._ncols}: [{body}])"


def _require_nonempty(m: RatMatrix):
    if m.nrows == 0 or m.ncols == 0:
        raise ValueError("matrix must be nonempty")


def rref(m: RatMatrix) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns.

    Within each pivot column the candidate with the shortest
    ``|numerator| + denominator`` is chosen, which keeps intermediate
    fractions small.  The reduced form itself is unique, so the pivot
    choice never changes the result.
    """
    _require_nonempty(m)
    a = [list(r) for r in m.rows]
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        best = None
        best_cost = None
        for i in range(r, nrows):
            x = a[i][c]
            if x != 0:
                cost = _pivot_cost(x)
                if best is None or cost < best_cost:
                    best, best_cost = i, cost
        if best is None:
            continue
        a[r], a[best] = a[best], a[r]
        prow = a[r]
        inv = ONE / prow[c]
        if inv != 1:
            prow = [x * inv for x in prow]
            a[r] = prow
        nzcols = [k for k in range(c, ncols) if prow[k] != 0]
        for i in range(nrows):
            if i == r:
                continue
            f = a[i][c]
            if f == 0:
                continue
            row = a[i]
            for k in nzcols:
                row[k] -= f * prow[k]
        pivots.append(c)
        r += 1
    return RatMatrix._wrap(tuple(tuple(row) for row in a), ncols), pivots


def rank(m: RatMatrix) -> int:
    return len(rref(m)[1])


def row_basis(m: RatMatrix) -> RatMatrix:
    """Nonzero rows of ``rref(m)``: an equivalent, independent equation set."""
    reduced, pivots = rref(m)
    if not pivots:
        return RatMatrix._wrap((), m.ncols)
    return reduced.select_rows(range(len(pivots)))


def nullspace(m: RatMatrix) -> list[RatMatrix]:
    """Basis of the right nullspace, one column vector per free variable.

    Each basis vector has a 1 at its free variable, 0 at every other free
    variable, and minus the reduced-row coefficients at the pivots.
    """
    reduced, pivots = rref(m)
    n = m.ncols
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = [ZERO] * n
        v[free] = ONE
        for r, p in enumerate(pivots):
            v[p] = -reduced[r, free]
        basis.append(RatMatrix._wrap(tuple((x,) for x in v), 1))
    return basis


def inverse(m: RatMatrix) -> RatMatrix:
    """Inverse of a square nonsingular matrix (raises ``ValueError`` otherwise)."""
    n, k = m.shape
    if n != k:
        raise ValueError("inverse needs a square matrix")
    eye = RatMatrix.identity(n)
    aug = RatMatrix._wrap(tuple(r + e for r, e in zip(m.rows, eye.rows)), 2 * n)
    reduced, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return reduced.select_cols(range(n, 2 * n))


def g_inverse(m: RatMatrix) -> RatMatrix:
    """A {1}-generalized inverse G with ``m @ G @ m == m``.

    Built from the rank factorization ``m = F H`` where H holds the nonzero
    rows of ``rref(m)`` and F the pivot columns of ``m``:
    ``G = H^T (H H^T)^-1 (F^T F)^-1 F^T``.  This is the Moore-Penrose
    inverse, computed exactly.
    """
    _require_nonempty(m)
    reduced, pivots = rref(m)
    if not pivots:
        return RatMatrix.zeros(m.ncols, m.nrows)
    h = reduced.select_rows(range(len(pivots)))
    f = m.select_cols(pivots)
    ft = f.T
    ht = h.T
    return ht @ inverse(h @ ht) @ inverse(ft @ f) @ ft


def solve_particular(m: RatMatrix, rhs: Sequence) -> list | None:
    """One exact solution x of ``m x = rhs``, or None when inconsistent."""
    if len(rhs) != m.nrows:
        raise ValueError("rhs length does not match row count")
    aug = RatMatrix._wrap(
        tuple(r + (rational(b),) for r, b in zip(m.rows, rhs)), m.ncols + 1
    )
    reduced, pivots = rref(aug)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [ZERO] * m.ncols
    for r, p in enumerate(pivots):
        x[p] = reduced[r, m.ncols]
    return x
