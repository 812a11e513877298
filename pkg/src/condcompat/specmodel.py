"""Conditional specifications, joints, marginals and the D / C system matrices.

``A`` holds P(X = x_i | Y = y_j): each column sums to one.
``B`` holds P(Y = y_j | X = x_i): each row sums to one.
Both are I x J.  Rows of D and C are indexed by the cell (i, j) in i-major
order, r = i * J + j (0-based).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exactlin import ONE, ZERO, RatMatrix, Rational, rational


class SpecError(ValueError):
    """Base class for invalid conditional or joint specifications."""


class ShapeMismatch(SpecError):
    pass


class NotStochastic(SpecError):
    def __init__(self, which: str, axis: str, index: int, total):
        self.which = which
        self.axis = axis
        self.index = index
        self.total = total
        super().__init__(f"{axis} {index} of {which} sums to {total}, expected 1")


class NegativeEntry(SpecError):
    def __init__(self, which: str, i: int, j: int, value):
        self.which, self.i, self.j, self.value = which, i, j, value
        super().__init__(f"{which}[{i}][{j}] = {value} is negative")


class EntryOutOfRange(SpecError):
    pass


class ZeroMarginal(SpecError):
    pass


class NotTwoByTwo(SpecError):
    pass


class ZeroEntry(SpecError):
    pass


@dataclass(frozen=True)
class ConditionalPair:
    A: RatMatrix
    B: RatMatrix

    @property
    def I(self) -> int:  # noqa: E743
        return self.A.nrows

    @property
    def J(self) -> int:
        return self.A.ncols

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "ConditionalPair":
        """Relabel categories: new row k is old row ``row_perm[k]``."""
        def perm(m: RatMatrix) -> RatMatrix:
            return m.select_rows(row_perm).select_cols(col_perm)
        return ConditionalPair(perm(self.A), perm(self.B))


@dataclass(frozen=True)
class JointMatrix:
    P: RatMatrix

    def __post_init__(self):
        for i, row in enumerate(self.P.rows):
            for j, x in enumerate(row):
                if x < 0:
                    raise NegativeEntry("P", i, j, x)
        total = sum(self.P.entries(), ZERO)
        if total != 1:
            raise NotStochastic("P", "total", 0, total)

    def row_sums(self) -> list:
        return [sum(r, ZERO) for r in self.P.rows]

    def col_sums(self) -> list:
        return [sum(c, ZERO) for c in self.P.T.rows]

    def vec(self) -> list:
        return self.P.entries()


@dataclass(frozen=True)
class MarginalVector:
    values: tuple
    axis: str  # "X" (eta, length I) or "Y" (tau, length J)

    def __post_init__(self):
        if self.axis not in ("X", "Y"):
            raise ValueError("axis must be 'X' or 'Y'")
        vals = tuple(rational(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if any(v < 0 for v in vals):
            raise SpecError(f"{self.axis}-marginal has a negative entry")
        if sum(vals, ZERO) != 1:
            raise SpecError(f"{self.axis}-marginal does not sum to 1")

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def has_zero(self) -> bool:
        return any(v == 0 for v in self.values)


@dataclass(frozen=True)
class SystemMatrices:
    D: RatMatrix
    C: RatMatrix
    I: int  # noqa: E741
    J: int

    def row_index(self, i: int, j: int) -> int:
        return i * self.J + j


def _as_matrix(raw, which: str) -> RatMatrix:
    if isinstance(raw, RatMatrix):
        return raw
    rows = [list(r) for r in raw]
    if not rows or not rows[0]:
        raise ShapeMismatch(f"{which} is empty")
    width = len(rows[0])
    for k, r in enumerate(rows):
        if len(r) != width:
            raise ShapeMismatch(f"{which} row {k} has {len(r)} entries, expected {width}")
    return RatMatrix(rows)


def validate_pair(A, B) -> ConditionalPair:
    """Check shapes, signs and exact stochasticity; return the validated pair."""
    a = _as_matrix(A, "A")
    b = _as_matrix(B, "B")
    if a.shape != b.shape:
        raise ShapeMismatch(f"A is {a.nrows}x{a.ncols} but B is {b.nrows}x{b.ncols}")
    cells = [(name, i, j, x) for name, m in (("A", a), ("B", b))
             for i, row in enumerate(m.rows) for j, x in enumerate(row)]
    for name, i, j, x in cells:
        if x < 0:
            raise NegativeEntry(name, i, j, x)
    for name, i, j, x in cells:
        if x > 1:
            raise EntryOutOfRange(f"{name}[{i}][{j}] = {x} exceeds 1")
    for j, col in enumerate(a.T.rows):
        total = sum(col, ZERO)
        if total != 1:
            raise NotStochastic("A", "column", j, total)
    for i, row in enumerate(b.rows):
        total = sum(row, ZERO)
        if total != 1:
            raise NotStochastic("B", "row", i, total)
    return ConditionalPair(a, b)


def build_D(pair: ConditionalPair) -> RatMatrix:
    """IJ x I coefficients of a_ij * sum_s b_sj eta_s - b_ij eta_i = 0."""
    A, B = pair.A, pair.B
    rows = []
    for i in range(pair.I):
        for j in range(pair.J):
            a = A[i, j]
            row = [a * B[s, j] for s in range(pair.I)]
            row[i] = B[i, j] * (a - ONE)
            rows.append(tuple(row))
    return RatMatrix._wrap(tuple(rows), pair.I)


def build_C(pair: ConditionalPair) -> RatMatrix:
    """IJ x IJ coefficients of a_ij * p_.j - b_ij * p_i. = 0 in vec(P) order."""
    A, B = pair.A, pair.B
    I, J = pair.I, pair.J  # noqa: E741
    rows = []
    for i in range(I):
        for j in range(J):
            a, b = A[i, j], B[i, j]
            row = [ZERO] * (I * J)
            for s in range(I):
                row[s * J + j] += a
            for k in range(J):
                row[i * J + k] -= b
            rows.append(tuple(row))
    return RatMatrix._wrap(tuple(rows), I * J)


def build_system(pair: ConditionalPair) -> SystemMatrices:
    return SystemMatrices(build_D(pair), build_C(pair), pair.I, pair.J)


def joint_to_conditionals(P) -> ConditionalPair:
    """Conditionals a_ij = p_ij / p_.j and b_ij = p_ij / p_i. of a joint."""
    joint = P if isinstance(P, JointMatrix) else JointMatrix(RatMatrix(P))
    m = joint.P
    rsum = joint.row_sums()
    csum = joint.col_sums()
    for i, r in enumerate(rsum):
        if r == 0:
            raise ZeroMarginal(f"row {i} of P sums to 0")
    for j, c in enumerate(csum):
        if c == 0:
            raise ZeroMarginal(f"column {j} of P sums to 0")
    A = [[m[i, j] / csum[j] for j in range(m.ncols)] for i in range(m.nrows)]
    B = [[m[i, j] / rsum[i] for j in range(m.ncols)] for i in range(m.nrows)]
    return validate_pair(A, B)


def cross_ratio_compatible_2x2(pair: ConditionalPair) -> bool:
    """For strictly positive 2 x 2 pairs: a12 a21 b22 b11 == a11 a22 b21 b12."""
    if (pair.I, pair.J) != (2, 2):
        raise NotTwoByTwo(f"pair is {pair.I}x{pair.J}")
    A, B = pair.A, pair.B
    if any(x == 0 for x in A.entries() + B.entries()):
        raise ZeroEntry("cross-product ratio needs strictly positive entries")
    lhs = A[0, 1] * A[1, 0] * B[1, 1] * B[0, 0]
    rhs = A[0, 0] * A[1, 1] * B[1, 0] * B[0, 1]
    return lhs == rhs


def cross_ratio_applicable(pair: ConditionalPair) -> bool:
    return (pair.I, pair.J) == (2, 2) and all(
        x != 0 for x in pair.A.entries() + pair.B.entries()
    )


def as_rationals(values: Sequence) -> list[Rational]:
    return [rational(v) for v in values]
