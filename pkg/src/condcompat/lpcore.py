"""Exact two-phase simplex with Bland's rule, and the two compatibility LPs."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .exactlin import ONE, ZERO, RatMatrix, Rational, rational, row_basis
from .specmodel import ConditionalPair, build_C, build_D


class Malformed(ValueError):
    """Dimensions of an LP problem do not agree."""


class LPStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPProblem:
    """maximize c.x  subject to  E x = e,  0 <= x (<= upper when given)."""

    objective: tuple
    E: RatMatrix
    rhs: tuple
    upper_bounds: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "objective", tuple(rational(c) for c in self.objective))
        object.__setattr__(self, "rhs", tuple(rational(c) for c in self.rhs))
        if self.upper_bounds is not None:
            ub = tuple(rational(c) for c in self.upper_bounds)
            object.__setattr__(self, "upper_bounds", ub)

    @property
    def nvars(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    optimum: Rational | None = None
    solution: tuple = ()
    iterations: int = 0

    @property
    def positive(self) -> bool:
        return self.status is LPStatus.OPTIMAL and self.optimum > 0


def _check(problem: LPProblem):
    n = problem.nvars
    if n == 0:
        raise Malformed("no variables")
    if problem.E.nrows and problem.E.ncols != n:
        raise Malformed(f"E has {problem.E.ncols} columns for {n} variables")
    if problem.E.nrows != len(problem.rhs):
        raise Malformed(f"E has {problem.E.nrows} rows but rhs has {len(problem.rhs)}")
    if problem.upper_bounds is not None:
        if len(problem.upper_bounds) != n:
            raise Malformed("upper_bounds length does not match variable count")
        if any(u < 0 for u in problem.upper_bounds):
            raise Malformed("negative upper bound")


class _Tableau:
    """Dense simplex tableau; the last column is the right-hand side.

    ``obj`` is the reduced-cost row for the objective being maximized; it is
    pivoted along with the constraint rows.
    """

    def __init__(self, rows: list[list], basis: list[int], ncols: int):
        self.rows = rows
        self.basis = basis
        self.ncols = ncols
        self.obj: list = []
        self.iterations = 0

    def pivot(self, r: int, c: int):
        prow = self.rows[r]
        inv = ONE / prow[c]
        if inv != 1:
            prow = [x * inv for x in prow]
            self.rows[r] = prow
        nz = [k for k, x in enumerate(prow) if x != 0]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row[c]
            if f == 0:
                continue
            for k in nz:
                row[k] -= f * prow[k]
        if self.obj:
            f = self.obj[c]
            if f != 0:
                for k in nz:
                    self.obj[k] -= f * prow[k]
        self.basis[r] = c
        self.iterations += 1

    def set_objective(self, cost: Sequence):
        # reduced cost of column k: c_k - c_B . column_k
        obj = list(cost) + [ZERO]
        for i, row in enumerate(self.rows):
            cb = cost[self.basis[i]]
            if cb != 0:
                for k, x in enumerate(row):
                    if x != 0:
                        obj[k] -= cb * x
        self.obj = obj

    def run(self, cost: Sequence, allowed: Sequence[int]) -> bool:
        """Maximize cost from the current basis; False means unbounded."""
        allowed = sorted(allowed)
        self.set_objective(cost)
        while True:
            obj = self.obj
            entering = next((k for k in allowed if obj[k] > 0), None)
            if entering is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    key = (row[-1] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], entering)

    def value(self, k: int):
        for i, b in enumerate(self.basis):
            if b == k:
                return self.rows[i][-1]
        return ZERO


def solve(problem: LPProblem) -> LPResult:
    """Exact optimum of a bounded-or-not LP over the nonnegative orthant.

    Upper bounds become explicit rows ``x_k + s_k = u_k``; equality rows get
    artificial variables for phase one.  Bland's rule (lowest index enters,
    ties in the ratio test broken by lowest basic index) rules out cycling.
    """
    _check(problem)
    n = problem.nvars
    eq_rows = [list(r) for r in problem.E.rows]
    rhs = list(problem.rhs)
    for k, b in enumerate(rhs):
        if b < 0:
            eq_rows[k] = [-x for x in eq_rows[k]]
            rhs[k] = -b
    m_eq = len(eq_rows)
    bounds = [] if problem.upper_bounds is None else list(problem.upper_bounds)
    m_ub = len(bounds)
    # column layout: x (n) | bound slacks (m_ub) | artificials (m_eq) | rhs
    total = n + m_ub + m_eq
    rows: list[list] = []
    basis: list[int] = []
    for k, (r, b) in enumerate(zip(eq_rows, rhs)):
        row = r + [ZERO] * (m_ub + m_eq) + [b]
        row[n + m_ub + k] = ONE
        rows.append(row)
        basis.append(n + m_ub + k)
    for k, u in enumerate(bounds):
        row = [ZERO] * total + [u]
        row[k] = ONE
        row[n + k] = ONE
        rows.append(row)
        basis.append(n + k)
    tab = _Tableau(rows, basis, total)

    artificials = range(n + m_ub, total)
    if m_eq:
        phase1 = [ZERO] * (n + m_ub) + [-ONE] * m_eq
        tab.run(phase1, range(total))
        infeas = sum((tab.value(a) for a in artificials), ZERO)
        if infeas != 0:
            return LPResult(LPStatus.INFEASIBLE, iterations=tab.iterations)
        _drive_out_artificials(tab, n + m_ub)

    cost = list(problem.objective) + [ZERO] * (m_ub + m_eq)
    if not tab.run(cost, range(n + m_ub)):
        return LPResult(LPStatus.UNBOUNDED, iterations=tab.iterations)
    x = tuple(tab.value(k) for k in range(n))
    opt = sum((c * v for c, v in zip(problem.objective, x)), ZERO)
    result = LPResult(LPStatus.OPTIMAL, opt, x, tab.iterations)
    _certify(problem, result)
    return result


def _drive_out_artificials(tab: _Tableau, first_artificial: int):
    """Pivot zero-level artificials out of the basis; drop redundant rows."""
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] < first_artificial:
            i += 1
            continue
        row = tab.rows[i]
        col = next((k for k in range(first_artificial) if row[k] != 0), None)
        if col is None:
            del tab.rows[i]
            del tab.basis[i]
            continue
        tab.pivot(i, col)
        i += 1


def _certify(problem: LPProblem, result: LPResult):
    x = result.solution
    if any(v < 0 for v in x):
        raise AssertionError("simplex returned a negative variable")
    if problem.upper_bounds is not None and any(
        v > u for v, u in zip(x, problem.upper_bounds)
    ):
        raise AssertionError("simplex violated an upper bound")
    if problem.E.nrows and list(problem.E.apply(x)) != list(problem.rhs):
        raise AssertionError("simplex solution violates an equality row")


def eta_lp(pair: ConditionalPair) -> LPResult:
    """maximize sum(y) s.t. D_r y = 0, y >= 0, sum(y) <= 1.

    ``D_r`` is the nonzero part of the reduced row echelon form of D.  The
    last solution component is the slack of ``sum(y) <= 1`` and is stripped
    from the returned solution.
    """
    D = build_D(pair)
    I = pair.I  # noqa: E741
    dr = row_basis(D)
    rows = [tuple(r) + (ZERO,) for r in dr.rows]
    rows.append((ONE,) * I + (ONE,))
    E = RatMatrix._wrap(tuple(rows), I + 1)
    res = solve(LPProblem((ONE,) * I + (ZERO,), E, (ZERO,) * dr.nrows + (ONE,)))
    return LPResult(res.status, res.optimum, res.solution[:I], res.iterations)


def joint_lp(pair: ConditionalPair) -> LPResult:
    """maximize sum(p) s.t. C p = 0, 0 <= p <= 1 over vec(P).

    The equality block is the independent row set of C, which has the same
    solution set as C itself.
    """
    C = build_C(pair)
    n = C.ncols
    cr = row_basis(C)
    return solve(LPProblem((ONE,) * n, cr, (ZERO,) * cr.nrows, (ONE,) * n))


def simplex_lp(constraints: RatMatrix, objective: Sequence | None = None) -> LPResult:
    """maximize objective.y s.t. constraints y = 0, y >= 0, sum(y) <= 1.

    Defaults to the all-ones objective.  Used for searching a homogeneous
    solution set for a nonnegative nonzero point.
    """
    n = constraints.ncols
    obj = [ONE] * n if objective is None else [rational(c) for c in objective]
    basis = row_basis(constraints) if constraints.nrows else constraints
    rows = [tuple(r) + (ZERO,) for r in basis.rows]
    rows.append((ONE,) * n + (ONE,))
    E = RatMatrix._wrap(tuple(rows), n + 1)
    res = solve(LPProblem(tuple(obj) + (ZERO,), E, (ZERO,) * basis.nrows + (ONE,)))
    return LPResult(res.status, res.optimum, res.solution[:n], res.iterations)
