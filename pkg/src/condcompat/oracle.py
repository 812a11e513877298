"""Independent checkers and random instance generators for tests.

Nothing here imports the elimination, LP or engine code: the brute-force
deciders rebuild the linear systems from the conditional entries and solve
them with their own ``fractions.Fraction`` Gauss-Jordan routine.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .specmodel import ConditionalPair, validate_pair


class InfeasiblePattern(ValueError):
    pass


class ScaleExceeded(ValueError):
    pass


class StochasticityViolated(ValueError):
    pass


@dataclass(frozen=True)
class InstanceSpec:
    I: int  # noqa: E741
    J: int
    seed: int = 0
    zero_pattern: tuple | None = None  # True marks a forced-zero cell
    denominator_bound: int = 9

    def __post_init__(self):
        if self.I < 1 or self.J < 1:
            raise ValueError("dimensions must be positive")
        if self.denominator_bound < 1:
            raise ValueError("denominator_bound must be positive")
        if self.zero_pattern is not None:
            mask = tuple(tuple(bool(x) for x in row) for row in self.zero_pattern)
            if len(mask) != self.I or any(len(r) != self.J for r in mask):
                raise ValueError("zero_pattern shape does not match I x J")
            object.__setattr__(self, "zero_pattern", mask)


@dataclass(frozen=True)
class OracleVerdict:
    compatible: bool
    vertices: tuple  # vertices of {eta >= 0, sum eta = 1, D eta = 0}
    nullity: int

    @property
    def witness(self) -> tuple | None:
        return self.vertices[0] if self.vertices else None


def random_joint(spec: InstanceSpec) -> list[list[Fraction]]:
    """Random joint table: integer weights in [1, denominator_bound] off the mask.

    Raises ``InfeasiblePattern`` when the mask blanks out a whole row or
    column.  Deterministic for a given seed.
    """
    mask = spec.zero_pattern or tuple((False,) * spec.J for _ in range(spec.I))
    for i, row in enumerate(mask):
        if all(row):
            raise InfeasiblePattern(f"row {i} is entirely masked")
    for j in range(spec.J):
        if all(mask[i][j] for i in range(spec.I)):
            raise InfeasiblePattern(f"column {j} is entirely masked")
    rng = random.Random(spec.seed)
    w = [
        [0 if mask[i][j] else rng.randint(1, spec.denominator_bound) for j in range(spec.J)]
        for i in range(spec.I)
    ]
    total = sum(map(sum, w))
    return [[Fraction(x, total) for x in row] for row in w]


def random_pattern(I: int, J: int, rng: random.Random, density: float = 0.3) -> tuple:  # noqa: E741
    """Random zero mask leaving every row and column at least one free cell."""
    while True:
        mask = [[rng.random() < density for _ in range(J)] for _ in range(I)]
        if all(not all(r) for r in mask) and all(
            not all(mask[i][j] for i in range(I)) for j in range(J)
        ):
            return tuple(tuple(r) for r in mask)


def random_stochastic_pair(I: int, J: int, rng: random.Random, bound: int = 6) -> ConditionalPair:  # noqa: E741
    """Unrelated random A and B; almost always incompatible for I > 1."""
    wa = [[rng.randint(1, bound) for _ in range(J)] for _ in range(I)]
    wb = [[rng.randint(1, bound) for _ in range(J)] for _ in range(I)]
    csum = [sum(wa[i][j] for i in range(I)) for j in range(J)]
    A = [[Fraction(wa[i][j], csum[j]) for j in range(J)] for i in range(I)]
    B = [[Fraction(x, sum(row)) for x in row] for row in wb]
    return validate_pair(A, B)


def _fr(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def _gauss_jordan(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    a = [list(r) for r in rows]
    if not a:
        return a, []
    ncols = len(a[0])
    piv = []
    r = 0
    for c in range(ncols):
        k = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv.append(c)
        r += 1
        if r == len(a):
            break
    return a, piv


def _kernel(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    red, piv = _gauss_jordan(rows)
    out = []
    for f in range(ncols):
        if f in piv:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(piv):
            v[p] = -red[r][f]
        out.append(v)
    return out


def _solve_unique(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Unique solution of a linear system, or None if singular/inconsistent."""
    n = len(rows[0]) if rows else 0
    red, piv = _gauss_jordan([r + [b] for r, b in zip(rows, rhs)])
    if n in piv or piv != list(range(n)):
        return None
    return [red[k][n] for k in range(n)]


def _d_rows(A, B, I, J):  # noqa: E741
    rows = []
    for i in range(I):
        for j in range(J):
            row = [A[i][j] * B[s][j] for s in range(I)]
            row[i] -= B[i][j]
            rows.append(row)
    return rows


def _c_rows(A, B, I, J):  # noqa: E741
    rows = []
    for i in range(I):
        for j in range(J):
            row = [Fraction(0)] * (I * J)
            for s in range(I):
                row[s * J + j] += A[i][j]
            for k in range(J):
                row[i * J + k] -= B[i][j]
            rows.append(row)
    return rows


def _entries(pair: ConditionalPair):
    A = [[_fr(x) for x in row] for row in pair.A.rows]
    B = [[_fr(x) for x in row] for row in pair.B.rows]
    return A, B


def brute_force_compatible(pair: ConditionalPair) -> OracleVerdict:
    """Enumerate vertices of {eta >= 0, sum(eta) = 1, D eta = 0}.

    The set is parametrized by the nullspace coordinates c (eta = N c).  A
    vertex makes ``nullity - 1`` of the sign constraints eta_i >= 0 tight, so
    every such subset is tried together with sum(eta) = 1.
    """
    I, J = pair.I, pair.J  # noqa: E741
    if I > 4 or J > 4:
        raise ScaleExceeded(f"oracle handles at most 4 x 4, got {I} x {J}")
    A, B = _entries(pair)
    basis = _kernel(_d_rows(A, B, I, J), I)
    k = len(basis)
    if k == 0:
        return OracleVerdict(False, (), 0)
    # N is I x k; eta_i = sum_t basis[t][i] c_t
    N = [[basis[t][i] for t in range(k)] for i in range(I)]
    ones = [sum(N[i][t] for i in range(I)) for t in range(k)]
    found = []
    for tight in itertools.combinations(range(I), k - 1):
        system = [N[i] for i in tight] + [ones]
        rhs = [Fraction(0)] * (k - 1) + [Fraction(1)]
        c = _solve_unique(system, rhs)
        if c is None:
            continue
        eta = tuple(sum(N[i][t] * c[t] for t in range(k)) for i in range(I))
        if all(x >= 0 for x in eta) and eta not in found:
            found.append(eta)
    found.sort(reverse=True)
    return OracleVerdict(bool(found), tuple(found), k)


def joint_lp_vertex_max(pair: ConditionalPair) -> tuple[Fraction, tuple]:
    """max sum(p) over {C p = 0, 0 <= p <= 1} by enumerating every vertex.

    Each variable is fixed at 0, fixed at 1 or left free; a vertex is an
    assignment whose free variables are uniquely determined by C p = 0 and
    land inside [0, 1].  Only for IJ <= 6 (at most 3**6 assignments).
    """
    I, J = pair.I, pair.J  # noqa: E741
    n = I * J
    if n > 6:
        raise ScaleExceeded(f"vertex enumeration limited to IJ <= 6, got {n}")
    A, B = _entries(pair)
    C = _c_rows(A, B, I, J)
    best = None
    for assign in itertools.product((0, 1, None), repeat=n):
        free = [k for k, v in enumerate(assign) if v is None]
        fixed = [k for k, v in enumerate(assign) if v is not None]
        p = [Fraction(0)] * n
        for k in fixed:
            p[k] = Fraction(assign[k])
        if free:
            rows = [[row[k] for k in free] for row in C]
            rhs = [-sum(row[k] * p[k] for k in fixed) for row in C]
            sol = _solve_unique(rows, rhs)
            if sol is None:
                continue
            for k, v in zip(free, sol):
                p[k] = v
        elif any(sum(row[k] * p[k] for k in range(n)) != 0 for row in C):
            continue
        if any(x < 0 or x > 1 for x in p):
            continue
        total = sum(p)
        if best is None or total > best[0]:
            best = (total, tuple(p))
    return best


def perturb_to_incompatible(pair: ConditionalPair, cell: tuple[int, int], delta) -> ConditionalPair:
    """Shift a_ij by ``delta`` and take it back from the next row of column j."""
    i, j = cell
    I = pair.I  # noqa: E741
    if I < 2:
        raise StochasticityViolated("need at least two rows to compensate")
    d = Fraction(delta)
    A, B = _entries(pair)
    partner = (i + 1) % I
    A[i][j] += d
    A[partner][j] -= d
    for r, c in ((i, j), (partner, j)):
        if not 0 <= A[r][c] <= 1:
            raise StochasticityViolated(f"a[{r}][{c}] = {A[r][c]} leaves [0, 1]")
    return validate_pair(A, B)
