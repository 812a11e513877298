"""Compatibility verdicts: rank test, the two LPs and the g-inverse solution space.

Every decision procedure runs on every input and the results must agree on
compatible versus incompatible; a disagreement is a bug and raises
``InternalInconsistency``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .exactlin import (
    ONE,
    ZERO,
    RatMatrix,
    Rational,
    g_inverse,
    nullspace,
    rank,
    rational,
    rref,
)
from .lpcore import LPProblem, LPResult, LPStatus, eta_lp, joint_lp, simplex_lp, solve
from .specmodel import (
    ConditionalPair,
    JointMatrix,
    MarginalVector,
    SpecError,
    build_C,
    build_D,
    cross_ratio_applicable,
    cross_ratio_compatible_2x2,
)


class Verdict(enum.Enum):
    COMPATIBLE_UNIQUE = "compatible-unique"
    COMPATIBLE_NONUNIQUE = "compatible-nonunique"
    INCOMPATIBLE = "incompatible"

    @property
    def compatible(self) -> bool:
        return self is not Verdict.INCOMPATIBLE


class ConsistencyFailure(SpecError):
    """A candidate marginal does not reproduce both conditionals."""


class InternalInconsistency(RuntimeError):
    """Two decision procedures disagree; never expected on correct code."""


@dataclass(frozen=True)
class MethodResult:
    name: str
    compatible: bool
    value: Rational | None = None
    detail: str = ""


@dataclass(frozen=True)
class RankOutcome:
    rank: int
    verdict: Verdict
    eta: MarginalVector | None
    nullspace_basis: tuple


@dataclass(frozen=True)
class SolutionSpace:
    M: RatMatrix
    projector: RatMatrix
    basis: tuple
    rank_C: int

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class CompatReport:
    verdict: Verdict
    rank_D: int
    I: int  # noqa: E741
    J: int
    eta: MarginalVector | None
    tau: MarginalVector | None
    joint: JointMatrix | None
    nullspace_basis_D: tuple
    method_results: tuple = field(default_factory=tuple)
    degenerate: bool = False

    @property
    def compatible(self) -> bool:
        return self.verdict.compatible

    def method(self, name: str) -> MethodResult:
        for m in self.method_results:
            if m.name == name:
                return m
        raise KeyError(name)


def _normalize(values) -> tuple:
    total = sum(values, ZERO)
    return tuple(v / total for v in values)


def _nonnegative_witness(basis: list[RatMatrix], size: int) -> tuple | None:
    """Nonnegative nonzero point of span(basis), with the widest support found.

    One basis vector: the sign test suffices.  Otherwise an LP over the
    combination coefficients (split into positive and negative parts) finds
    a witness, and further LPs maximize each still-zero coordinate in turn
    so the returned point has every coordinate that can be positive positive.
    """
    if not basis:
        return None
    if len(basis) == 1:
        v = basis[0].col(0)
        if all(x >= 0 for x in v):
            return _normalize(v)
        if all(x <= 0 for x in v):
            return _normalize([-x for x in v])
        return None
    k = len(basis)
    # variables: y (size) | c_plus (k) | c_minus (k) | slack; y - N c+ + N c- = 0
    nvars = size + 2 * k + 1
    rows = []
    for i in range(size):
        row = [ZERO] * nvars
        row[i] = ONE
        for t, b in enumerate(basis):
            row[size + t] = -b[i, 0]
            row[size + k + t] = b[i, 0]
        rows.append(tuple(row))
    rows.append(tuple([ONE] * size + [ZERO] * (2 * k) + [ONE]))
    E = RatMatrix._wrap(tuple(rows), nvars)
    rhs = (ZERO,) * size + (ONE,)

    def maximize(weights) -> LPResult:
        obj = list(weights) + [ZERO] * (2 * k + 1)
        return solve(LPProblem(tuple(obj), E, rhs))

    first = maximize([ONE] * size)
    if not first.positive:
        return None
    acc = list(first.solution[:size])
    for i in range(size):
        if acc[i] != 0:
            continue
        res = maximize([ONE if t == i else ZERO for t in range(size)])
        if res.positive:
            acc = [a + b for a, b in zip(acc, res.solution[:size])]
    return _normalize(acc)


def check_rank_method(pair: ConditionalPair) -> RankOutcome:
    """Rank of D plus a search of its nullspace for a probability vector."""
    D = build_D(pair)
    r = rank(D)
    basis = tuple(nullspace(D))
    if r == pair.I:
        return RankOutcome(r, Verdict.INCOMPATIBLE, None, basis)
    witness = _nonnegative_witness(list(basis), pair.I)
    if witness is None:
        return RankOutcome(r, Verdict.INCOMPATIBLE, None, basis)
    verdict = Verdict.COMPATIBLE_UNIQUE if r == pair.I - 1 else Verdict.COMPATIBLE_NONUNIQUE
    return RankOutcome(r, verdict, MarginalVector(witness, "X"), basis)


def recover_tau(pair: ConditionalPair, eta: MarginalVector) -> MarginalVector:
    """tau_j = sum_s b_sj eta_s."""
    if len(eta) != pair.I:
        raise ValueError(f"eta has length {len(eta)}, expected {pair.I}")
    B = pair.B
    return MarginalVector(
        tuple(sum((B[s, j] * eta[s] for s in range(pair.I)), ZERO) for j in range(pair.J)),
        "Y",
    )


def recover_joint(pair: ConditionalPair, eta: MarginalVector) -> JointMatrix:
    """p_ij = b_ij eta_i, checked against a_ij p_.j = p_ij for every cell."""
    if len(eta) != pair.I:
        raise ValueError(f"eta has length {len(eta)}, expected {pair.I}")
    A, B = pair.A, pair.B
    P = [[B[i, j] * eta[i] for j in range(pair.J)] for i in range(pair.I)]
    col = [sum((P[i][j] for i in range(pair.I)), ZERO) for j in range(pair.J)]
    for i in range(pair.I):
        for j in range(pair.J):
            if A[i, j] * col[j] != P[i][j]:
                raise ConsistencyFailure(
                    f"cell ({i}, {j}): a_ij * p_.j = {A[i, j] * col[j]} but p_ij = {P[i][j]}"
                )
    return JointMatrix(RatMatrix(P))


def solution_space(pair: ConditionalPair) -> SolutionSpace:
    """All solutions of C p = 0 as the range of I - M, with M = C^- C."""
    C = build_C(pair)
    n = C.ncols
    G = g_inverse(C)
    M = G @ C
    eye = RatMatrix.identity(n)
    proj = eye - M
    if M @ M != M:
        raise InternalInconsistency("M is not idempotent")
    if proj @ proj != proj:
        raise InternalInconsistency("I - M is not idempotent")
    if not (C @ proj).is_zero():
        raise InternalInconsistency("C (I - M) is not zero")
    rc = rank(C)
    cols = [proj.select_cols([k]) for k in range(n)]
    basis = _independent_columns(cols)
    if len(basis) != n - rc:
        raise InternalInconsistency(
            f"solution space has dimension {len(basis)}, expected {n - rc}"
        )
    return SolutionSpace(M, proj, tuple(basis), rc)


def _independent_columns(cols: list[RatMatrix]) -> list[RatMatrix]:
    if not cols:
        return []
    stacked = RatMatrix._wrap(tuple(zip(*(c.col(0) for c in cols))), len(cols))
    _, pivots = rref(stacked)
    return [cols[p] for p in pivots]


def solution_space_lp(space: SolutionSpace) -> LPResult:
    """Search range(I - M) = ker(M) for a point of the probability simplex."""
    return simplex_lp(space.M)


def classify(pair: ConditionalPair) -> CompatReport:
    """Run every decision procedure, cross-check them and assemble the report."""
    rank_out = check_rank_method(pair)
    jlp = joint_lp(pair)
    elp = eta_lp(pair)
    space = solution_space(pair)
    slp = solution_space_lp(space)

    results = [
        MethodResult(
            "rank",
            rank_out.verdict.compatible,
            rational(rank_out.rank),
            f"rank(D) = {rank_out.rank}, I = {pair.I}",
        ),
        MethodResult("joint_lp", jlp.positive, jlp.optimum, "max sum(p), C p = 0, 0 <= p <= 1"),
        MethodResult("eta_lp", elp.positive, elp.optimum, "max sum(y), D_r y = 0, sum(y) <= 1"),
        MethodResult(
            "solution_space",
            slp.positive,
            slp.optimum,
            f"dim range(I - M) = {space.dimension}, rank(C) = {space.rank_C}",
        ),
    ]
    if cross_ratio_applicable(pair):
        cr = cross_ratio_compatible_2x2(pair)
        results.append(MethodResult("cross_ratio", cr, None, "a12 a21 b22 b11 = a11 a22 b21 b12"))
    for res in (jlp, elp, slp):
        if res.status is not LPStatus.OPTIMAL:
            raise InternalInconsistency(f"LP ended with status {res.status.value}")
    votes = {m.name: m.compatible for m in results}
    if len(set(votes.values())) != 1:
        raise InternalInconsistency(f"decision procedures disagree: {votes}")

    verdict = rank_out.verdict
    eta = tau = joint = None
    degenerate = False
    if verdict.compatible:
        eta = rank_out.eta
        tau = recover_tau(pair, eta)
        joint = recover_joint(pair, eta)
        degenerate = eta.has_zero() or tau.has_zero()
    return CompatReport(
        verdict=verdict,
        rank_D=rank_out.rank,
        I=pair.I,
        J=pair.J,
        eta=eta,
        tau=tau,
        joint=joint,
        nullspace_basis_D=rank_out.nullspace_basis,
        method_results=tuple(results),
        degenerate=degenerate,
    )
