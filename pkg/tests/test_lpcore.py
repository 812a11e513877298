from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from condcompat.exactlin import RatMatrix, rational
from condcompat.lpcore import (
    LPProblem,
    LPStatus,
    Malformed,
    eta_lp,
    joint_lp,
    solve,
)
from condcompat.oracle import joint_lp_vertex_max
from condcompat.specmodel import build_C, validate_pair

# Worst pivot count seen across the fixtures is far below this; Bland's rule
# can only visit finitely many bases and this catches a runaway loop.
ITERATION_BOUND = 200


def test_simple_max_with_slack():
    # maximize x + y, x + y + s = 1
    res = solve(LPProblem((1, 1, 0), RatMatrix([[1, 1, 1]]), (1,)))
    assert res.status is LPStatus.OPTIMAL
    assert res.optimum == 1


def test_upper_bounds():
    res = solve(LPProblem((1, 2), RatMatrix([], ncols=2), (), upper_bounds=("1/2", "1/3")))
    assert res.optimum == rational("7/6")
    assert res.solution == (rational("1/2"), rational("1/3"))


def test_infeasible():
    res = solve(LPProblem((1,), RatMatrix([[1], [1]]), (1, 2)))
    assert res.status is LPStatus.INFEASIBLE


def test_unbounded():
    res = solve(LPProblem((1, 0), RatMatrix([[1, -1]]), (0,)))
    assert res.status is LPStatus.UNBOUNDED


def test_negative_rhs_rows_are_flipped():
    res = solve(LPProblem((-1, -1), RatMatrix([[-1, -2]]), (-4,)))
    assert res.status is LPStatus.OPTIMAL
    assert res.optimum == -2 and res.solution == (0, 2)


def test_redundant_equalities():
    E = RatMatrix([[1, 1, 0], [2, 2, 0], [0, 0, 1]])
    res = solve(LPProblem((1, 0, 1), E, (1, 2, "1/2")))
    assert res.optimum == rational("3/2")


@pytest.mark.parametrize(
    "problem",
    [
        dict(objective=(1, 1), E=RatMatrix([[1, 1, 1]]), rhs=(1,)),
        dict(objective=(1, 1), E=RatMatrix([[1, 1]]), rhs=(1, 2)),
        dict(objective=(1, 1), E=RatMatrix([[1, 1]]), rhs=(1,), upper_bounds=(1,)),
        dict(objective=(1,), E=RatMatrix([[1]]), rhs=(1,), upper_bounds=(-1,)),
    ],
)
def test_malformed(problem):
    with pytest.raises(Malformed):
        solve(LPProblem(**problem))


def test_degenerate_cycling_example():
    # Beale's example, which cycles under the textbook largest-coefficient rule
    E = RatMatrix(
        [
            ["1/4", -8, -1, 9, 1, 0, 0],
            ["1/2", -12, "-1/2", 3, 0, 1, 0],
            [0, 0, 1, 0, 0, 0, 1],
        ]
    )
    res = solve(LPProblem(("3/4", -20, "1/2", -6, 0, 0, 0), E, (0, 0, 1)))
    assert res.status is LPStatus.OPTIMAL
    assert res.optimum == rational("5/4")
    assert res.iterations < ITERATION_BOUND


class TestJointLP:
    def test_two_by_two_matches_vertex_oracle(self, pair_named):
        pair = pair_named("two_by_two_compatible")
        oracle_value, oracle_point = joint_lp_vertex_max(pair)
        assert oracle_value == Fraction(7, 2)
        res = joint_lp(pair)
        assert res.optimum == oracle_value
        assert res.solution == tuple(rational(x) for x in oracle_point)

    def test_incompatible_two_by_two_is_zero(self, pair_named):
        pair = pair_named("two_by_two_incompatible")
        assert joint_lp_vertex_max(pair)[0] == 0
        assert joint_lp(pair).optimum == 0

    def test_supply_demand_is_zero(self, pair_named):
        res = joint_lp(pair_named("supply_demand"))
        assert res.status is LPStatus.OPTIMAL and res.optimum == 0

    def test_zeros_3x3_positive(self, pair_named):
        pair = pair_named("zeros_3x3_compatible")
        res = joint_lp(pair)
        assert res.optimum > 0
        assert build_C(pair).apply(res.solution) == [0] * 9
        # C p = 0 fixes only the margins; the conditional-consistent table
        # b_ij * (row sum i) built from the optimizer is the printed joint
        rows = [sum(res.solution[3 * i:3 * i + 3]) for i in range(3)]
        q = [pair.B[i, j] * rows[i] for i in range(3) for j in range(3)]
        total = sum(q)
        expected = ["0.125", "0", "0.25", "0", "0.125", "0.125", "0.25", "0.125", "0"]
        assert [x / total for x in q] == [rational(x) for x in expected]

    @pytest.mark.parametrize(
        "name",
        [
            "two_by_two_compatible",
            "two_by_two_incompatible",
            "positive_3x3_compatible",
            "zeros_3x3_compatible",
            "supply_demand",
            "zeros_3x3_incompatible",
        ],
    )
    def test_certificate_and_iteration_bound(self, pair_named, name):
        pair = pair_named(name)
        res = joint_lp(pair)
        assert all(0 <= x <= 1 for x in res.solution)
        assert build_C(pair).apply(res.solution) == [0] * (pair.I * pair.J)
        assert sum(res.solution) == res.optimum
        assert res.iterations < ITERATION_BOUND


class TestEtaLP:
    def test_positive_3x3(self, pair_named):
        res = eta_lp(pair_named("positive_3x3_compatible"))
        assert res.optimum == 1
        total = sum(res.solution)
        assert [x / total for x in res.solution] == [rational("3/10"), rational("3/10"), rational("2/5")]

    def test_incompatible_3x3(self, pair_named):
        assert eta_lp(pair_named("positive_3x3_incompatible")).optimum == 0

    def test_identity(self, identity_pair):
        res = eta_lp(identity_pair)
        assert res.optimum == 1
        assert res.solution == (1, 0)
        assert res.iterations < ITERATION_BOUND


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.integers(-5, 5), min_size=3, max_size=3),
    st.integers(1, 9),
    st.integers(1, 9),
)
def test_objective_scaling(c, num, den):
    # maximize c.x over the simplex x1 + x2 + x3 <= 1 (slack is the 4th var)
    E = RatMatrix([[1, 1, 1, 1]])
    lam = Fraction(num, den)
    base = solve(LPProblem(tuple(c) + (0,), E, (1,)))
    scaled = solve(LPProblem(tuple(lam * x for x in c) + (0,), E, (1,)))
    assert scaled.optimum == rational(lam) * base.optimum
    # scaled optimizer is optimal for the original objective too
    assert sum(rational(x) * v for x, v in zip(c, scaled.solution)) == base.optimum


def test_joint_lp_on_inferred_pair():
    pair = validate_pair([["1/2", "1/2"], ["1/2", "1/2"]], [["1/2", "1/2"], ["1/2", "1/2"]])
    value, _ = joint_lp_vertex_max(pair)
    assert joint_lp(pair).optimum == value
