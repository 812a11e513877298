from fractions import Fraction

import pytest
from hypothesis import given, settings

from condcompat.exactlin import (
    RatMatrix,
    g_inverse,
    inverse,
    nullspace,
    rank,
    rational,
    rref,
    solve_particular,
)
from conftest import rat_matrices

D_2X2 = RatMatrix(
    [["-1/4", "3/16"], ["-2/9", "1/6"], ["1/4", "-3/16"], ["2/9", "-1/6"]]
)


class TestRational:
    @pytest.mark.parametrize(
        "text, expected",
        [
            ("3/8", Fraction(3, 8)),
            ("0.3", Fraction(3, 10)),
            ("-0.125", Fraction(-1, 8)),
            ("2", Fraction(2)),
            (" 6/4 ", Fraction(3, 2)),
            (0.3, Fraction(3, 10)),
            (7, Fraction(7)),
            (Fraction(2, 6), Fraction(1, 3)),
        ],
    )
    def test_exact_conversion(self, text, expected):
        q = rational(text)
        assert q == expected
        assert q.denominator > 0
        assert (q.numerator, q.denominator) == (expected.numerator, expected.denominator)

    @pytest.mark.parametrize("bad", ["", "abc", "1/0", "0.3.1"])
    def test_rejects_garbage(self, bad):
        with pytest.raises(ValueError):
            rational(bad)

    def test_rejects_bool(self):
        with pytest.raises(TypeError):
            rational(True)

    def test_canonical_after_arithmetic(self):
        x = rational("2/6") + rational("1/6")
        assert (x.numerator, x.denominator) == (1, 2)
        y = rational("-3/4") * rational("-4/3")
        assert y == 1 and y.denominator == 1


class TestRref:
    def test_identity(self):
        eye = RatMatrix.identity(2)
        assert rref(eye) == (eye, [0, 1])

    def test_zero(self):
        z = RatMatrix.zeros(4, 2)
        assert rref(z) == (z, [])

    def test_two_by_two_d_matrix(self):
        # by hand: every row is a multiple of (1, -3/4)
        reduced, pivots = rref(D_2X2)
        assert pivots == [0]
        assert reduced.row(0) == (1, rational("-3/4"))
        assert all(x == 0 for r in reduced.rows[1:] for x in r)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            rref(RatMatrix([], ncols=0))

    def test_pivot_choice_does_not_change_result(self):
        m = RatMatrix([["1/1000003", 1], ["2", "3"], ["1/2", "5/7"]])
        # reordering rows changes which pivot the heuristic picks
        reordered = m.select_rows([2, 0, 1])
        assert rref(m) == rref(reordered)


class TestRankNullspace:
    def test_rank_identity(self):
        assert rank(RatMatrix.identity(3)) == 3

    def test_rank_d_two_by_two(self):
        assert rank(D_2X2) == 1

    def test_nullspace_identity_empty(self):
        assert nullspace(RatMatrix.identity(2)) == []

    def test_nullspace_two_by_two(self):
        (v,) = nullspace(D_2X2)
        assert v.col(0) == (rational("3/4"), 1)

    def test_nullspace_free_variable_construction(self):
        m = RatMatrix([[1, 2, 0, 3], [0, 0, 1, 4]])
        basis = nullspace(m)
        assert [b.col(0) for b in basis] == [(-2, 1, 0, 0), (-3, 0, -4, 1)]


class TestGInverse:
    def test_identity(self):
        eye = RatMatrix.identity(3)
        assert g_inverse(eye) == eye

    def test_zero_gives_transposed_zero(self):
        assert g_inverse(RatMatrix.zeros(4, 2)) == RatMatrix.zeros(2, 4)

    def test_rank_deficient(self):
        G = g_inverse(D_2X2)
        assert G.shape == (2, 4)
        assert D_2X2 @ G @ D_2X2 == D_2X2

    def test_inverse_singular(self):
        with pytest.raises(ValueError):
            inverse(RatMatrix([[1, 2], [2, 4]]))

    def test_inverse(self):
        m = RatMatrix([["1/2", 1], [3, 4]])
        assert m @ inverse(m) == RatMatrix.identity(2)


def test_solve_particular():
    m = RatMatrix([[1, 1], [2, 2]])
    x = solve_particular(m, [3, 6])
    assert m.apply(x) == [3, 6]
    assert solve_particular(m, [3, 7]) is None


def test_matmul_against_fraction_reference():
    a = RatMatrix([["1/3", "-2/5"], ["7/4", "0"]])
    b = RatMatrix([["2", "1/7", "0"], ["5/6", "-1", "3/11"]])
    fa = [[Fraction(str(x)) for x in r] for r in a.rows]
    fb = [[Fraction(str(x)) for x in r] for r in b.rows]
    ref = [[sum(fa[i][k] * fb[k][j] for k in range(2)) for j in range(3)] for i in range(2)]
    assert (a @ b).rows == tuple(tuple(rational(x) for x in r) for r in ref)


@settings(max_examples=150, deadline=None)
@given(rat_matrices())
def test_rref_idempotent(m):
    reduced, pivots = rref(m)
    assert rref(reduced) == (reduced, pivots)
    assert pivots == sorted(set(pivots))


@settings(max_examples=150, deadline=None)
@given(rat_matrices())
def test_nullspace_annihilated_and_rank_nullity(m):
    basis = nullspace(m)
    for v in basis:
        assert (m @ v).is_zero()
    assert rank(m) + len(basis) == m.ncols
    assert 0 <= rank(m) <= min(m.shape)


@settings(max_examples=150, deadline=None)
@given(rat_matrices())
def test_g_inverse_properties(m):
    G = g_inverse(m)
    assert m @ G @ m == m
    GM = G @ m
    assert GM @ GM == GM


@settings(max_examples=150, deadline=None)
@given(rat_matrices())
def test_rank_of_transpose(m):
    assert rank(m) == rank(m.T)


@settings(max_examples=100, deadline=None)
@given(rat_matrices())
def test_row_space_preserved(m):
    # stacking m under its rref adds no rank
    reduced, _ = rref(m)
    stacked = RatMatrix(list(m.rows) + list(reduced.rows))
    assert rank(stacked) == rank(m)
