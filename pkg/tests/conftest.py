from fractions import Fraction

import pytest
from hypothesis import strategies as st

from condcompat import fixtures
from condcompat.exactlin import RatMatrix
from condcompat.specmodel import validate_pair

_acceptance_lines = []


@pytest.fixture
def pair_named():
    def make(name):
        A, B = fixtures.ALL[name]
        return validate_pair(A, B)
    return make


@pytest.fixture
def identity_pair():
    return validate_pair([[1, 0], [0, 1]], [[1, 0], [0, 1]])


def small_fractions(max_num=6, max_den=6):
    return st.builds(
        Fraction,
        st.integers(-max_num, max_num),
        st.integers(1, max_den),
    )


@st.composite
def rat_matrices(draw, max_rows=5, max_cols=5, zero_weight=0.4):
    nrows = draw(st.integers(1, max_rows))
    ncols = draw(st.integers(1, max_cols))
    entry = small_fractions()
    rows = []
    for _ in range(nrows):
        row = []
        for _ in range(ncols):
            if draw(st.floats(0, 1)) < zero_weight:
                row.append(Fraction(0))
            else:
                row.append(draw(entry))
        rows.append(row)
    # occasionally duplicate a row scaled, to force rank deficiency
    if nrows > 1 and draw(st.booleans()):
        k = draw(st.integers(0, nrows - 1))
        c = draw(small_fractions())
        rows[-1] = [c * x for x in rows[k]]
    return RatMatrix(rows)


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    tol = dict(report.user_properties).get("tolerance", "")
    _acceptance_lines.append((name, report.outcome, tol))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_lines:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, tol in _acceptance_lines:
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] {name}  (tolerance: {tol})")
