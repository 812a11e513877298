"""Worked conditional pairs with known verdicts, as exact literals."""

from __future__ import annotations

# (A, B) with A column-stochastic and B row-stochastic.

TWO_BY_TWO_COMPATIBLE = (
    [["1/4", "2/3"], ["3/4", "1/3"]],
    [["1/3", "2/3"], ["3/4", "1/4"]],
)

TWO_BY_TWO_INCOMPATIBLE = (
    [["1/7", "3/4"], ["6/7", "1/4"]],
    [["2/5", "3/5"], ["3/8", "5/8"]],
)

POSITIVE_3X3_COMPATIBLE = (
    [["1/5", "2/7", "3/8"], ["3/5", "2/7", "1/8"], ["1/5", "3/7", "1/2"]],
    [["1/6", "1/3", "1/2"], ["1/2", "1/3", "1/6"], ["1/8", "3/8", "1/2"]],
)

ZEROS_3X3_COMPATIBLE = (
    [["1/3", "0", "2/3"], ["0", "1/2", "1/3"], ["2/3", "1/2", "0"]],
    [["1/3", "0", "2/3"], ["0", "1/2", "1/2"], ["2/3", "1/3", "0"]],
)

POSITIVE_3X3_INCOMPATIBLE = (
    [["0.2", "0.3", "0.1"], ["0.1", "0.4", "0.4"], ["0.7", "0.3", "0.5"]],
    [["0.2", "0.1", "0.7"], ["0.3", "0.4", "0.3"], ["0.1", "0.4", "0.5"]],
)

ZEROS_3X3_INCOMPATIBLE = (
    [["0", "1/3", "0"], ["1", "1/3", "1/2"], ["0", "1/3", "1/2"]],
    [["0", "1", "0"], ["1/4", "1/2", "1/4"], ["0", "1/5", "4/5"]],
)

# Cigarette-carton supply (X = 1, 2, 3) against demand (Y = 0, 1, 2) at a
# grocery store; numerically the same pair as POSITIVE_3X3_INCOMPATIBLE.
SUPPLY_DEMAND = (
    [["0.2", "0.3", "0.1"], ["0.1", "0.4", "0.4"], ["0.7", "0.3", "0.5"]],
    [["0.2", "0.1", "0.7"], ["0.3", "0.4", "0.3"], ["0.1", "0.4", "0.5"]],
)

ALL = {
    "two_by_two_compatible": TWO_BY_TWO_COMPATIBLE,
    "two_by_two_incompatible": TWO_BY_TWO_INCOMPATIBLE,
    "positive_3x3_compatible": POSITIVE_3X3_COMPATIBLE,
    "zeros_3x3_compatible": ZEROS_3X3_COMPATIBLE,
    "positive_3x3_incompatible": POSITIVE_3X3_INCOMPATIBLE,
    "zeros_3x3_incompatible": ZEROS_3X3_INCOMPATIBLE,
    "supply_demand": SUPPLY_DEMAND,
}

COMPATIBLE = {"two_by_two_compatible", "positive_3x3_compatible", "zeros_3x3_compatible"}
