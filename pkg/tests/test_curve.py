from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nodalkernel.curve import (
    CurveData,
    DepthOneNumerics,
    InvariantError,
    Polarization,
    chi_component,
    chi_total,
    polarized_slope,
    teixidor_holds,
    teixidor_window,
)
from nodalkernel.rationals import UNIT_OPEN, RatInterval


def grid_window(E, C, N):
    """Independent oracle: evaluate both inequalities at every t/N."""
    r = E.r1
    chi = chi_total(E, C)
    chis = {1: E.d1 + r * (1 - C.g1), 2: E.d2 + r * (1 - C.g2)}
    hits = []
    for t in range(1, N):
        w = {1: Fraction(t, N), 2: 1 - Fraction(t, N)}
        if all(w[i] * chi <= chis[i] <= w[i] * chi + r for i in (1, 2)):
            hits.append(t)
    return hits


def test_curve_invariants():
    assert CurveData(2, 3).arithmetic_genus == 5
    with pytest.raises(InvariantError, match=">= 2"):
        CurveData(1, 3)


def test_depth_one_invariants():
    with pytest.raises(InvariantError):
        DepthOneNumerics(0, 0, 0, 0, 0)
    with pytest.raises(InvariantError):
        DepthOneNumerics(1, 0, 0, 0, 1)
    assert DepthOneNumerics.bundle(2, 1, 1).is_bundle


@pytest.mark.parametrize("w1", [0, 1, Fraction(3, 2), -1])
def test_polarization_bounds(w1):
    with pytest.raises(InvariantError):
        Polarization(w1)


@pytest.mark.parametrize("d, r, g, expected", [(4, 1, 2, 3), (0, 1, 2, -1), (-1, 1, 2, -2)])
def test_chi_component(d, r, g, expected):
    assert chi_component(d, r, g) == expected


def test_chi_total(genus22):
    assert chi_total(DepthOneNumerics.bundle(1, 0, 0), genus22) == -3 == 1 - genus22.arithmetic_genus
    # h^0 = 3 + 3 - 1 with h^1 = 0
    assert chi_total(DepthOneNumerics.bundle(1, 4, 4), genus22) == 5
    assert chi_total(DepthOneNumerics(1, 0, -1, 0, 0), genus22) == -2


def test_polarized_slope(genus22):
    O_C = DepthOneNumerics.bundle(1, 0, 0)
    for w in (Fraction(1, 5), Fraction(1, 2), Fraction(7, 9)):
        assert polarized_slope(O_C, genus22, Polarization(w)) == -3
    pushed = DepthOneNumerics(1, 0, -1, 0, 0)
    assert polarized_slope(pushed, genus22, Polarization(Fraction(1, 2))) == -4 == Fraction(-2) / Fraction(1, 2)
    assert polarized_slope(DepthOneNumerics(1, 0, 0, 0, 0), genus22, Polarization(Fraction(1, 3))) == -3


def test_teixidor_window_examples(genus22):
    line = DepthOneNumerics.bundle(1, 4, 4)
    assert teixidor_window(line, genus22) == RatInterval.closed(Fraction(2, 5), Fraction(3, 5))
    kernel = DepthOneNumerics.bundle(2, -4, -4)
    assert teixidor_window(kernel, genus22) == RatInterval.closed(Fraction(3, 7), Fraction(4, 7))
    hits = grid_window(line, genus22, 1000)
    assert (hits[0], hits[-1], len(hits)) == (400, 600, 201)


def test_teixidor_window_zero_chi():
    # chi = 0 with 0 <= chi_i <= r: the condition holds for every w
    C = CurveData(2, 2)
    E = DepthOneNumerics.bundle(1, 1, 2)  # chi_1 = 0, chi_2 = 1, chi = 0
    assert chi_total(E, C) == 0
    assert teixidor_window(E, C) == UNIT_OPEN


def test_teixidor_rejects_non_bundles(genus22):
    with pytest.raises(InvariantError):
        teixidor_window(DepthOneNumerics(1, 0, 0, 0, 0), genus22)


bundles = st.builds(
    lambda r, d1, d2, g1, g2: (DepthOneNumerics.bundle(r, d1, d2), CurveData(g1, g2)),
    st.integers(1, 4), st.integers(-15, 15), st.integers(-15, 15), st.integers(2, 6), st.integers(2, 6),
)


@given(bundles, st.integers(1, 96))
def test_equal_rank_slope_independent_of_w(EC, t):
    E, C = EC
    assert polarized_slope(E, C, Polarization(Fraction(t, 97))) == Fraction(chi_total(E, C), E.r1)


@given(bundles, st.integers(-10, 10))
def test_chi_depends_only_on_total_degree(EC, shift):
    E, C = EC
    moved = DepthOneNumerics.bundle(E.r1, E.d1 + shift, E.d2 - shift)
    assert chi_total(moved, C) == chi_total(E, C)


@given(bundles)
def test_window_inside_unit_interval_with_chi_ratio_endpoints(EC):
    E, C = EC
    window = teixidor_window(E, C)
    assert window.is_subset(UNIT_OPEN)
    if window.empty:
        return
    for end, closed in ((window.lo, window.lo_closed), (window.hi, window.hi_closed)):
        if end in (0, 1):
            assert not closed
        else:
            assert closed
            assert teixidor_holds(E, C, Polarization(end))


@given(bundles, st.sampled_from([97, 1000]))
def test_window_matches_grid_oracle(EC, N):
    E, C = EC
    window = teixidor_window(E, C)
    hits = set(grid_window(E, C, N))
    for t in range(1, N):
        assert (Fraction(t, N) in window) == (t in hits)
