from fractions import Fraction

import pytest
from hypothesis import strategies as st

from nodalkernel.rationals import RatInterval

small_ints = st.integers(min_value=-40, max_value=40)
rationals = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=30))


@st.composite
def intervals(draw):
    if draw(st.integers(0, 9)) == 0:
        return RatInterval.closed(1, 0)
    a, b = draw(rationals), draw(rationals)
    return RatInterval.make(min(a, b), max(a, b), draw(st.booleans()), draw(st.booleans()))


@pytest.fixture
def genus22():
    from nodalkernel import CurveData

    return CurveData(2, 2)


@pytest.fixture
def genus23():
    from nodalkernel import CurveData

    return CurveData(2, 3)
