"""Shared fixtures and hypothesis strategies for the test suite."""
from __future__ import annotations

import pytest
from hypothesis import strategies as st

from loadspace import AnalyticCurve, Harmonic, Interval, builtin_loads, builtin_plans

UNIT = Interval(0.0, 1.0)


@pytest.fixture
def unit() -> Interval:
    return UNIT


@pytest.fixture
def l1() -> AnalyticCurve:
    return builtin_loads()[0]


@pytest.fixture
def l2() -> AnalyticCurve:
    return builtin_loads()[1]


@pytest.fixture
def plan1():
    return builtin_plans()[0]


@pytest.fixture
def plan2():
    return builtin_plans()[1]


def amplitudes(bound: float = 50.0):
    return st.floats(min_value=-bound, max_value=bound, allow_nan=False, allow_infinity=False)


@st.composite
def intervals(draw, start_bound: float = 10.0, max_length: float = 10.0):
    t1 = draw(st.floats(min_value=-start_bound, max_value=start_bound))
    length = draw(st.floats(min_value=0.1, max_value=max_length))
    return Interval(t1, t1 + length)


@st.composite
def analytic_curves(
    draw,
    interval: Interval | None = UNIT,
    max_harmonics: int = 6,
    max_order: int = 30,
    amp_bound: float = 50.0,
):
    """Random trig polynomial; pass interval=None to draw the interval too."""
    if interval is None:
        interval = draw(intervals())
    orders = draw(st.sets(st.integers(min_value=1, max_value=max_order), max_size=max_harmonics))
    harmonics = tuple(
        Harmonic(n, draw(amplitudes(amp_bound)), draw(amplitudes(amp_bound))) for n in sorted(orders)
    )
    return AnalyticCurve(interval, draw(amplitudes(2 * amp_bound)), harmonics)
