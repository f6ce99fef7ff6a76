from hypothesis import given
from hypothesis import strategies as st

from retailsim.money import round2


def test_rounds_to_cents():
    assert round2(1.005) == 1.0  # banker's rounding on the half cent
    assert round2(1.015) == 1.02
    assert round2(2.675) == 2.68
    assert round2(0.1 + 0.2) == 0.3


def test_idempotent_on_cents():
    assert round2(12.34) == 12.34
    assert round2(-0.01) == -0.01


@given(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
def test_fixed_point(x):
    assert round2(round2(x)) == round2(x)


@given(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
def test_within_half_cent(x):
    assert abs(round2(x) - x) <= 0.005 + 1e-12
