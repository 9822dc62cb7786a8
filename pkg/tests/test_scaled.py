import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from blockdet import ScaledDet, magnitude_ratio, relative_difference

finite_complex = st.builds(
    complex,
    st.floats(min_value=-1e12, max_value=1e12, allow_nan=False),
    st.floats(min_value=-1e12, max_value=1e12, allow_nan=False),
)


def test_zero():
    z = ScaledDet.from_complex(0)
    assert z.is_zero
    assert z == ScaledDet.zero()
    assert z.to_complex() == 0


@given(finite_complex)
def test_mantissa_range(value):
    sd = ScaledDet.from_complex(value)
    if value == 0:
        assert sd.is_zero
    else:
        assert 1.0 <= abs(sd.mantissa) < 10.0
        assert sd.to_complex() == pytest.approx(value, rel=1e-14)


@given(finite_complex, finite_complex)
def test_product(a, b):
    sd = ScaledDet.from_complex(a) * ScaledDet.from_complex(b)
    if a == 0 or b == 0:
        assert sd.is_zero
        return
    assert 1.0 <= abs(sd.mantissa) < 10.0
    # magnitude in log space (immune to double under/overflow)
    assert math.isclose(
        sd.log10_magnitude(),
        math.log10(abs(a)) + math.log10(abs(b)),
        rel_tol=1e-12,
        abs_tol=1e-9,
    )
    # phase from the mantissa alone
    expected_phase = cmath.phase(a) + cmath.phase(b)
    assert math.isclose(
        math.cos(cmath.phase(sd.mantissa)), math.cos(expected_phase), abs_tol=1e-9
    )
    assert math.isclose(
        math.sin(cmath.phase(sd.mantissa)), math.sin(expected_phase), abs_tol=1e-9
    )


def test_large_products_do_not_overflow():
    sd = ScaledDet.from_complex(1e300) * ScaledDet.from_complex(1e300)
    assert sd.exponent == 600
    assert sd.log10_magnitude() == pytest.approx(600.0)


def test_power():
    sd = ScaledDet.from_complex(2 + 1j) ** 3
    assert sd.to_complex() == pytest.approx((2 + 1j) ** 3, rel=1e-14)
    with pytest.raises(ValueError):
        ScaledDet.from_complex(2) ** -1


def test_from_factors():
    sd = ScaledDet.from_factors([1e200, 1e200, 2.0])
    assert sd.mantissa == pytest.approx(2.0)
    assert sd.exponent == 400


def test_relative_difference():
    a = ScaledDet.from_complex(1.0)
    b = ScaledDet.from_complex(1.0 + 1e-10)
    assert relative_difference(a, b) == pytest.approx(1e-10, rel=1e-3)
    assert relative_difference(a, a) == 0.0
    assert relative_difference(ScaledDet.zero(), ScaledDet.zero()) == 0.0
    assert relative_difference(a, ScaledDet.zero()) == math.inf
    assert relative_difference(ScaledDet.zero(), a) == 1.0
    # wildly different scales saturate instead of overflowing
    big = ScaledDet(1 + 0j, 1000)
    small = ScaledDet(1 + 0j, -1000)
    assert relative_difference(big, small) == math.inf
    assert relative_difference(small, big) == pytest.approx(1.0)


def test_magnitude_ratio():
    a = ScaledDet(2 + 0j, -500)
    b = ScaledDet(1 + 0j, 0)
    assert magnitude_ratio(a, b) == pytest.approx(10 ** (math.log10(2) - 500), rel=1e-10)
    assert magnitude_ratio(ScaledDet.zero(), b) == 0.0
    assert magnitude_ratio(b, ScaledDet.zero()) == math.inf
