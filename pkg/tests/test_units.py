import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from decogauss.units import (
    CONSTANTS,
    METER,
    PLANCK_LENGTH,
    LengthUnit,
    PhysicalConstants,
    convert_length,
    planck_scaled,
)


def test_planck_length_consistent_with_hbar_g_c():
    derived = math.sqrt(CONSTANTS.hbar * CONSTANTS.G / CONSTANTS.c**3)
    assert abs(derived - CONSTANTS.planck_length) <= 1e-6 * CONSTANTS.planck_length


def test_planck_momentum_consistent_with_hbar_g_c():
    derived = math.sqrt(CONSTANTS.hbar * CONSTANTS.c**3 / CONSTANTS.G)
    assert abs(derived - CONSTANTS.planck_momentum) <= 1e-6 * CONSTANTS.planck_momentum


def test_h_is_exactly_two_pi_hbar():
    assert CONSTANTS.h == 2.0 * math.pi * CONSTANTS.hbar


def test_planck_mass_times_c_is_planck_momentum():
    assert (
        abs(CONSTANTS.planck_mass * CONSTANTS.c - CONSTANTS.planck_momentum)
        <= 1e-6 * CONSTANTS.planck_momentum
    )


def test_inconsistent_constants_rejected():
    with pytest.raises(ValueError):
        PhysicalConstants(
            hbar=CONSTANTS.hbar,
            h=CONSTANTS.h,
            c=CONSTANTS.c,
            G=CONSTANTS.G,
            boltzmann=CONSTANTS.boltzmann,
            g_gravity=CONSTANTS.g_gravity,
            planck_length=2e-35,  # off by ~24%
            planck_momentum=CONSTANTS.planck_momentum,
            planck_mass=CONSTANTS.planck_mass,
        )


def test_convert_identity():
    assert convert_length(1.0, METER, METER) == 1.0


def test_convert_meter_to_planck_length():
    assert convert_length(1.616255e-35, METER, PLANCK_LENGTH) == pytest.approx(1.0, rel=1e-12)


def test_convert_288_meters():
    oracle = 288.0 / 1.616255e-35  # direct division
    got = convert_length(288.0, METER, PLANCK_LENGTH)
    assert got == pytest.approx(oracle, rel=1e-12)
    assert got == pytest.approx(1.782e37, rel=1e-3)


def test_convert_rejects_non_finite():
    with pytest.raises(ValueError):
        convert_length(math.inf, METER, PLANCK_LENGTH)
    with pytest.raises(ValueError):
        convert_length(math.nan, METER, METER)


def test_custom_unit_scale_must_be_positive():
    with pytest.raises(ValueError):
        LengthUnit.custom(0.0)
    with pytest.raises(ValueError):
        LengthUnit.custom(-1.0)
    with pytest.raises(ValueError):
        LengthUnit.custom(math.inf)


@given(
    value=st.floats(1e-30, 1e30),
    scale1=st.floats(1e-36, 1e6),
    scale2=st.floats(1e-36, 1e6),
)
def test_convert_round_trip(value, scale1, scale2):
    u1 = LengthUnit.custom(scale1, "u1")
    u2 = LengthUnit.custom(scale2, "u2")
    back = convert_length(convert_length(value, u1, u2), u2, u1)
    assert back == pytest.approx(value, rel=1e-12)


def test_planck_scaled_tau():
    got = planck_scaled(4.658e-33, 2)
    oracle = 4.658e-33 / CONSTANTS.planck_length**2
    assert got == oracle
    assert got == pytest.approx(1.78e37, rel=1e-2)


def test_planck_scaled_lambda():
    got = planck_scaled(3.27e79, -4)
    oracle = 3.27e79 * CONSTANTS.planck_length**4
    assert got == pytest.approx(oracle, rel=1e-12)
    assert got == pytest.approx(2.2e-60, rel=5e-2)


def test_planck_scaled_zero_power_identity():
    assert planck_scaled(1.0, 0) == 1.0


def test_planck_scaled_rejects_non_finite():
    with pytest.raises(ValueError):
        planck_scaled(math.nan, 2)
