import math

import pytest

from magbound import (PhysicalParams, UnitSystem, ValidationError, bohr_magneton,
                      derive_scales)

# Frozen oracle values: direct evaluation of sqrt(hbar c / e B) and
# e hbar / (2 m_e c) with CODATA-2018 Gaussian constants at 30 digits.
A_CM_1KG = 8.1130262945e-06
A_CM_10KG = 2.5655641807e-06
A_CM_100KG = 8.1130262945e-07
MU_EV_PER_G = 5.7883818025e-09


def test_natural_identities():
    scales = derive_scales(PhysicalParams.natural(lam=1.0))
    assert scales.omega == 1.0
    assert scales.a == 1.0
    assert scales.mu == 0.5
    assert scales.d == math.sqrt(2.0)
    assert scales.j0 == pytest.approx(1.0 / (2.0 * math.pi), rel=1e-15)
    assert scales.a_scale == pytest.approx(1.0, rel=1e-15)


def test_lambda0_natural():
    scales = derive_scales(PhysicalParams.natural(lam=4.0 * math.pi))
    assert scales.lambda0 == pytest.approx(1.0, rel=1e-15)


@pytest.mark.parametrize("b_kg,expected", [
    (1.0, A_CM_1KG),
    (10.0, A_CM_10KG),
    (100.0, A_CM_100KG),
])
def test_magnetic_length_gaussian(b_kg, expected):
    scales = derive_scales(PhysicalParams.gaussian(b_kilogauss=b_kg))
    assert scales.a == pytest.approx(expected, rel=1e-9)


def test_bohr_magneton_gaussian():
    params = PhysicalParams.gaussian(b_kilogauss=1.0)
    assert bohr_magneton(params) == pytest.approx(MU_EV_PER_G, rel=1e-9)


def test_bohr_magneton_natural():
    assert bohr_magneton(PhysicalParams.natural()) == 0.5


def test_bohr_magneton_mass_scaling():
    # doubling the free-electron mass halves mu; in natural params the free
    # mass enters via mass_ratio = m / m_e
    half = bohr_magneton(PhysicalParams.natural(mass_ratio=0.5))
    full = bohr_magneton(PhysicalParams.natural(mass_ratio=1.0))
    assert half == pytest.approx(0.5 * full, rel=1e-15)


def test_scale_relations():
    for params in (PhysicalParams.natural(lam=3.0),
                   PhysicalParams.gaussian(b_kilogauss=7.3, lam=3.0)):
        s = derive_scales(params)
        assert s.a ** 2 * params.m * s.omega / params.hbar == pytest.approx(1.0, rel=1e-12)
        assert s.d ** 2 == pytest.approx(2.0 * s.a ** 2, rel=1e-15)
        assert s.a_scale == pytest.approx(2.0 * math.pi * s.j0, rel=1e-12)
        assert s.a_scale == pytest.approx(params.hbar / (params.m * s.a ** 4), rel=1e-12)


@pytest.mark.parametrize("b_kg", [0.5, 1.0, 12.0, 49.5])
def test_field_doubling_homogeneity(b_kg):
    s1 = derive_scales(PhysicalParams.gaussian(b_kilogauss=b_kg))
    s2 = derive_scales(PhysicalParams.gaussian(b_kilogauss=2.0 * b_kg))
    assert s2.omega / s1.omega == pytest.approx(2.0, rel=1e-12)
    assert s2.a / s1.a == pytest.approx(1.0 / math.sqrt(2.0), rel=1e-12)
    assert s2.j0 / s1.j0 == pytest.approx(4.0, rel=1e-12)
    assert s2.a_scale / s1.a_scale == pytest.approx(4.0, rel=1e-12)


def test_derive_scales_pure():
    params = PhysicalParams.gaussian(b_kilogauss=3.7, lam=2.2)
    s1, s2 = derive_scales(params), derive_scales(params)
    assert s1 == s2  # bitwise-equal fields


@pytest.mark.parametrize("kwargs,name", [
    (dict(B=-1.0), "B"),
    (dict(B=0.0), "B"),
    (dict(m=-2.0), "m"),
    (dict(lam=0.0), "lam"),
    (dict(e_mag=-1.0), "e_mag"),
])
def test_validation_names_field(kwargs, name):
    good = dict(B=1.0, m=1.0, m_e=1.0, e_mag=1.0, hbar=1.0, c=1.0, lam=1.0,
                units=UnitSystem.natural())
    good.update(kwargs)
    with pytest.raises(ValidationError, match=name):
        PhysicalParams(**good)


def test_constructor_validation():
    with pytest.raises(ValidationError, match="b_kilogauss"):
        PhysicalParams.gaussian(b_kilogauss=-5.0)
    with pytest.raises(ValidationError, match="mass_ratio"):
        PhysicalParams.natural(mass_ratio=0.0)


def test_params_immutable():
    params = PhysicalParams.gaussian(b_kilogauss=1.0)
    with pytest.raises(AttributeError):
        params.B = 2.0
