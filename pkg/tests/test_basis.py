"""Radial functions and spherical harmonics against independent references.

Frozen oracles:
  R_0(0) = sqrt(2 / Gamma(3/2)) = sqrt(4 / sqrt(pi))       (closed form)
  peak of r^2 R_l(r)^2 at r = sqrt(l + 1)                  (d/dr of r^{2l+2} e^{-r^2})
  Y_0^0 = 1/sqrt(4 pi);  Y_1^0 = sqrt(3/4pi) cos(theta);
  Y_1^1 = -sqrt(3/8pi) sin(theta) e^{i phi}                (Condon-Shortley)
scipy.special.sph_harm_y serves as an independent implementation oracle.
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad
from scipy.special import sph_harm_y

from spinpendulum.basis import BasisState, SpacePoint, Spin, eval_basis, radial, sph_harm


def test_radial_origin_frozen():
    assert radial(0, 0.0) == pytest.approx(math.sqrt(4.0 / math.sqrt(math.pi)), rel=1e-14)
    for l in (1, 2, 7, 40):
        assert radial(l, 0.0) == 0.0


@pytest.mark.parametrize("l", [0, 1, 5, 20, 41])
def test_radial_normalization(l):
    val, err = quad(lambda r: (radial(l, r) * r) ** 2, 0.0, math.sqrt(l + 1.0) + 12.0,
                    limit=200)
    assert err < 1e-7  # quad's conservative estimate; value gate below is the check
    assert val == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("l", [0, 3, 20])
def test_radial_density_peak(l):
    peak = math.sqrt(l + 1.0)
    g = lambda r: (radial(l, r) * r) ** 2
    center = g(peak)
    for eps in (1e-3, 1e-2, 0.1):
        assert g(peak - eps) < center
        assert g(peak + eps) < center


def test_radial_array_shape_and_errors():
    r = np.linspace(0.0, 5.0, 11)
    out = radial(3, r)
    assert isinstance(out, np.ndarray) and out.shape == r.shape
    with pytest.raises(ValueError):
        radial(-1, 1.0)
    with pytest.raises(ValueError):
        radial(2, -0.5)


def test_sph_harm_frozen_low_orders():
    theta, phi = 0.7, 1.3
    assert sph_harm(0, 0, theta, phi) == pytest.approx(1.0 / math.sqrt(4 * math.pi), rel=1e-14)
    assert sph_harm(1, 0, theta, phi) == pytest.approx(
        math.sqrt(3 / (4 * math.pi)) * math.cos(theta), rel=1e-14
    )
    expected_11 = -math.sqrt(3 / (8 * math.pi)) * math.sin(theta) * complex(
        math.cos(phi), math.sin(phi)
    )
    assert sph_harm(1, 1, theta, phi) == pytest.approx(expected_11, rel=1e-14)


@pytest.mark.parametrize("l", [0, 1, 2, 5, 10, 30, 59])
def test_sph_harm_matches_scipy(l):
    rng = np.random.default_rng(l)
    theta = rng.uniform(0.05, math.pi - 0.05, 5)
    phi = rng.uniform(0.0, 2 * math.pi, 5)
    ms = sorted({-l, -(l // 2), 0, l // 3, l}) if l else [0]
    for m in ms:
        ours = sph_harm(l, m, theta, phi)
        ref = sph_harm_y(l, m, theta, phi)
        assert np.allclose(ours, ref, rtol=1e-10, atol=1e-12)


@settings(max_examples=60)
@given(
    l=st.integers(min_value=0, max_value=40),
    theta=st.floats(min_value=0.01, max_value=math.pi - 0.01),
    phi=st.floats(min_value=0.0, max_value=2 * math.pi - 1e-9),
)
def test_addition_theorem_property(l, theta, phi):
    total = sum(abs(sph_harm(l, m, theta, phi)) ** 2 for m in range(-l, l + 1))
    assert total == pytest.approx((2 * l + 1) / (4 * math.pi), rel=1e-11)


@given(
    l=st.integers(min_value=0, max_value=30),
    theta=st.floats(min_value=0.0, max_value=math.pi),
    phi=st.floats(min_value=0.0, max_value=2 * math.pi - 1e-9),
)
def test_conjugation_symmetry_property(l, theta, phi):
    for m in range(0, l + 1):
        lhs = sph_harm(l, -m, theta, phi)
        rhs = (-1) ** m * np.conj(sph_harm(l, m, theta, phi))
        assert abs(lhs - rhs) < 1e-12


def test_sph_harm_poles_regular():
    for l in (0, 1, 6):
        for m in range(-l, l + 1):
            north = sph_harm(l, m, 0.0, 0.3)
            south = sph_harm(l, m, math.pi, 0.3)
            assert np.isfinite(north) and np.isfinite(south)
            if m != 0:
                assert abs(north) < 1e-14 and abs(south) < 1e-14


def test_sph_harm_errors():
    with pytest.raises(ValueError):
        sph_harm(2, 3, 0.1, 0.1)
    with pytest.raises(ValueError):
        sph_harm(-1, 0, 0.1, 0.1)


def test_basis_state_validation():
    state = BasisState(3, -3, Spin.UP)
    assert state.l == 3 and state.m_l == -3
    assert Spin.UP.m_s == 0.5 and Spin.DOWN.m_s == -0.5
    with pytest.raises(ValueError):
        BasisState(2, 3, Spin.DOWN)
    with pytest.raises(ValueError):
        BasisState(-1, 0, Spin.UP)


def test_space_point_validation():
    SpacePoint(1.0, math.pi / 2, 0.0)
    with pytest.raises(ValueError):
        SpacePoint(-1.0, 0.5, 0.0)
    with pytest.raises(ValueError):
        SpacePoint(1.0, 3.5, 0.0)
    with pytest.raises(ValueError):
        SpacePoint(1.0, 0.5, 7.0)


def test_eval_basis_factorizes():
    state = BasisState(3, 2, Spin.DOWN)
    point = SpacePoint(1.7, 0.9, 2.1)
    val = eval_basis(state, point)
    assert val == pytest.approx(radial(3, 1.7) * sph_harm(3, 2, 0.9, 2.1), rel=1e-14)
