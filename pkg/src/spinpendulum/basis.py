"""Real-space basis: nodeless radial oscillator functions and spherical harmonics.

The radial part is the n_r = 0 oscillator eigenfunction

    R_l(r) = sqrt(2 / Gamma(l + 3/2)) * r^l * exp(-r^2/2),

normalized so that int_0^inf R_l^2 r^2 dr = 1.  Both R_l and the sectoral
seeds of the spherical harmonics are evaluated in log space, which keeps
everything finite for l <= 60 over the radii this model visits (naive
evaluation loses precision long before it overflows).

Spherical harmonics use the Condon-Shortley phase and the standard stable
l-increasing recurrence on fully normalized associated Legendre functions,
so they are usable for any |m| <= l even though the model only populates
m in {l, l-1}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np
from scipy.special import gammaln

ArrayLike = Union[float, np.ndarray]


class Spin(Enum):
    """Spin projection label; UP is m_s = +1/2, DOWN is m_s = -1/2."""

    UP = "up"
    DOWN = "down"

    @property
    def m_s(self) -> float:
        return 0.5 if self is Spin.UP else -0.5


@dataclass(frozen=True)
class BasisState:
    """Decoupled basis label (l, m_l, m_s) of a nodeless oscillator state."""

    l: int
    m_l: int
    spin: Spin

    def __post_init__(self) -> None:
        if self.l < 0:
            raise ValueError(f"l must be >= 0, got {self.l}")
        if abs(self.m_l) > self.l:
            raise ValueError(f"|m_l| = {abs(self.m_l)} exceeds l = {self.l}")


@dataclass(frozen=True)
class SpacePoint:
    """Spherical coordinates (r, theta, phi); fields may be scalars or arrays."""

    r: ArrayLike
    theta: ArrayLike
    phi: ArrayLike

    def __post_init__(self) -> None:
        if np.any(np.asarray(self.r) < 0):
            raise ValueError("r must be >= 0")
        th = np.asarray(self.theta)
        if np.any(th < 0) or np.any(th > math.pi):
            raise ValueError("theta must lie in [0, pi]")
        ph = np.asarray(self.phi)
        if np.any(ph < 0) or np.any(ph >= 2 * math.pi):
            raise ValueError("phi must lie in [0, 2*pi)")


def _as_scalar_or_array(x: np.ndarray):
    return x[()] if x.ndim == 0 else x


def radial(l: int, r: ArrayLike) -> ArrayLike:
    """Nodeless radial function R_l(r), unit-normalized with the r^2 measure."""
    if l < 0:
        raise ValueError(f"l must be >= 0, got {l}")
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 0):
        raise ValueError("r must be >= 0")
    log_norm = 0.5 * (math.log(2.0) - gammaln(l + 1.5))
    out = np.zeros(r_arr.shape)
    pos = r_arr > 0
    rp = r_arr[pos]
    out[pos] = np.exp(log_norm + l * np.log(rp) - 0.5 * rp * rp)
    if l == 0:
        out[~pos] = math.exp(log_norm)
    return _as_scalar_or_array(out)


def _legendre_normalized(l: int, m: int, x: np.ndarray) -> np.ndarray:
    """Fully normalized associated Legendre P~_lm(x), m >= 0.

    Normalized so that Y_lm = P~_lm(cos theta) * exp(i m phi) has unit norm on
    the sphere; includes the Condon-Shortley (-1)^m.  Upward recurrence in l
    from the sectoral seed, the textbook numerically stable direction.
    """
    s = np.sqrt(np.maximum(0.0, 1.0 - x * x))
    # sectoral seed P~_mm, built multiplicatively (stable; underflows to 0 harmlessly)
    p_mm = np.full_like(x, 1.0 / math.sqrt(4.0 * math.pi))
    for k in range(1, m + 1):
        p_mm = -math.sqrt((2 * k + 1) / (2.0 * k)) * s * p_mm
    if l == m:
        return p_mm
    p_prev = p_mm
    p_curr = math.sqrt(2 * m + 3.0) * x * p_mm
    for k in range(m + 2, l + 1):
        a = math.sqrt((4.0 * k * k - 1.0) / (k * k - m * m))
        b = math.sqrt(((k - 1.0) ** 2 - m * m) / (4.0 * (k - 1.0) ** 2 - 1.0))
        p_curr, p_prev = a * (x * p_curr - b * p_prev), p_curr
    return p_curr


def sph_harm(l: int, m: int, theta: ArrayLike, phi: ArrayLike) -> ArrayLike:
    """Orthonormal spherical harmonic Y_lm(theta, phi), Condon-Shortley phase."""
    if l < 0:
        raise ValueError(f"l must be >= 0, got {l}")
    if abs(m) > l:
        raise ValueError(f"|m| = {abs(m)} exceeds l = {l}")
    th, ph = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    m_abs = abs(m)
    p = _legendre_normalized(l, m_abs, np.cos(th))
    y = p * np.exp(1j * m_abs * ph)
    if m < 0:
        y = (-1.0) ** m_abs * np.conj(y)
    return _as_scalar_or_array(y)


def eval_basis(state: BasisState, point: SpacePoint) -> ArrayLike:
    """Spatial value radial(l, r) * Y_{l, m_l}(theta, phi) of a basis state."""
    return radial(state.l, point.r) * sph_harm(state.l, state.m_l, point.theta, point.phi)
