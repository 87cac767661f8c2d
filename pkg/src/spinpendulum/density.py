"""Real-space spinor densities: theta-integrated orbit-plane maps and
subpacket maxima on the classical-orbit sphere.

The plotted quantity keeps the r^2 Jacobian: d_comp(r, phi) is a probability
density in (r, phi) after integrating |Psi_comp|^2 over theta, so the two
components sum-rule to 1 and the density ridge sits on the classical orbit
radius sqrt(n_mean + 1).

The theta integral uses Gauss-Legendre nodes mapped to theta in [0, pi]
(weights carry the sin(theta) factor).  In theta the integrand is a smooth
near-band-limited product of associated Legendre functions of degree at most
2*l_max + 1, so n_theta > 2*l_max + 2 nodes already integrate it to machine
precision; doubling the node count is a free exactness check.

Grid evaluation is embarrassingly parallel: the phi axis is cut into blocks
of fixed width and blocks may be farmed out to threads.  Block boundaries do
not depend on the worker count and every block is reduced in a fixed order,
so results are bit-identical for any number of workers.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize

from .basis import SpacePoint, Spin, radial, sph_harm
from .model import ModelParams
from .packet import SpinorPacket
from .propagator import evolve_coupled, from_coupled, to_coupled

_PHI_BLOCK = 32  # fixed parallel work unit; must not depend on worker count
_ABSENT_NORM_SQ = 1e-12  # component below this has no maximum to report


@dataclass
class DensityField:
    """Theta-integrated, r^2-weighted spinor density on an (r, phi) grid."""

    r_grid: np.ndarray
    phi_grid: np.ndarray
    d_up: np.ndarray    # (n_r, n_phi), >= 0
    d_down: np.ndarray  # (n_r, n_phi), >= 0
    t: float = 0.0

    @property
    def d_total(self) -> np.ndarray:
        return self.d_up + self.d_down

    def total_mass(self) -> float:
        """Integral of d_up + d_down over dr dphi (trapezoid x periodic trapezoid)."""
        wr = _trapezoid_weights(self.r_grid)
        wp = _periodic_weights(self.phi_grid)
        return float(wr @ self.d_total @ wp)


@dataclass(frozen=True)
class TrackPoint:
    t: float
    t_over_tls: float
    component: Spin
    theta_star: float
    phi_star: float
    value: float


@dataclass
class SphereTrack:
    """Refined maxima of one spinor component on the orbit sphere over time.

    Times where the component carries no population are omitted, not errors.
    """

    rows: List[TrackPoint] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rows)


def _trapezoid_weights(grid: np.ndarray) -> np.ndarray:
    w = np.zeros_like(grid)
    d = np.diff(grid)
    w[:-1] += 0.5 * d
    w[1:] += 0.5 * d
    return w


def _periodic_weights(grid: np.ndarray) -> np.ndarray:
    # centered cell widths on [0, 2*pi) with wraparound
    ext = np.concatenate([[grid[-1] - 2 * math.pi], grid, [grid[0] + 2 * math.pi]])
    return 0.5 * (ext[2:] - ext[:-2])


def _component_terms(packet: SpinorPacket, component: Spin) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(l, m, amplitude) arrays of one spinor component, in deterministic order."""
    items = sorted(
        ((s.l, s.m_l, a) for s, a in packet.amplitudes.items() if s.spin is component),
        key=lambda item: (item[0], item[1]),
    )
    if not items:
        return np.zeros(0, int), np.zeros(0, int), np.zeros(0, complex)
    ls, ms, amps = zip(*items)
    return np.asarray(ls, int), np.asarray(ms, int), np.asarray(amps, complex)


def eval_spinor(packet: SpinorPacket, point: SpacePoint):
    """Spinor components (Psi_up, Psi_down) at a space point (fields may be arrays)."""
    out = []
    for component in (Spin.UP, Spin.DOWN):
        ls, ms, amps = _component_terms(packet, component)
        shape = np.broadcast(
            np.asarray(point.r), np.asarray(point.theta), np.asarray(point.phi)
        ).shape
        acc = np.zeros(shape, dtype=complex)
        for l, m, a in zip(ls, ms, amps):
            acc = acc + a * radial(int(l), point.r) * sph_harm(int(l), int(m), point.theta, point.phi)
        out.append(acc[()] if acc.ndim == 0 else acc)
    return out[0], out[1]


def classical_orbit_radius(n_mean: float) -> float:
    """Radius sqrt(n_mean + 1) of the dominant multiplet's radial density peak."""
    if n_mean < 0:
        raise ValueError(f"n_mean must be >= 0, got {n_mean}")
    return math.sqrt(n_mean + 1.0)


def _theta_rule(n_theta: int) -> Tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n_theta)
    theta = 0.5 * math.pi * (x + 1.0)
    return theta, 0.5 * math.pi * w * np.sin(theta)


def _component_factors(
    packet: SpinorPacket, component: Spin, r_grid: np.ndarray, theta: np.ndarray
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Amplitude-weighted radial, polar and azimuthal-frequency factors."""
    ls, ms, amps = _component_terms(packet, component)
    k = len(ls)
    rad = np.empty((k, len(r_grid)))
    pol = np.empty((k, len(theta)))
    for i in range(k):
        rad[i] = radial(int(ls[i]), r_grid)
        pol[i] = np.real(sph_harm(int(ls[i]), int(ms[i]), theta, 0.0))
    return amps[:, None] * rad, pol, ms


def plane_density(
    packet: SpinorPacket,
    r_grid: Sequence[float],
    phi_grid: Sequence[float],
    n_theta: int,
    workers: int = 1,
    t: float = 0.0,
) -> DensityField:
    """Theta-integrated density d_comp(r, phi) = r^2 int |Psi_comp|^2 sin(theta) dtheta."""
    r_arr = np.asarray(r_grid, dtype=float)
    phi_arr = np.asarray(phi_grid, dtype=float)
    if n_theta < 16:
        raise ValueError(f"n_theta must be >= 16, got {n_theta}")
    for name, g in (("r_grid", r_arr), ("phi_grid", phi_arr)):
        if g.ndim != 1 or len(g) < 2 or np.any(np.diff(g) <= 0):
            raise ValueError(f"{name} must be 1-D, strictly increasing, length >= 2")
    theta, w_theta = _theta_rule(n_theta)
    r_sq = r_arr * r_arr

    fields = {}
    for component in (Spin.UP, Spin.DOWN):
        amp_rad, pol, ms = _component_factors(packet, component, r_arr, theta)
        d = np.zeros((len(r_arr), len(phi_arr)))
        if len(ms) > 0:
            blocks = [
                slice(start, min(start + _PHI_BLOCK, len(phi_arr)))
                for start in range(0, len(phi_arr), _PHI_BLOCK)
            ]

            def run_block(sl: slice, _amp_rad=amp_rad, _pol=pol, _ms=ms, _d=d) -> None:
                az = np.exp(1j * np.outer(_ms, phi_arr[sl]))
                psi = np.einsum("kr,kt,kp->rtp", _amp_rad, _pol, az, optimize=True)
                _d[:, sl] = np.einsum(
                    "rtp,t->rp", psi.real**2 + psi.imag**2, w_theta
                ) * r_sq[:, None]

            if workers > 1:
                with ThreadPoolExecutor(max_workers=workers) as pool:
                    list(pool.map(run_block, blocks))
            else:
                for sl in blocks:
                    run_block(sl)
        fields[component] = d
    return DensityField(
        r_grid=r_arr, phi_grid=phi_arr, d_up=fields[Spin.UP], d_down=fields[Spin.DOWN], t=t
    )


def _sphere_coeffs(
    packet: SpinorPacket, component: Spin, r_fixed: float
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    ls, ms, amps = _component_terms(packet, component)
    coefs = amps * np.array([radial(int(l), r_fixed) for l in ls])
    return ls, ms, coefs


def _sphere_density(ls, ms, coefs, theta, phi):
    """|Psi_comp(r_fixed, theta, phi)|^2 broadcast over theta x phi."""
    th = np.asarray(theta, float)
    ph = np.asarray(phi, float)
    acc = np.zeros(np.broadcast(th, ph).shape, dtype=complex)
    for l, m, c in zip(ls, ms, coefs):
        acc = acc + c * sph_harm(int(l), int(m), th, ph)
    return np.abs(acc) ** 2


def _fold_to_sphere(theta: float, phi: float) -> Tuple[float, float]:
    theta = theta % (2 * math.pi)
    if theta > math.pi:
        theta = 2 * math.pi - theta
        phi += math.pi
    return theta, phi % (2 * math.pi)


def subpacket_maximum(
    packet: SpinorPacket,
    component: Spin,
    r_fixed: float,
    n_theta: int,
    n_phi: int,
) -> Optional[Tuple[float, float, float]]:
    """Refined maximizer (theta*, phi*, value) of |Psi_comp|^2 at fixed radius.

    Coarse grid argmax, a quadratic subcell estimate from the 3x3
    neighborhood, then a bounded Nelder-Mead polish down to ~1e-8 rad.
    Returns None when the component carries no population.
    """
    if r_fixed <= 0:
        raise ValueError(f"r_fixed must be > 0, got {r_fixed}")
    if n_theta < 32 or n_phi < 32:
        raise ValueError("n_theta and n_phi must be >= 32")
    if packet.component_norm_sq(component) <= _ABSENT_NORM_SQ:
        return None
    ls, ms, coefs = _sphere_coeffs(packet, component, r_fixed)

    theta = np.linspace(0.0, math.pi, n_theta)
    phi = np.linspace(0.0, 2 * math.pi, n_phi, endpoint=False)
    vals = _sphere_density(ls, ms, coefs, theta[:, None], phi[None, :])
    i, j = np.unravel_index(int(np.argmax(vals)), vals.shape)

    dth_cell = theta[1] - theta[0]
    dph_cell = phi[1] - phi[0]
    th0, ph0 = theta[i], phi[j]
    # quadratic subcell estimate, axis by axis (phi wraps; skip theta at poles)
    if 0 < i < n_theta - 1:
        den = vals[i + 1, j] - 2 * vals[i, j] + vals[i - 1, j]
        if den < 0:
            off = -0.5 * (vals[i + 1, j] - vals[i - 1, j]) / den
            th0 += float(np.clip(off, -0.5, 0.5)) * dth_cell
    jm, jp = (j - 1) % n_phi, (j + 1) % n_phi
    den = vals[i, jp] - 2 * vals[i, j] + vals[i, jm]
    if den < 0:
        off = -0.5 * (vals[i, jp] - vals[i, jm]) / den
        ph0 += float(np.clip(off, -0.5, 0.5)) * dph_cell

    def negated(u: np.ndarray) -> float:
        return -float(_sphere_density(ls, ms, coefs, u[0], u[1]))

    res = minimize(
        negated,
        np.array([th0, ph0]),
        method="Nelder-Mead",
        options={
            "xatol": 1e-10,
            "fatol": 1e-16,
            "maxiter": 600,
            "initial_simplex": np.array(
                [
                    [th0, ph0],
                    [th0 + 0.3 * dth_cell, ph0],
                    [th0, ph0 + 0.3 * dph_cell],
                ]
            ),
        },
    )
    th_star, ph_star = _fold_to_sphere(float(res.x[0]), float(res.x[1]))
    value = float(-res.fun)
    # mirror-degenerate twin maxima (equator-symmetric components): report the
    # northern one so tracks do not hop hemispheres between time samples
    if th_star > 0.5 * math.pi:
        mirror = float(_sphere_density(ls, ms, coefs, math.pi - th_star, ph_star))
        if abs(mirror - value) <= 1e-9 * max(abs(value), 1e-300):
            th_star = math.pi - th_star
            value = max(value, mirror)
    return th_star, ph_star, value


def maxima_track(
    packet0: SpinorPacket,
    t_grid: Sequence[float],
    component: Spin,
    params: ModelParams,
    r_fixed: Optional[float] = None,
    n_theta: int = 96,
    n_phi: int = 192,
    workers: int = 1,
) -> SphereTrack:
    """Subpacket maxima on the classical-orbit sphere along a time grid."""
    t_arr = np.asarray(list(t_grid), dtype=float)
    if np.any(np.diff(t_arr) <= 0):
        raise ValueError("t_grid must be strictly increasing")
    radius = classical_orbit_radius(params.n_mean) if r_fixed is None else r_fixed
    coupled0 = to_coupled(packet0)
    t_ls = params.t_ls

    def at_time(t: float):
        p = packet0 if t == 0.0 else from_coupled(evolve_coupled(coupled0, t, params))
        return subpacket_maximum(p, component, radius, n_theta, n_phi)

    if workers > 1 and len(t_arr) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(at_time, [float(t) for t in t_arr]))
    else:
        results = [at_time(float(t)) for t in t_arr]

    track = SphereTrack()
    for t, res in zip(t_arr, results):
        if res is None:
            continue
        th, ph, val = res
        t_over = float(t) / t_ls if math.isfinite(t_ls) else 0.0
        track.rows.append(TrackPoint(float(t), t_over, component, th, ph, val))
    return track
