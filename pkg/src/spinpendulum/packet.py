"""Initial spinor wave packet: circular coherent state tensored with a spin.

The orbital part populates only circular states (n_r = 0, m_l = l) with real
positive Poisson amplitudes w_l, which places the packet at phi = 0 on the
equator.  The spin factor is an arbitrary Bloch direction; spin down
(anti-parallel to <l>) is the interesting default, since the stretched
spin-up packet is a pure j = l + 1/2 state and therefore stationary.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np
from scipy.special import gammaln

from .basis import BasisState, Spin
from .model import ModelParams, kappa_for_ratio

# Spinor components smaller than this (e.g. cos(pi/2) evaluated in floating
# point) are treated as exact zeros so a spin-down packet has no up entries.
_COMPONENT_CLIP = 1e-15


@dataclass(frozen=True)
class SpinDirection:
    """Bloch angles of the initial spin, spinor (cos(t/2), e^{i p} sin(t/2))."""

    theta_s: float
    phi_s: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta_s <= math.pi:
            raise ValueError("theta_s must lie in [0, pi]")
        if not 0.0 <= self.phi_s < 2 * math.pi:
            raise ValueError("phi_s must lie in [0, 2*pi)")

    @staticmethod
    def up() -> "SpinDirection":
        return SpinDirection(0.0)

    @staticmethod
    def down() -> "SpinDirection":
        return SpinDirection(math.pi)

    @property
    def up_component(self) -> complex:
        c = math.cos(self.theta_s / 2)
        return complex(c) if abs(c) > _COMPONENT_CLIP else 0j

    @property
    def down_component(self) -> complex:
        c = math.sin(self.theta_s / 2) * cmath.exp(1j * self.phi_s)
        return c if abs(c) > _COMPONENT_CLIP else 0j


@dataclass
class SpinorPacket:
    """Spinor state as complex amplitudes over decoupled basis states.

    Treated as immutable after construction; shared freely across workers.
    """

    amplitudes: Dict[BasisState, complex] = field(default_factory=dict)
    l_max: int = 0

    def norm(self) -> float:
        return math.sqrt(sum(abs(a) ** 2 for a in self.amplitudes.values()))

    def normalized(self) -> "SpinorPacket":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize a zero packet")
        return SpinorPacket({s: a / n for s, a in self.amplitudes.items()}, self.l_max)

    def component_norm_sq(self, spin: Spin) -> float:
        """Population of one spinor component."""
        return sum(abs(a) ** 2 for s, a in self.amplitudes.items() if s.spin is spin)


def overlap(a: SpinorPacket, b: SpinorPacket) -> complex:
    """Inner product <a|b> over the decoupled basis."""
    if len(b.amplitudes) < len(a.amplitudes):
        return complex(np.conj(overlap(b, a)))
    return sum(np.conj(amp) * b.amplitudes.get(s, 0j) for s, amp in a.amplitudes.items())


def poisson_amplitudes(n_mean: float, l_max: int) -> np.ndarray:
    """Coherent-state amplitudes w_l = exp(-n/2) n^{l/2} / sqrt(l!), l = 0..l_max.

    The squares are the Poisson pmf with mean n_mean; evaluated in log space.
    """
    if n_mean < 0:
        raise ValueError(f"n_mean must be >= 0, got {n_mean}")
    if l_max < 0:
        raise ValueError(f"l_max must be >= 0, got {l_max}")
    ls = np.arange(l_max + 1)
    if n_mean == 0.0:
        w = np.zeros(l_max + 1)
        w[0] = 1.0
        return w
    log_w = -0.5 * n_mean + 0.5 * ls * math.log(n_mean) - 0.5 * gammaln(ls + 1.0)
    return np.exp(log_w)


def choose_l_max(n_mean: float, weight_tol: float) -> int:
    """Smallest truncation whose retained Poisson mass is >= 1 - weight_tol."""
    if not 0.0 < weight_tol < 1.0:
        raise ValueError(f"weight_tol must lie in (0, 1), got {weight_tol}")
    if n_mean < 0:
        raise ValueError(f"n_mean must be >= 0, got {n_mean}")
    if n_mean == 0.0:
        return 0
    target = 1.0 - weight_tol
    mass = 0.0
    # generous scan bound; the Poisson tail is long gone by here
    for l in range(int(n_mean + 60 * math.sqrt(n_mean) + 200) + 1):
        mass += math.exp(-n_mean + l * math.log(n_mean) - gammaln(l + 1.0))
        if mass >= target:
            return l
    raise RuntimeError("Poisson mass scan failed to converge")


def make_params(
    n_mean: float,
    *,
    kappa: Optional[float] = None,
    ratio: Optional[float] = None,
    omega0: float = 1.0,
    weight_tol: float = 1e-12,
    l_max: Optional[int] = None,
) -> ModelParams:
    """Assemble ModelParams from either kappa directly or the omega0/omega_ls ratio."""
    if (kappa is None) == (ratio is None):
        raise ValueError("specify exactly one of kappa and ratio")
    if kappa is None:
        kappa = kappa_for_ratio(omega0, ratio, n_mean)
    if l_max is None:
        l_max = choose_l_max(n_mean, weight_tol)
    return ModelParams(n_mean=n_mean, kappa=kappa, l_max=l_max, omega0=omega0, weight_tol=weight_tol)


def build_packet(params: ModelParams, spin: SpinDirection) -> SpinorPacket:
    """Circular coherent packet of mean quanta n_mean with the given spin.

    Amplitudes (-1)^l w_l * cos(theta_s/2) on (l, m_l=l, up) and
    (-1)^l w_l * e^{i phi_s} sin(theta_s/2) on (l, m_l=l, down), renormalized
    to exactly 1 after truncation at params.l_max.  The (-1)^l cancels the
    Condon-Shortley phase of Y_{l,l}, so the t=0 density rides the classical
    orbit at azimuth phi = 0.
    """
    w = poisson_amplitudes(params.n_mean, params.l_max)
    c_up = spin.up_component
    c_down = spin.down_component
    amps: Dict[BasisState, complex] = {}
    for l in range(params.l_max + 1):
        if w[l] == 0.0:
            continue
        a_l = w[l] if l % 2 == 0 else -w[l]
        if c_up != 0j:
            amps[BasisState(l, l, Spin.UP)] = a_l * c_up
        if c_down != 0j:
            amps[BasisState(l, l, Spin.DOWN)] = a_l * c_down
    return SpinorPacket(amps, params.l_max).normalized()
