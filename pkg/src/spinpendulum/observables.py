"""Expectation values <s>, <l>, <j> and norm from a spinor packet.

All matrix elements are analytic in the decoupled basis; spatial
orthonormality makes every operator here diagonal in l, so no quadrature is
involved and each time point costs O(l_max).

The transverse spin sum runs over same-l, same-m_l up/down pairs only; the
cross-l terms one might be tempted to add vanish by orthogonality of the
radial functions, and the dense-matrix oracle pins this down in the tests.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence, Tuple

import numpy as np

from .angular import ladder_coeff
from .basis import BasisState, Spin
from .model import ModelParams
from .packet import SpinorPacket
from .propagator import evolve_coupled, from_coupled, to_coupled


class Vec3(NamedTuple):
    x: float
    y: float
    z: float

    def __add__(self, other: "Vec3") -> "Vec3":  # type: ignore[override]
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)


def spin_expectation(packet: SpinorPacket) -> Vec3:
    """<s> of a normalized packet.

    s_z from populations; s_x + i s_y = sum over (l, m_l) of
    conj(a_up) * a_down at the same orbital label.
    """
    s_z = 0.0
    s_plus = 0j
    amps = packet.amplitudes
    for state, a in amps.items():
        if state.spin is Spin.UP:
            s_z += 0.5 * abs(a) ** 2
            partner = amps.get(BasisState(state.l, state.m_l, Spin.DOWN))
            if partner is not None:
                s_plus += np.conj(a) * partner
        else:
            s_z -= 0.5 * abs(a) ** 2
    return Vec3(float(s_plus.real), float(s_plus.imag), s_z)


def orbital_expectation(packet: SpinorPacket) -> Vec3:
    """<l> of a normalized packet, via populations and the l+ ladder."""
    l_z = 0.0
    l_plus = 0j
    amps = packet.amplitudes
    for state, a in amps.items():
        l_z += state.m_l * abs(a) ** 2
        if state.m_l < state.l:
            partner = amps.get(BasisState(state.l, state.m_l + 1, state.spin))
            if partner is not None:
                l_plus += ladder_coeff(state.l, state.m_l) * np.conj(partner) * a
    return Vec3(float(l_plus.real), float(l_plus.imag), l_z)


def total_expectation(packet: SpinorPacket) -> Vec3:
    """<j> = <l> + <s>, exact by linearity."""
    return orbital_expectation(packet) + spin_expectation(packet)


@dataclass
class ObservableSeries:
    """Time series of <s>, <l>, <j> and norm; j = s + l componentwise."""

    t: np.ndarray           # (N,)
    t_over_tls: np.ndarray  # (N,)
    s: np.ndarray           # (N, 3)
    l: np.ndarray           # (N, 3)
    j: np.ndarray           # (N, 3)
    norm: np.ndarray        # (N,)

    def __len__(self) -> int:
        return len(self.t)

    def rows(self) -> Iterator[Tuple[float, ...]]:
        """Flat rows (t, t/T_ls, sx, sy, sz, lx, ly, lz, jx, jy, jz, norm)."""
        for i in range(len(self.t)):
            yield (
                float(self.t[i]),
                float(self.t_over_tls[i]),
                *(float(v) for v in self.s[i]),
                *(float(v) for v in self.l[i]),
                *(float(v) for v in self.j[i]),
                float(self.norm[i]),
            )


def series(packet0: SpinorPacket, t_grid: Sequence[float], params: ModelParams) -> ObservableSeries:
    """Expectations along a sorted time grid.

    The coupled decomposition of packet0 is computed once and rephased per
    time point, which is identical to calling propagate at each t.
    """
    t_arr = np.asarray(list(t_grid), dtype=float)
    if np.any(np.diff(t_arr) <= 0):
        raise ValueError("t_grid must be strictly increasing")
    n = len(t_arr)
    s = np.empty((n, 3))
    l = np.empty((n, 3))
    norm = np.empty(n)
    coupled0 = to_coupled(packet0)
    for i, t in enumerate(t_arr):
        # t = 0 skips the basis round trip so exact zeros stay exact
        p = packet0 if t == 0.0 else from_coupled(evolve_coupled(coupled0, float(t), params))
        s[i] = spin_expectation(p)
        l[i] = orbital_expectation(p)
        norm[i] = p.norm()
    t_ls = params.t_ls
    t_over = t_arr / t_ls if np.isfinite(t_ls) else np.zeros_like(t_arr)
    return ObservableSeries(t=t_arr, t_over_tls=t_over, s=s, l=l, j=s + l, norm=norm)
