"""Dense brute-force cross-check path.

Everything here works in the uncoupled product basis |l, m_l, m_s> with
explicit matrices and a Cayley-form unitary integrator.  No Clebsch-Gordan
coefficients, no branch energies: ladder-operator matrix elements are spelled
out inline, so agreement with the coupled-basis analytic propagator is a real
two-path consistency check, not a tautology.

Dimension is 2*(l_max + 1)^2 (676 at l_max = 17), so dense linear algebra is
cheap: the Cayley step factors (1 + i*H*dt/2) once and back-substitutes per
step.
"""
from __future__ import annotations

import math
from typing import Dict, List, Tuple

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from .basis import BasisState, Spin
from .model import ModelParams
from .packet import SpinorPacket


def enumerate_states(l_max: int) -> List[BasisState]:
    """Product-basis states in fixed (l, m_l, spin up-then-down) order."""
    if l_max < 0:
        raise ValueError(f"l_max must be >= 0, got {l_max}")
    states = []
    for l in range(l_max + 1):
        for m_l in range(-l, l + 1):
            for spin in (Spin.UP, Spin.DOWN):
                states.append(BasisState(l, m_l, spin))
    return states


def state_index(states: List[BasisState]) -> Dict[BasisState, int]:
    return {s: i for i, s in enumerate(states)}


def packet_to_vector(packet: SpinorPacket, states: List[BasisState]) -> np.ndarray:
    index = state_index(states)
    vec = np.zeros(len(states), dtype=complex)
    for state, amp in packet.amplitudes.items():
        if state not in index:
            raise ValueError(f"packet state {state} outside oracle basis (l_max too small)")
        vec[index[state]] = amp
    return vec


def vector_to_packet(vec: np.ndarray, states: List[BasisState], l_max: int) -> SpinorPacket:
    amplitudes = {
        state: complex(a) for state, a in zip(states, vec) if a != 0
    }
    return SpinorPacket(amplitudes=amplitudes, l_max=l_max)


def _ladder(l: int, m: int) -> float:
    # <l, m+1 | l_plus | l, m>
    return math.sqrt(l * (l + 1) - m * (m + 1))


def orbital_matrices(states: List[BasisState]) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Dense (l_x, l_y, l_z) in the product basis."""
    index = state_index(states)
    dim = len(states)
    l_plus = np.zeros((dim, dim), dtype=complex)
    l_z = np.zeros((dim, dim), dtype=complex)
    for s, i in index.items():
        l_z[i, i] = s.m_l
        if s.m_l < s.l:
            up = BasisState(s.l, s.m_l + 1, s.spin)
            l_plus[index[up], i] = _ladder(s.l, s.m_l)
    l_minus = l_plus.conj().T
    return 0.5 * (l_plus + l_minus), -0.5j * (l_plus - l_minus), l_z


def spin_matrices(states: List[BasisState]) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Dense (s_x, s_y, s_z) in the product basis."""
    index = state_index(states)
    dim = len(states)
    s_plus = np.zeros((dim, dim), dtype=complex)
    s_z = np.zeros((dim, dim), dtype=complex)
    for s, i in index.items():
        s_z[i, i] = s.spin.m_s
        if s.spin is Spin.DOWN:
            up = BasisState(s.l, s.m_l, Spin.UP)
            s_plus[index[up], i] = 1.0
    s_minus = s_plus.conj().T
    return 0.5 * (s_plus + s_minus), -0.5j * (s_plus - s_minus), s_z


def build_hamiltonian(params: ModelParams, states: List[BasisState]) -> np.ndarray:
    """omega0*(l + 3/2) + kappa*(l_z s_z + (l_plus s_minus + l_minus s_plus)/2)."""
    index = state_index(states)
    dim = len(states)
    h = np.zeros((dim, dim), dtype=complex)
    for s, i in index.items():
        h[i, i] = params.omega0 * (s.l + 1.5) + params.kappa * s.m_l * s.spin.m_s
        # l_plus s_minus couples (l, m_l, up) -> (l, m_l + 1, down)
        if s.spin is Spin.UP and s.m_l < s.l:
            j = index[BasisState(s.l, s.m_l + 1, Spin.DOWN)]
            elem = 0.5 * params.kappa * _ladder(s.l, s.m_l)
            h[j, i] += elem
            h[i, j] += elem  # Hermitian partner (l_minus s_plus)
    return h


def cayley_propagate(
    h: np.ndarray, psi0: np.ndarray, t_final: float, n_steps: int
) -> np.ndarray:
    """Evolve psi0 to t_final with the exactly unitary Cayley (Crank-Nicolson) map.

    psi <- (1 + i*H*dt/2)^-1 (1 - i*H*dt/2) psi, factored once.
    """
    if n_steps < 1:
        raise ValueError(f"n_steps must be >= 1, got {n_steps}")
    dt = t_final / n_steps
    half = 0.5j * dt * h
    eye = np.eye(h.shape[0], dtype=complex)
    lu = lu_factor(eye + half)
    forward = eye - half
    psi = psi0.astype(complex)
    for _ in range(n_steps):
        psi = lu_solve(lu, forward @ psi)
    return psi


def expectation(mat: np.ndarray, vec: np.ndarray) -> float:
    return float(np.real(np.vdot(vec, mat @ vec)))


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """|<a|b>| with defensive normalization."""
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0 or nb == 0:
        return 0.0
    return float(abs(np.vdot(a, b)) / (na * nb))
