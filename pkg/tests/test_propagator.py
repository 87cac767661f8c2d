"""Coupled-basis spectral propagation.

Independent oracle inside this file: the two-level beat of a single state
|l, l, down>.  Decomposing onto the j branches and rephasing by hand gives
  P_up(t) = 8 l / (2l+1)^2 * sin^2(Omega_l t / 2),  Omega_l = kappa (2l+1)/2,
with the up population living on (l, l-1, up).  This uses only the frozen
branch amplitudes sqrt(1/(2l+1)) and sqrt(2l/(2l+1)).
"""
import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spinpendulum.basis import BasisState, Spin
from spinpendulum.model import JBranch, ModelParams, energy
from spinpendulum.packet import SpinorPacket, make_params
from spinpendulum.propagator import evolve_coupled, from_coupled, propagate, to_coupled

PARAMS = ModelParams(n_mean=2.0, kappa=0.3, l_max=6)


def _random_packet(seed: int, l_max: int = 5) -> SpinorPacket:
    rng = np.random.default_rng(seed)
    amps = {}
    for l in range(l_max + 1):
        for m in range(-l, l + 1):
            for spin in (Spin.UP, Spin.DOWN):
                if rng.uniform() < 0.4:
                    amps[BasisState(l, m, spin)] = complex(rng.normal(), rng.normal())
    if not amps:
        amps[BasisState(0, 0, Spin.UP)] = 1.0 + 0j
    return SpinorPacket(amps, l_max).normalized()


@pytest.mark.parametrize("seed", range(8))
def test_coupled_round_trip(seed):
    packet = _random_packet(seed)
    back = from_coupled(to_coupled(packet))
    # populated amplitudes come back to 1e-14; unpopulated partner slots may
    # pick up rounding residue but never above 1e-15
    for state, amp in packet.amplitudes.items():
        assert back.amplitudes.get(state, 0j) == pytest.approx(amp, abs=1e-14)
    for state, amp in back.amplitudes.items():
        if state not in packet.amplitudes:
            assert abs(amp) < 1e-15


@pytest.mark.parametrize("seed", range(4))
def test_coupled_norm_preserved(seed):
    packet = _random_packet(seed)
    coupled = to_coupled(packet)
    assert coupled.norm() == pytest.approx(packet.norm(), rel=1e-13)


def test_evolve_identity_at_t_zero():
    packet = _random_packet(3)
    out = propagate(packet, 0.0, PARAMS)
    for state, amp in packet.amplitudes.items():
        assert out.amplitudes[state] == pytest.approx(amp, abs=1e-15)


@settings(max_examples=30)
@given(t=st.floats(min_value=-50.0, max_value=50.0), seed=st.integers(0, 5))
def test_propagation_unitary(t, seed):
    packet = _random_packet(seed)
    out = propagate(packet, t, PARAMS)
    assert out.norm() == pytest.approx(packet.norm(), abs=1e-13)


@pytest.mark.parametrize("seed", range(3))
def test_propagation_composes(seed):
    packet = _random_packet(seed)
    t1, t2 = 1.7, 4.3
    once = propagate(packet, t1 + t2, PARAMS)
    twice = propagate(propagate(packet, t1, PARAMS), t2, PARAMS)
    for state, amp in once.amplitudes.items():
        assert twice.amplitudes[state] == pytest.approx(amp, abs=1e-13)


@pytest.mark.parametrize("l", [1, 3, 6])
def test_stretched_state_is_stationary(l):
    packet = SpinorPacket({BasisState(l, l, Spin.UP): 1.0 + 0j}, PARAMS.l_max)
    t = 7.31
    out = propagate(packet, t, PARAMS)
    assert set(out.amplitudes) == {BasisState(l, l, Spin.UP)}
    phase = cmath.exp(-1j * energy(l, JBranch.PLUS, PARAMS) * t)
    assert out.amplitudes[BasisState(l, l, Spin.UP)] == pytest.approx(phase, abs=1e-13)


@pytest.mark.parametrize("l", [1, 2, 4, 6])
def test_two_level_beat_oracle(l):
    packet = SpinorPacket({BasisState(l, l, Spin.DOWN): 1.0 + 0j}, PARAMS.l_max)
    omega = PARAMS.kappa * (2 * l + 1) / 2
    up_state = BasisState(l, l - 1, Spin.UP)
    for t in np.linspace(0.0, 3 * 2 * math.pi / omega, 17):
        out = propagate(packet, float(t), PARAMS)
        p_up = abs(out.amplitudes.get(up_state, 0j)) ** 2
        expected = 8 * l / (2 * l + 1) ** 2 * math.sin(omega * t / 2) ** 2
        assert p_up == pytest.approx(expected, abs=1e-12)
        # no other state may be populated
        allowed = {BasisState(l, l, Spin.DOWN), up_state}
        assert set(out.amplitudes) <= allowed


def test_propagate_independent_of_l_max_padding():
    amps = {BasisState(2, 1, Spin.DOWN): 0.6 + 0j, BasisState(3, -2, Spin.UP): 0.8j}
    small = ModelParams(n_mean=1.0, kappa=0.25, l_max=3)
    big = ModelParams(n_mean=1.0, kappa=0.25, l_max=11)
    out_small = propagate(SpinorPacket(dict(amps), 3), 2.9, small)
    out_big = propagate(SpinorPacket(dict(amps), 11), 2.9, big)
    for state, amp in out_small.amplitudes.items():
        assert out_big.amplitudes[state] == pytest.approx(amp, abs=1e-14)


def test_make_params_spectral_consistency():
    params = make_params(4.0, ratio=2.0)
    split = energy(4, JBranch.PLUS, params) - energy(4, JBranch.MINUS, params)
    assert split == pytest.approx(params.omega_ls, rel=1e-13)  # l = n_mean multiplet
