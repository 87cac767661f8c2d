"""Spin-orbit pendulum: a circular coherent spinor packet in a 3D isotropic
harmonic oscillator with l.s coupling, exchanging spin and orbital angular
momentum at the pendulum frequency omega_ls.

The public surface re-exports the model parameters, packet construction, the
spectral propagator, observable series, real-space densities and the dense
numeric oracle used for cross-checks.
"""
from .angular import CgPair, cg, ladder_coeff
from .basis import BasisState, SpacePoint, Spin, radial, sph_harm
from .density import (
    DensityField,
    SphereTrack,
    TrackPoint,
    classical_orbit_radius,
    eval_spinor,
    maxima_track,
    plane_density,
    subpacket_maximum,
)
from .model import JBranch, ModelParams, energy, kappa_for_ratio, ls_eigenvalue
from .observables import ObservableSeries, Vec3, orbital_expectation, series, spin_expectation, total_expectation
from .packet import (
    SpinDirection,
    SpinorPacket,
    build_packet,
    choose_l_max,
    make_params,
    overlap,
    poisson_amplitudes,
)
from .propagator import CoupledPacket, evolve_coupled, from_coupled, propagate, to_coupled

__version__ = "0.1.0"

__all__ = [
    "BasisState",
    "CgPair",
    "CoupledPacket",
    "DensityField",
    "JBranch",
    "ModelParams",
    "ObservableSeries",
    "SpacePoint",
    "SphereTrack",
    "Spin",
    "SpinDirection",
    "SpinorPacket",
    "TrackPoint",
    "Vec3",
    "build_packet",
    "cg",
    "choose_l_max",
    "classical_orbit_radius",
    "energy",
    "eval_spinor",
    "evolve_coupled",
    "from_coupled",
    "kappa_for_ratio",
    "ladder_coeff",
    "ls_eigenvalue",
    "make_params",
    "maxima_track",
    "orbital_expectation",
    "overlap",
    "plane_density",
    "poisson_amplitudes",
    "propagate",
    "radial",
    "series",
    "spin_expectation",
    "sph_harm",
    "subpacket_maximum",
    "to_coupled",
    "total_expectation",
]
