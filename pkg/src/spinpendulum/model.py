"""Physical parameters and level spectrum of the oscillator + spin-orbit model.

The Hamiltonian is

    H = omega0 * (n + 3/2) + kappa * (l . s)

restricted to nodeless radial states (n_r = 0, so n = l).  Natural units
hbar = m = b = 1 throughout; l . s is dimensionless, its hbar^2 carried by
kappa, which therefore has units of frequency like omega0.

The pendulum frequency omega_ls is the spin-orbit splitting of the dominant
l = n_mean multiplet, kappa * (n_mean + 1/2); a single-multiplet packet is
exactly periodic with period t_ls = 2*pi/omega_ls.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class JBranch(Enum):
    """The two spin-orbit partners j = l +/- 1/2 of an l multiplet."""

    PLUS = +1
    MINUS = -1

    def j(self, l: int) -> float:
        """Total angular momentum j for this branch of multiplet l."""
        if self is JBranch.MINUS:
            if l < 1:
                raise ValueError("branch j = l - 1/2 requires l >= 1")
            return l - 0.5
        return l + 0.5


def ls_eigenvalue(l: int, branch: JBranch) -> float:
    """Eigenvalue of l . s on the j = l +/- 1/2 branch.

    From 2 l.s = j(j+1) - l(l+1) - 3/4: equals l/2 on the upper branch and
    -(l+1)/2 on the lower one.
    """
    if l < 0:
        raise ValueError(f"l must be >= 0, got {l}")
    if branch is JBranch.MINUS:
        if l < 1:
            raise ValueError("branch j = l - 1/2 does not exist for l = 0")
        return -(l + 1) / 2.0
    return l / 2.0


def energy(l: int, branch: JBranch, params: "ModelParams") -> float:
    """Level energy omega0*(l + 3/2) + kappa * ls_eigenvalue for a nodeless state.

    The splitting energy(l, PLUS) - energy(l, MINUS) is kappa*(2l+1)/2.
    """
    return params.omega0 * (l + 1.5) + params.kappa * ls_eigenvalue(l, branch)


def kappa_for_ratio(omega0: float, ratio: float, n_mean: float) -> float:
    """Coupling strength giving omega0/omega_ls = ratio for mean quanta n_mean.

    With omega_ls = kappa*(n_mean + 1/2) this is kappa = omega0/(ratio*(n_mean + 1/2)).
    """
    if ratio <= 0:
        raise ValueError(f"ratio must be > 0, got {ratio}")
    if n_mean < 0:
        raise ValueError(f"n_mean must be >= 0, got {n_mean}")
    return omega0 / (ratio * (n_mean + 0.5))


@dataclass(frozen=True)
class ModelParams:
    """Model constants for one run.

    n_mean     mean oscillator quanta of the packet (Poisson mean)
    kappa      spin-orbit strength, units 1/time
    l_max      basis truncation; retained Poisson mass must be >= 1 - weight_tol
    omega0     oscillator frequency, units 1/time
    weight_tol truncation mass tolerance used when l_max was chosen
    """

    n_mean: float
    kappa: float
    l_max: int
    omega0: float = 1.0
    weight_tol: float = 1e-12

    def __post_init__(self) -> None:
        if self.n_mean < 0:
            raise ValueError(f"n_mean must be >= 0, got {self.n_mean}")
        if self.omega0 <= 0:
            raise ValueError(f"omega0 must be > 0, got {self.omega0}")
        if self.l_max < 0:
            raise ValueError(f"l_max must be >= 0, got {self.l_max}")
        if not 0.0 < self.weight_tol < 1.0:
            raise ValueError(f"weight_tol must lie in (0, 1), got {self.weight_tol}")

    @property
    def length_scale(self) -> float:
        """Oscillator length b; unity in natural units."""
        return 1.0

    @property
    def omega_ls(self) -> float:
        """Pendulum frequency kappa*(n_mean + 1/2)."""
        return self.kappa * (self.n_mean + 0.5)

    @property
    def t_ls(self) -> float:
        """Pendulum period 2*pi/omega_ls (inf for kappa = 0)."""
        w = self.omega_ls
        return math.inf if w == 0.0 else 2.0 * math.pi / w
