"""Angular-momentum algebra for coupling one orbital l to spin 1/2.

Closed-form Clebsch-Gordan coefficients in the Condon-Shortley convention,
with the minus sign of the lower branch placed on the spin-up component, and
the l+ ladder matrix element.  Closed forms are exact to machine precision
for the l <= ~60 this model needs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .model import JBranch


@dataclass(frozen=True)
class CgPair:
    """Coefficients of |m_l = m_j - 1/2>|up> and |m_l = m_j + 1/2>|down>.

    Each pair is one row of an orthogonal 2x2 matrix over the two j branches.
    """

    up_coeff: float
    down_coeff: float


def _require_half_integer(m_j: float) -> None:
    twice = 2.0 * m_j
    if twice != round(twice) or round(twice) % 2 == 0:
        raise ValueError(f"m_j must be a half-odd-integer, got {m_j}")


def cg(l: int, m_j: float, branch: JBranch) -> CgPair:
    """Clebsch-Gordan pair <l, m_l; 1/2, m_s | j, m_j> for j = l +/- 1/2."""
    if l < 0:
        raise ValueError(f"l must be >= 0, got {l}")
    _require_half_integer(m_j)
    j = branch.j(l)  # validates the branch for l = 0
    if abs(m_j) > j:
        raise ValueError(f"|m_j| = {abs(m_j)} exceeds j = {j} for l = {l}")
    a = math.sqrt((l + m_j + 0.5) / (2 * l + 1))
    b = math.sqrt((l - m_j + 0.5) / (2 * l + 1))
    if branch is JBranch.PLUS:
        return CgPair(a, b)
    return CgPair(-b, a)


def ladder_coeff(l: int, m: int) -> float:
    """Matrix element <l, m+1| l+ |l, m> = sqrt(l(l+1) - m(m+1))."""
    if abs(m) > l:
        raise ValueError(f"|m| = {abs(m)} exceeds l = {l}")
    return math.sqrt(l * (l + 1) - m * (m + 1))
