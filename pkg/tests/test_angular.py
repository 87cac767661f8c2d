"""Coupling coefficients against independent oracles.

Frozen Condon-Shortley values (standard l x 1/2 tables):
  l=1, m_j=+1/2, j=3/2:  ( sqrt(2/3), sqrt(1/3))
  l=1, m_j=+1/2, j=1/2:  (-sqrt(1/3), sqrt(2/3))
  l=4, m_j=+7/2, j=9/2:  ( sqrt(8/9), sqrt(1/9))
  l=4, m_j=+7/2, j=7/2:  (-sqrt(1/9), sqrt(8/9))

Independent structural oracle: within one (l, m_j) block the operator l.s is
the explicit 2x2 matrix
  [[ (m_j - 1/2)/2,            sqrt((l+1/2)^2 - m_j^2)/2 ],
   [ sqrt((l+1/2)^2 - m_j^2)/2,  -(m_j + 1/2)/2          ]]
in the ordered basis (|m_l = m_j-1/2, up>, |m_l = m_j+1/2, down>); the cg
columns must be its eigenvectors with eigenvalues l/2 and -(l+1)/2.
"""
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spinpendulum.angular import cg, ladder_coeff
from spinpendulum.model import JBranch

FROZEN = [
    (1, 0.5, JBranch.PLUS, math.sqrt(2 / 3), math.sqrt(1 / 3)),
    (1, 0.5, JBranch.MINUS, -math.sqrt(1 / 3), math.sqrt(2 / 3)),
    (1, 1.5, JBranch.PLUS, 1.0, 0.0),
    (1, -1.5, JBranch.PLUS, 0.0, 1.0),
    (4, 3.5, JBranch.PLUS, math.sqrt(8 / 9), math.sqrt(1 / 9)),
    (4, 3.5, JBranch.MINUS, -math.sqrt(1 / 9), math.sqrt(8 / 9)),
]


def test_cg_frozen_values():
    for l, m_j, branch, up, down in FROZEN:
        pair = cg(l, m_j, branch)
        assert pair.up_coeff == pytest.approx(up, abs=1e-15)
        assert pair.down_coeff == pytest.approx(down, abs=1e-15)


def _ls_block(l: int, m_j: float) -> np.ndarray:
    off = 0.5 * math.sqrt((l + 0.5) ** 2 - m_j**2)
    return np.array(
        [[0.5 * (m_j - 0.5), off], [off, -0.5 * (m_j + 0.5)]]
    )


@pytest.mark.parametrize("l", range(1, 13))
def test_cg_columns_are_ls_eigenvectors(l):
    for k in range(2 * l):
        m_j = -l + 0.5 + k  # interior m_j where both branches exist
        block = _ls_block(l, m_j)
        plus = np.array([cg(l, m_j, JBranch.PLUS).up_coeff, cg(l, m_j, JBranch.PLUS).down_coeff])
        minus = np.array([cg(l, m_j, JBranch.MINUS).up_coeff, cg(l, m_j, JBranch.MINUS).down_coeff])
        assert np.allclose(block @ plus, (l / 2) * plus, atol=1e-13)
        assert np.allclose(block @ minus, (-(l + 1) / 2) * minus, atol=1e-13)
        # orthonormal with det +1 (proper rotation of the block)
        assert plus @ plus == pytest.approx(1.0, abs=1e-14)
        assert minus @ minus == pytest.approx(1.0, abs=1e-14)
        assert plus @ minus == pytest.approx(0.0, abs=1e-14)
        det = plus[0] * minus[1] - plus[1] * minus[0]
        assert det == pytest.approx(1.0, abs=1e-13)


def test_cg_stretched_edges():
    for l in (1, 3, 7):
        top = cg(l, l + 0.5, JBranch.PLUS)
        assert (top.up_coeff, top.down_coeff) == (1.0, 0.0)
        bottom = cg(l, -l - 0.5, JBranch.PLUS)
        assert (bottom.up_coeff, bottom.down_coeff) == (0.0, 1.0)


def test_cg_errors():
    with pytest.raises(ValueError):
        cg(1, 1.0, JBranch.PLUS)  # not half-odd-integer
    with pytest.raises(ValueError):
        cg(1, 2.5, JBranch.PLUS)  # |m_j| > j
    with pytest.raises(ValueError):
        cg(2, 2.5, JBranch.MINUS)  # outside j = 3/2
    with pytest.raises(ValueError):
        cg(0, 0.5, JBranch.MINUS)  # branch absent at l = 0
    with pytest.raises(ValueError):
        cg(-1, 0.5, JBranch.PLUS)


@given(st.integers(min_value=0, max_value=40), st.integers(min_value=0, max_value=80))
def test_cg_normalization_property(l, k):
    m_j = -l - 0.5 + k
    if abs(m_j) > l + 0.5:
        return
    pair = cg(l, m_j, JBranch.PLUS)
    assert pair.up_coeff**2 + pair.down_coeff**2 == pytest.approx(1.0, abs=1e-13)


def test_ladder_coeff_frozen():
    assert ladder_coeff(1, 0) == pytest.approx(math.sqrt(2), rel=1e-15)
    assert ladder_coeff(4, 3) == pytest.approx(math.sqrt(8), rel=1e-15)
    assert ladder_coeff(4, -4) == pytest.approx(math.sqrt(8), rel=1e-15)
    assert ladder_coeff(3, 3) == 0.0


def test_ladder_coeff_errors():
    with pytest.raises(ValueError):
        ladder_coeff(2, 3)
