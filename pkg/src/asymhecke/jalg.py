"""The asymptotic ring J, its cell blocks and the maps psi, Psi.

Elements of J are 1-d numpy arrays indexed by element id.  With integer or
``object`` (Fraction) dtypes every operation here is exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .cells import CellPartition
from .kl import StructuralError
from .laurent import LaurentPoly

__all__ = ["JAlgebra"]


def _integer_unitriangular_inverse(m: np.ndarray) -> np.ndarray:
    """Inverse of an upper unitriangular integer matrix, exactly."""
    n = m.shape[0]
    inv = np.eye(n, dtype=np.int64)
    for i in range(n - 2, -1, -1):
        inv[i] -= m[i, i + 1 :] @ inv[i + 1 :]
        if np.abs(inv[i]).max() > 2**52:
            raise OverflowError("triangular inverse too large for int64")
    return inv


class JAlgebra:
    """Structure constants ``t_x t_y = sum_z gamma_{x,y,z^-1} t_z``."""

    def __init__(self, cells: CellPartition):
        self.cells = cells
        self.kl = cells.kl
        self.group = cells.group
        self.n = self.group.order
        # structure[x, y, z] = coefficient of t_z in t_x t_y
        self.structure = self.kl.leading

    # -- basic algebra ---------------------------------------------------
    def basis(self, x: int, dtype=np.int64) -> np.ndarray:
        e = np.zeros(self.n, dtype=dtype)
        e[x] = 1
        return e

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        st = self.structure
        if a.dtype == object or b.dtype == object:
            st = st.astype(object)
        ab = np.tensordot(a, st, axes=(0, 0))
        return np.tensordot(b, ab, axes=(0, 0))

    def t_mul(self, x: int, y: int) -> np.ndarray:
        return self.structure[x, y].copy()

    def left_matrix(self, u: int) -> np.ndarray:
        """Matrix of ``xi -> t_u xi`` (columns indexed by input basis)."""
        return self.structure[u].T

    def theta(self, a: np.ndarray) -> np.ndarray:
        """Antiautomorphism ``t_x -> t_{x^-1}``."""
        out = np.zeros_like(a)
        out[self.group.inverse] = a
        return out

    @cached_property
    def unit(self) -> np.ndarray:
        return self._unit_of(range(len(self.cells.left_cells)))

    def unit_of_cell(self, c: int) -> np.ndarray:
        lcs = self.cells.left_cells_in(c)
        e = self._unit_of(lcs)
        members = self.cells.two_sided_cells[c]
        for x in members:
            tx = self.basis(x)
            if not (np.array_equal(self.mul(e, tx), tx) and np.array_equal(self.mul(tx, e), tx)):
                raise StructuralError(f"unit of cell {c} fails on t_{x}")
        return e

    def _unit_of(self, left_cells) -> np.ndarray:
        e = np.zeros(self.n, dtype=np.int64)
        for gam in left_cells:
            e[self.cells.delta(gam)] += 1
        return e

    def is_two_sided_unit(self, e: np.ndarray) -> bool:
        st = self.structure
        # e * t_x for all x, and t_x * e for all x
        left = np.tensordot(e, st, axes=(0, 0))
        right = np.tensordot(e, st, axes=(0, 1))
        eye = np.eye(self.n, dtype=np.int64)
        return np.array_equal(left, eye) and np.array_equal(right, eye)

    # -- psi at v = 1 ------------------------------------------------------
    @cached_property
    def _d_mask(self) -> np.ndarray:
        """``[d, z]``: ``d`` distinguished and ``d ~ z`` (same left cell)."""
        mask = np.zeros((self.n, self.n), dtype=bool)
        lid = self.cells.left_id
        for d in self.cells.distinguished:
            mask[d] = lid == lid[d]
        return mask

    @cached_property
    def psi_c(self) -> np.ndarray:
        """Integer matrix ``[z, x]``: coefficient of ``t_z`` in ``psi(c_x)``."""
        n = self.n
        out = np.zeros((n, n), dtype=np.int64)
        for d in self.cells.distinguished:
            mask = self._d_mask[d]
            for x in range(n):
                out[mask, x] += self.kl.h_at_one(x, d)[mask]
        return out

    @cached_property
    def psi_group(self) -> np.ndarray:
        """Integer matrix ``[z, w]``: coefficient of ``t_z`` in ``psi(w)``.

        At ``v = 1``, ``c_w = sum_y P_{y,w}(1) y``; inverting that triangular
        system expresses group elements through the c-basis.
        """
        pinv = _integer_unitriangular_inverse(self.kl.p_at_one)
        return self.psi_c @ pinv

    @cached_property
    def psi_inverse(self) -> np.ndarray:
        """Exact rational matrix ``[w, z]``: coefficient of ``w`` in ``psi^{-1}(t_z)``."""
        dm = DomainMatrix([[QQ(int(v)) for v in row] for row in self.psi_group.tolist()], (self.n, self.n), QQ)
        try:
            inv = dm.inv()
        except Exception as exc:  # sympy raises DMNonInvertibleMatrixError
            raise StructuralError("psi is not invertible") from exc
        rows = inv.to_list()
        return np.array([[Fraction(int(q.numerator), int(q.denominator)) for q in r] for r in rows], dtype=object)

    def psi(self, w: int) -> np.ndarray:
        return self.psi_group[:, w].copy()

    # -- Psi over Laurent polynomials ----------------------------------------
    def Psi_coeffs(self, x: int) -> dict[int, LaurentPoly]:
        """``Psi(c_x) = sum_{d in D, d ~ z} h_{x,d,z} t_z`` as ``{z: h}``."""
        out: dict[int, LaurentPoly] = {}
        for d in self.cells.distinguished:
            arr = self.kl.h_array(x, d)
            for z in np.nonzero(self._d_mask[d] & arr.any(axis=1))[0]:
                out[int(z)] = out.get(int(z), LaurentPoly()) + LaurentPoly.from_array(arr[z], self.kl.offset)
        return out

    def Psi_array(self, x: int) -> np.ndarray:
        """Dense ``[z, k]`` version of :meth:`Psi_coeffs` (kl offset)."""
        out = np.zeros((self.n, self.kl.width), dtype=np.int64)
        for d in self.cells.distinguished:
            arr = self.kl.h_array(x, d)
            out[self._d_mask[d]] += arr[self._d_mask[d]]
        return out

    def laurent_mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Product in ``Z[v, v^-1] ⊗ J`` for dense ``[z, k]`` arrays (offset added twice)."""
        n, k = a.shape
        out = np.zeros((n, 2 * k - 1), dtype=np.int64)
        st = self.structure
        for i in range(k):
            ai = a[:, i]
            if not ai.any():
                continue
            for j in range(k):
                bj = b[:, j]
                if bj.any():
                    out[:, i + j] += np.tensordot(bj, np.tensordot(ai, st, axes=(0, 0)), axes=(0, 0))
        return out
