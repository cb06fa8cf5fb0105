"""Kazhdan-Lusztig polynomials, the c-basis structure constants and gamma.

Conventions: ``H`` has basis ``T_w`` with ``(T_s + 1)(T_s - v^2) = 0`` and
``c_w = v^{-l(w)} sum_y P_{y,w}(v^2) T_y``, so ``c_s = v^{-1} T_s + v^{-1}``.

Laurent polynomials are held internally as dense ``int64`` arrays with a fixed
offset: slot ``k`` holds the coefficient of ``v^(k - offset)``.  All integer
work is exact; an overflow guard aborts long before ``int64`` could wrap.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np
from scipy import sparse

from .coxeter import CoxeterGroup
from .laurent import LaurentPoly

__all__ = ["KazhdanLusztig", "StructuralError"]

_GUARD = 2**60
# full h tensors up to this many integers are kept in memory
_FULL_TABLE_LIMIT = 30_000_000


class StructuralError(RuntimeError):
    """An invariant guaranteed by the theory failed; signals a bug upstream."""


class KazhdanLusztig:
    """KL data for one finite Coxeter group, computed lazily and cached."""

    def __init__(self, group: CoxeterGroup):
        self.group = group
        self.n = group.order
        self.L = int(group.length[group.w0])
        # h-polynomials have degrees in [-L, L]; one spare slot on each side
        self.offset = self.L + 1
        self.width = 2 * self.L + 3
        self._slabs: dict[int, np.ndarray] = {}

    # ------------------------------------------------------------------
    # KL polynomials
    # ------------------------------------------------------------------
    @cached_property
    def _p_and_mu(self):
        g = self.group
        n = self.n
        dq = self.L // 2 + 2
        P = np.zeros((n, n, dq), dtype=np.int64)
        MU = np.zeros((n, n), dtype=np.int64)
        P[np.arange(n), np.arange(n), 0] = 1
        lengths = g.length
        for w in range(1, n):
            s = g.words[w][0]
            v = int(g.left[s, w])
            sx = g.left[s]
            down = g.left_descent_mask[s]  # sx < x
            a = P[sx, v]
            b = P[:, v]
            col = np.where(down[:, None], a + _shift(b, 1), _shift(a, 1) + b)
            for z in np.nonzero(MU[:, v])[0]:
                if g.left_descent_mask[s, z]:
                    e = (lengths[w] - lengths[z]) // 2
                    col -= MU[z, v] * _shift(P[:, z], e)
            if np.any(col[:, -1]):
                raise StructuralError("KL polynomial degree exceeded storage")
            P[:, w] = col
            for z in np.nonzero(col.any(axis=1))[0]:
                d = lengths[w] - lengths[z]
                if z != w and d % 2 == 1:
                    MU[z, w] = col[z, (d - 1) // 2]
        return P, MU

    @property
    def P(self) -> np.ndarray:
        """Array ``[y, w, k]``: coefficient of ``q^k`` in ``P_{y,w}``."""
        return self._p_and_mu[0]

    @property
    def mu_upper(self) -> np.ndarray:
        """``mu(y, w)`` for ``y < w`` only (zero elsewhere)."""
        return self._p_and_mu[1]

    @cached_property
    def mu_matrix(self) -> np.ndarray:
        """Symmetrised mu: ``mu(y, w) = mu(w, y)``."""
        return self.mu_upper + self.mu_upper.T

    def kl_poly(self, y: int, w: int) -> LaurentPoly:
        """``P_{y,w}`` as a polynomial in ``q`` (exponents are powers of ``q``)."""
        return LaurentPoly(0, self.P[y, w].tolist())

    def mu(self, y: int, w: int) -> int:
        if y == w:
            raise ValueError("mu(y, y) is undefined")
        return int(self.mu_matrix[y, w])

    @cached_property
    def p_at_one(self) -> np.ndarray:
        """``P_{y,w}(1)``; upper unitriangular in id order."""
        return self.P.sum(axis=2)

    # ------------------------------------------------------------------
    # left multiplication by c_s in the c-basis
    # ------------------------------------------------------------------
    @cached_property
    def cs_action(self) -> list[tuple[np.ndarray, sparse.csr_matrix]]:
        """Per generator: (mask of ``w`` with ``sw < w``, sparse integer part).

        ``c_s c_w = (v + v^-1) c_w`` when ``sw < w``, otherwise
        ``c_{sw} + sum_{z < w, sz < z} mu(z, w) c_z``.
        """
        g = self.group
        out = []
        for s in range(g.rank):
            down = g.left_descent_mask[s]
            rows, cols, vals = [], [], []
            for w in np.nonzero(~down)[0]:
                rows.append(int(g.left[s, w]))
                cols.append(int(w))
                vals.append(1)
                for z in np.nonzero(self.mu_upper[:, w])[0]:
                    if down[z]:
                        rows.append(int(z))
                        cols.append(int(w))
                        vals.append(int(self.mu_upper[z, w]))
            a = sparse.csr_matrix((vals, (rows, cols)), shape=(self.n, self.n), dtype=np.int64)
            out.append((down, a))
        return out

    def left_edges(self) -> list[tuple[int, int]]:
        """Pairs ``(w, y)`` with ``h_{s,w,y} != 0`` for some ``s``."""
        edges = set()
        for down, a in self.cs_action:
            for w in np.nonzero(down)[0]:
                edges.add((int(w), int(w)))
            coo = a.tocoo()
            for y, w in zip(coo.row, coo.col):
                edges.add((int(w), int(y)))
        return sorted(edges)

    @cached_property
    def _recipe(self):
        """For each ``x != e``: (s, x' = sx, [(z, mu(z, x'))]) so that
        ``c_x = c_s c_{x'} - sum mu(z, x') c_z``."""
        g = self.group
        recipe = [None]
        for x in range(1, self.n):
            s = g.words[x][0]
            xp = int(g.left[s, x])
            corr = [
                (int(z), int(self.mu_upper[z, xp]))
                for z in np.nonzero(self.mu_upper[:, xp])[0]
                if g.left_descent_mask[s, z]
            ]
            recipe.append((s, xp, corr))
        return recipe

    def _apply_cs(self, s: int, y: np.ndarray) -> np.ndarray:
        """``c_s * y`` where ``y`` has shape ``(n, m, width)`` in the c-basis."""
        down, a = self.cs_action[s]
        n, m, k = y.shape
        out = (a @ y.reshape(n, m * k)).reshape(n, m, k)
        yd = y[down]
        if np.any(yd[..., 0]) or np.any(yd[..., -1]):
            raise StructuralError("h-polynomial degree exceeded storage")
        out[down, :, 1:] += yd[..., :-1]
        out[down, :, :-1] += yd[..., 1:]
        return out

    # ------------------------------------------------------------------
    # structure constants h_{x,y,z}
    # ------------------------------------------------------------------
    def _compute_chunk(self, ys: list[int]) -> np.ndarray:
        """Array ``[x, z, j, k]`` = coefficient of ``v^(k-offset)`` in ``h_{x, ys[j], z}``."""
        n, m, k = self.n, len(ys), self.width
        H = np.zeros((n, n, m, k), dtype=np.int64)
        H[0, ys, np.arange(m), self.offset] = 1
        for x in range(1, n):
            s, xp, corr = self._recipe[x]
            acc = self._apply_cs(s, H[xp])
            for z, mu in corr:
                acc -= mu * H[z]
            H[x] = acc
        if H.min() < 0:
            bad = np.argwhere(H < 0)[0]
            raise StructuralError(f"negative coefficient in h_{{{bad[0]},{ys[bad[2]]},{bad[1]}}}")
        if H.max() > _GUARD:
            raise OverflowError("h coefficients too large for int64 storage")
        return H

    def _chunks(self):
        n = self.n
        per_y = n * n * self.width
        m = max(1, min(n, 8_000_000 // per_y))
        for start in range(0, n, m):
            ys = list(range(start, min(n, start + m)))
            yield ys, self._compute_chunk(ys)

    @cached_property
    def _scan(self):
        """Single pass over all products: a-values, leading coefficients, positivity."""
        n, k = self.n, self.width
        keep_full = n * n * n * k <= _FULL_TABLE_LIMIT
        full = np.zeros((n, n, n, k), dtype=np.int64) if keep_full else None
        topdeg = np.full((n, n, n), -(10**6), dtype=np.int64)
        topcoef = np.zeros((n, n, n), dtype=np.int64)
        for ys, H in self._chunks():
            # H[x, z, j, k] -> [x, j, z, k]
            Ht = np.transpose(H, (0, 2, 1, 3))
            nz = Ht != 0
            has = nz.any(axis=3)
            last = k - 1 - np.argmax(nz[..., ::-1], axis=3)
            deg = last - self.offset
            coef = np.take_along_axis(Ht, last[..., None], axis=3)[..., 0]
            topdeg[:, ys, :] = np.where(has, deg, -(10**6))
            topcoef[:, ys, :] = np.where(has, coef, 0)
            if keep_full:
                full[:, ys] = Ht
        a = topdeg.max(axis=(0, 1))
        return full, topdeg, topcoef, a

    @property
    def a_values(self) -> np.ndarray:
        return self._scan[3]

    def a_value(self, z: int) -> int:
        return int(self.a_values[z])

    def h_array(self, x: int, y: int) -> np.ndarray:
        """Dense array ``[z, k]`` for ``c_x c_y``."""
        full = self._scan[0]
        if full is not None:
            return full[x, y]
        if y not in self._slabs:
            self._slabs[y] = self._compute_chunk([y])[:, :, 0, :]
        return self._slabs[y][x]

    def h(self, x: int, y: int, z: int) -> LaurentPoly:
        return LaurentPoly.from_array(self.h_array(x, y)[z], self.offset)

    def c_product(self, x: int, y: int) -> dict[int, LaurentPoly]:
        arr = self.h_array(x, y)
        return {int(z): LaurentPoly.from_array(arr[z], self.offset) for z in np.nonzero(arr.any(axis=1))[0]}

    def h_at_one(self, x: int, y: int) -> np.ndarray:
        return self.h_array(x, y).sum(axis=1)

    @cached_property
    def leading(self) -> np.ndarray:
        """``[x, y, z]``: coefficient of ``v^{a(z)}`` in ``h_{x,y,z}``, i.e. ``gamma_{x,y,z^-1}``.

        This is the structure tensor of J: ``t_x t_y = sum_z leading[x, y, z] t_z``.
        """
        _, topdeg, topcoef, a = self._scan
        return np.where(topdeg == a[None, None, :], topcoef, 0)

    @cached_property
    def gamma_table(self) -> np.ndarray:
        """``[x, y, z] -> gamma_{x,y,z}``."""
        return self.leading[:, :, self.group.inverse]

    def gamma(self, x: int, y: int, z: int) -> int:
        return int(self.gamma_table[x, y, z])

    # ------------------------------------------------------------------
    def distinguished_involutions(self, left_cells: list[list[int]]) -> list[int]:
        """One involution per left cell: the unique ``d`` with ``gamma_{x^-1,x,d} != 0`` for all ``x``."""
        inv = self.group.inverse
        gt = self.gamma_table
        out = []
        for cell in left_cells:
            cand = [
                d for d in cell if inv[d] == d and all(gt[inv[x], x, d] != 0 for x in cell)
            ]
            if len(cand) != 1:
                raise StructuralError(f"left cell {cell}: {len(cand)} distinguished candidates")
            d = cand[0]
            if any(gt[inv[x], x, d] != 1 for x in cell):
                raise StructuralError(f"gamma_(x^-1,x,{d}) != 1 in left cell {cell}")
            out.append(d)
        return out

    def dump_gamma(self) -> str:
        """Lines ``"x y z gamma"`` for every nonzero gamma, in id order."""
        gt = self.gamma_table
        return "".join(f"{x} {y} {z} {gt[x, y, z]}\n" for x, y, z in zip(*np.nonzero(gt)))


def _shift(arr: np.ndarray, e: int) -> np.ndarray:
    """Multiply by ``q^e`` (last axis holds exponents)."""
    if e == 0:
        return arr.copy()
    out = np.zeros_like(arr)
    out[..., e:] = arr[..., :-e]
    if np.any(arr[..., -e:]):
        raise StructuralError("degree exceeded storage during shift")
    return out
