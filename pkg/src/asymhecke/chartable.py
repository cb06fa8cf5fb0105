"""Character tables of finite groups given by a multiplication table.

Burnside-Dixon-Schneider: the class-sum multiplication matrices commute and
their common eigenvectors are the central characters.  A random real
combination of them has simple spectrum, so one eigendecomposition separates
all irreducibles.  Values are complex floats; callers round when they know
the table is rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = ["CharacterTable", "character_table", "conjugacy_classes"]


def conjugacy_classes(mult: np.ndarray) -> list[list[int]]:
    """Classes of the group with table ``mult`` (identity must be index 0)."""
    n = mult.shape[0]
    inv = np.argmin(mult != 0, axis=1)  # mult[x, inv[x]] == 0
    seen = np.zeros(n, dtype=bool)
    classes = []
    for x in range(n):
        if seen[x]:
            continue
        conj = np.unique(mult[mult[np.arange(n), x], inv])  # g x g^-1
        seen[conj] = True
        classes.append(sorted(int(c) for c in conj))
    return classes


@dataclass
class CharacterTable:
    """Rows are irreducible characters, columns conjugacy classes."""

    classes: list[list[int]]
    values: np.ndarray  # complex, shape (r, r)

    @property
    def order(self) -> int:
        return sum(len(c) for c in self.classes)

    @property
    def sizes(self) -> np.ndarray:
        return np.array([len(c) for c in self.classes])

    @property
    def degrees(self) -> np.ndarray:
        return np.rint(self.values[:, 0].real).astype(int)

    @cached_property
    def class_of(self) -> np.ndarray:
        lab = np.empty(self.order, dtype=int)
        for i, c in enumerate(self.classes):
            lab[c] = i
        return lab

    @property
    def is_rational(self) -> bool:
        return bool(np.allclose(self.values, np.rint(self.values.real), atol=1e-9))

    def integer_values(self) -> np.ndarray:
        if not self.is_rational:
            raise ValueError("character table has irrational values")
        return np.rint(self.values.real).astype(int)

    def inner(self, chi, psi) -> complex:
        """``<chi, psi>`` for class functions given as arrays over classes."""
        chi = np.asarray(chi, dtype=complex)
        psi = np.asarray(psi, dtype=complex)
        return complex(np.sum(self.sizes * chi * np.conj(psi)) / self.order)

    def decompose(self, chi, tol: float = 1e-6) -> np.ndarray:
        """Integer multiplicities of the irreducibles in ``chi``."""
        mult = np.array([self.inner(chi, row) for row in self.values])
        rounded = np.rint(mult.real)
        if np.abs(mult - rounded).max() > tol:
            raise ValueError(f"class function is not a virtual character: {mult}")
        return rounded.astype(int)

    def element_values(self, row: int) -> np.ndarray:
        """Character ``row`` as a function on elements."""
        return self.values[row][self.class_of]

    def check_orthogonality(self, tol: float = 1e-8) -> bool:
        gram = np.array([[self.inner(a, b) for b in self.values] for a in self.values])
        return bool(np.abs(gram - np.eye(len(gram))).max() < tol)


def character_table(mult: np.ndarray, classes: list[list[int]] | None = None, seed: int = 1) -> CharacterTable:
    """Irreducible characters from the multiplication table ``mult[x, y] = xy``.

    Rows are sorted by degree and then by the character values (trivial first).
    """
    mult = np.asarray(mult)
    n = mult.shape[0]
    if classes is None:
        classes = conjugacy_classes(mult)
    r = len(classes)
    lab = np.empty(n, dtype=int)
    for i, c in enumerate(classes):
        lab[c] = i
    inv = np.argmin(mult != 0, axis=1)
    reps = [c[0] for c in classes]
    sizes = np.array([len(c) for c in classes], dtype=float)

    # a[j, i, k] = #{x in C_j : x^-1 g_k in C_i};  C_j C_i = sum_k a[j,i,k] C_k
    a = np.zeros((r, r, r))
    for k, g in enumerate(reps):
        y = mult[inv, g]  # x^-1 g for every x
        np.add.at(a, (lab, lab[y], k), 1)
    rng = np.random.default_rng(seed)
    for _ in range(20):
        coeffs = rng.normal(size=r)
        comb = np.tensordot(coeffs, a, axes=(0, 0))  # comb[i, k]
        # central character omega (over classes) satisfies comb @ omega = eigenvalue * omega
        evals, evecs = np.linalg.eig(comb)
        gaps = np.abs(evals[:, None] - evals[None, :]) + np.eye(r) * 1e9
        if gaps.min() > 1e-6:
            break
    else:
        raise RuntimeError("could not separate central characters")
    rows = []
    for t in range(r):
        omega = evecs[:, t] / evecs[0, t]
        # omega_k = |C_k| chi(g_k) / chi(1)
        deg = np.sqrt(n / np.sum(np.abs(omega) ** 2 / sizes).real)
        chi = omega * deg / sizes
        rows.append(chi)
    vals = np.array(rows)
    re_, im_ = vals.real.copy(), vals.imag.copy()
    re_[np.abs(re_) < 1e-12] = 0.0
    im_[np.abs(im_) < 1e-12] = 0.0
    vals = re_ + 1j * im_
    order = sorted(
        range(r),
        key=lambda t: (round(vals[t, 0].real), tuple(-np.round(vals[t].real, 6)), tuple(np.round(vals[t].imag, 6))),
    )
    table = CharacterTable(classes, vals[order])
    if not table.check_orthogonality():
        raise RuntimeError("character table failed orthogonality")
    return table
