"""Irreducible characters of W, b-invariants and the special representation of a cell.

J-modules are turned into W-characters through ``psi: C[W] -> J``: the
character of a J-module ``M`` at ``w`` is ``sum_z psi(w)_z tr(t_z, M)``.
In the other direction an irreducible ``E`` gives traces
``tr(t_z, E_inf) = chi_E(psi^{-1}(t_z))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .chartable import CharacterTable, character_table
from .coxeter import CoxeterGroup
from .jalg import JAlgebra
from .kl import StructuralError
from .perron import CellRing, special_module

__all__ = ["WeylCharacters", "SpecialRep", "ModuleCharacter", "SpecialReport"]


class WeylCharacters:
    """Character table of ``W`` plus symmetric powers of the reflection representation."""

    def __init__(self, group: CoxeterGroup):
        self.group = group
        self.exact = group.datum.crystallographic

    @cached_property
    def table(self) -> CharacterTable:
        return character_table(self.group.mult_table, self.group.conjugacy_classes)

    @property
    def reps(self) -> list[int]:
        return [c[0] for c in self.group.conjugacy_classes]

    @cached_property
    def values(self) -> np.ndarray:
        """Rows over classes; python ints when rational, else complex floats."""
        if self.exact:
            return self.table.integer_values().astype(object)
        return self.table.values

    @property
    def degrees(self) -> list[int]:
        return [int(d) for d in self.table.degrees]

    def element_values(self, row: int) -> np.ndarray:
        return self.values[row][self.group.class_of]

    def inner(self, chi, psi):
        """Exact ``<chi, psi>`` on the rational path."""
        g = self.group
        sizes = [len(c) for c in g.conjugacy_classes]
        if self.exact:
            return sum(Fraction(s) * Fraction(a) * Fraction(b) for s, a, b in zip(sizes, chi, psi)) / g.order
        return sum(s * complex(a) * np.conj(complex(b)) for s, a, b in zip(sizes, chi, psi)) / g.order

    def decompose(self, chi) -> list[int]:
        out = []
        for row in self.values:
            m = self.inner(chi, row)
            if self.exact:
                if m.denominator != 1:
                    raise StructuralError(f"non-integral multiplicity {m}")
                out.append(int(m))
            else:
                r = round(m.real)
                if abs(m - r) > 1e-6:
                    raise StructuralError(f"non-integral multiplicity {m}")
                out.append(r)
        return out

    @cached_property
    def reflection_character(self) -> list:
        return [self.group.reflection_trace(w) for w in self.reps]

    @cached_property
    def _power_classes(self) -> list[list[int]]:
        """``pm[i][k]`` = class of ``g_k^i`` for ``i = 0..N``."""
        g = self.group
        n_max = int(g.length[g.w0])
        mt = g.mult_table
        reps = np.array(self.reps)
        out = [list(g.class_of[np.zeros(len(reps), dtype=int)])]
        cur = np.zeros(len(reps), dtype=int)
        for _ in range(n_max):
            cur = mt[cur, reps]
            out.append([int(k) for k in g.class_of[cur]])
        return out

    @cached_property
    def _sym_powers(self) -> list[list]:
        g = self.group
        n_max = int(g.length[g.w0])
        refl = self.reflection_character
        if self.exact:
            refl = [Fraction(int(x)) for x in refl]
        pm = self._power_classes
        r = len(self.reps)
        # p_i(g) = chi_V(g^i); Newton: k h_k = sum_{i=1}^k p_i h_{k-i}
        p = [[refl[pm[i][k]] for k in range(r)] for i in range(n_max + 1)]
        h = [[Fraction(1) if self.exact else 1.0 for _ in range(r)]]
        for k in range(1, n_max + 1):
            h.append([sum(p[i][c] * h[k - i][c] for i in range(1, k + 1)) / k for c in range(r)])
        if self.exact:
            for row in h:
                if any(x.denominator != 1 for x in row):
                    raise StructuralError("symmetric power character is not integral")
            return [[int(x) for x in row] for row in h]
        return h

    def sym_power_character(self, k: int) -> list:
        return self._sym_powers[k]

    def b_invariant(self, row: int) -> int:
        chi = self.values[row]
        for k in range(len(self._sym_powers)):
            m = self.inner(self._sym_powers[k], chi)
            if (m != 0) if self.exact else abs(m) > 1e-6:
                return k
        raise StructuralError(f"irreducible {row} not found in symmetric powers up to N")

    @cached_property
    def b_invariants(self) -> list[int]:
        return [self.b_invariant(i) for i in range(len(self.reps))]


@dataclass
class ModuleCharacter:
    values: list  # over classes
    multiplicities: list[int]

    @property
    def irreducible(self) -> int | None:
        nz = [i for i, m in enumerate(self.multiplicities) if m]
        if len(nz) == 1 and self.multiplicities[nz[0]] == 1:
            return nz[0]
        return None


class SpecialRep:
    """Transport between J-modules and W-characters for one group."""

    def __init__(self, jalg: JAlgebra, chars: WeylCharacters | None = None, tol: float = 1e-6):
        self.jalg = jalg
        self.group = jalg.group
        self.cells = jalg.cells
        self.chars = chars or WeylCharacters(self.group)
        self.tol = tol

    def module_character(self, traces: np.ndarray) -> ModuleCharacter:
        """W-character of a J-module given its traces ``tr(t_z)`` over all of ``W``."""
        psi = self.jalg.psi_group
        reps = self.chars.reps
        raw = [sum(float(psi[z, x]) * float(traces[z]) for z in np.nonzero(psi[:, x])[0]) for x in reps]
        if self.chars.exact:
            vals = [round(v) for v in raw]
            dev = max(abs(a - b) for a, b in zip(vals, raw))
            if dev >= self.tol:
                raise StructuralError(f"module character deviates from integers by {dev:.3g}")
        else:
            vals = raw
        mults = self.chars.decompose(vals)
        if min(mults) < 0:
            raise StructuralError(f"negative multiplicity in module character: {mults}")
        return ModuleCharacter(vals, mults)

    def transported_traces(self, row: int) -> np.ndarray:
        """``tr(t_z, E_inf)`` for all ``z``: ``chi_E(psi^{-1}(t_z))``."""
        chi = self.chars.element_values(row)
        pinv = self.jalg.psi_inverse
        if self.chars.exact:
            chi_f = np.array([Fraction(int(c)) for c in chi], dtype=object)
            return np.array([sum(pinv[:, z] * chi_f) for z in range(self.group.order)], dtype=object)
        pf = pinv.astype(float)
        return (pf.T @ chi).real

    @cached_property
    def cell_of_irreducible(self) -> list[int]:
        """Two-sided cell ``c_E`` with ``J_c E != 0`` for each irreducible."""
        out = []
        for row in range(len(self.chars.reps)):
            tr = self.transported_traces(row)
            hits = []
            for c in range(len(self.cells.two_sided_cells)):
                unit = self.jalg.unit_of_cell(c)
                val = float(sum(tr[z] for z in np.nonzero(unit)[0]))
                if abs(val) > self.tol:
                    if abs(val - self.chars.degrees[row]) > self.tol:
                        raise StructuralError(f"tr(1_c) = {val} on irreducible {row}")
                    hits.append(c)
            if len(hits) != 1:
                raise StructuralError(f"irreducible {row} attached to cells {hits}")
            out.append(hits[0])
        return out

    def irr_of_cell(self, c: int) -> list[int]:
        return [e for e, cc in enumerate(self.cell_of_irreducible) if cc == c]

    def special_of_cell(self, c: int) -> int:
        ap = self.cells.a_prime(c)
        members = self.irr_of_cell(c)
        b = self.chars.b_invariants
        if any(b[e] < ap for e in members):
            raise StructuralError(f"cell {c}: some b_E < a' = {ap}")
        hits = [e for e in members if b[e] == ap]
        if len(hits) != 1:
            raise StructuralError(f"cell {c}: {len(hits)} irreducibles with b_E = a'")
        return hits[0]

    def verify_theorem32(self, c: int) -> "SpecialReport":
        ring = CellRing(self.jalg, c)
        special = self.special_of_cell(c)
        rep = SpecialReport(c, special, self.cells.a_prime(c), self.chars.b_invariants[special])
        for gam in ring.L:
            mod = special_module(ring, gam)
            tr = np.zeros(self.group.order)
            tr[ring.members] = mod.traces().astype(float)
            mc = self.module_character(tr)
            rep.characters[gam] = mc
            rep.matches[gam] = mc.irreducible == special
        return rep


@dataclass
class SpecialReport:
    cell: int
    special: int
    a_prime: int
    b_special: int
    characters: dict[int, ModuleCharacter] = field(default_factory=dict)
    matches: dict[int, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.matches) and all(self.matches.values()) and self.b_special == self.a_prime
