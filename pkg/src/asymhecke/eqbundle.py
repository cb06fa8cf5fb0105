"""Equivariant vector bundles on ``X x X`` for a finite group acting on a finite set.

A bundle is stored through its fiber characters: ``F[a, b, h]`` is the trace
of ``h`` on the fiber over ``(a, b)`` when ``h`` fixes both points, else 0.
Convolution is then a single contraction over the fixed points:

    (U * V)[a, b, h] = sum_{y : h y = y} U[a, y, h] V[y, b, h]

because ``h`` permutes the summands ``U_{a,y} ⊗ V_{y,b}`` and only fixed
summands contribute to its trace.  Characters are complex floats; every
multiplicity read back is rounded and checked against ``ROUND_TOL``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path

import numpy as np

from .chartable import CharacterTable, character_table
from .kl import StructuralError

__all__ = [
    "FinGroup",
    "GSet",
    "BundleClass",
    "BundleRing",
    "Check42Report",
    "cyclic_group",
    "symmetric_group",
    "subgroup_generated",
    "coset_space",
    "disjoint_union",
    "load_json",
    "ROUND_TOL",
]

ROUND_TOL = 1e-9


class FinGroup:
    """A finite group given by its multiplication table ``mult[x, y] = xy``."""

    def __init__(self, mult, name: str = "G"):
        mult = np.asarray(mult, dtype=np.int64)
        n = mult.shape[0]
        if mult.shape != (n, n):
            raise ValueError("multiplication table must be square")
        ident = [e for e in range(n) if np.array_equal(mult[e], np.arange(n))]
        if len(ident) != 1 or not np.array_equal(mult[:, ident[0]], np.arange(n)):
            raise ValueError("no two-sided identity")
        for row in mult:
            if sorted(row) != list(range(n)):
                raise ValueError("table is not a Latin square")
        if ident[0] != 0:
            raise ValueError("identity must have index 0")
        # (ab)c == a(bc)
        if not np.array_equal(mult[mult, :].reshape(n, n, n), mult[np.arange(n)[:, None, None], mult[None, :, :]]):
            raise ValueError("multiplication is not associative")
        self.mult = mult
        self.name = name
        self.order = n
        self.inverse = np.argmin(mult != 0, axis=1)

    @cached_property
    def table(self) -> CharacterTable:
        return character_table(self.mult)

    def conj(self, g: int, h: int) -> int:
        """``g^-1 h g``."""
        return int(self.mult[self.mult[self.inverse[g], h], g])

    def subgroup_table(self, elements) -> tuple[list[int], CharacterTable]:
        """Character table of the subgroup on ``elements`` (global ids, identity included)."""
        return self._subgroup(tuple(sorted(int(e) for e in elements)))

    def _subgroup(self, elems: tuple[int, ...]):
        cache = self.__dict__.setdefault("_sub_cache", {})
        if elems not in cache:
            loc = {e: i for i, e in enumerate(elems)}
            try:
                sub = np.array([[loc[int(self.mult[a, b])] for b in elems] for a in elems])
            except KeyError as exc:
                raise ValueError("elements are not closed under multiplication") from exc
            cache[elems] = (list(elems), character_table(sub))
        return cache[elems]


def cyclic_group(n: int) -> FinGroup:
    a = np.arange(n)
    return FinGroup((a[:, None] + a[None, :]) % n, f"C{n}")


def symmetric_group(n: int) -> tuple[FinGroup, list[tuple[int, ...]]]:
    """``S_n`` with elements in lexicographic order (identity first); ``(fg)(i) = f(g(i))``."""
    perms = list(itertools.permutations(range(n)))
    idx = {p: i for i, p in enumerate(perms)}
    mult = [[idx[tuple(f[g[i]] for i in range(n))] for g in perms] for f in perms]
    return FinGroup(mult, f"S{n}"), perms


def subgroup_generated(group: FinGroup, gens) -> list[int]:
    out = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(group.mult[x, g])
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(out)


class GSet:
    """A finite set with a left action ``act[g, x] = g.x``."""

    def __init__(self, group: FinGroup, act):
        act = np.asarray(act, dtype=np.int64)
        if act.shape[0] != group.order:
            raise ValueError("action table must have one row per group element")
        n = act.shape[1]
        for row in act:
            if sorted(row) != list(range(n)):
                raise ValueError("group element does not act by a permutation")
        if not np.array_equal(act[0], np.arange(n)):
            raise ValueError("identity does not act trivially")
        # (gh).x == g.(h.x)
        if not np.array_equal(act[group.mult], act[np.arange(group.order)[:, None, None], act[None, :, :]]):
            raise ValueError("action is not a homomorphism")
        self.group = group
        self.act = act
        self.size = n
        for o in self.orbits:
            if len(o) * len(self.stabilizer(o[0])) != group.order:
                raise StructuralError("orbit-stabilizer fails")

    @cached_property
    def orbits(self) -> list[list[int]]:
        """``G\\X`` ordered by minimal point."""
        seen: dict[int, int] = {}
        out: list[list[int]] = []
        for x in range(self.size):
            if x not in seen:
                orb = sorted({int(p) for p in self.act[:, x]})
                for p in orb:
                    seen[p] = len(out)
                out.append(orb)
        return out

    @cached_property
    def orbit_of(self) -> np.ndarray:
        lab = np.empty(self.size, dtype=int)
        for i, o in enumerate(self.orbits):
            lab[o] = i
        return lab

    def stabilizer(self, *points: int) -> list[int]:
        mask = np.ones(self.group.order, dtype=bool)
        for p in points:
            mask &= self.act[:, p] == p
        return [int(g) for g in np.nonzero(mask)[0]]

    @cached_property
    def fixed(self) -> np.ndarray:
        """``[y, h]``: ``h y == y``."""
        return (self.act == np.arange(self.size)[None, :]).T


def coset_space(group: FinGroup, subgroup) -> GSet:
    """``G/H`` (left cosets ``gH``) with ``G`` acting by left multiplication."""
    h = sorted(int(x) for x in subgroup)
    if 0 not in h or any(int(group.mult[a, b]) not in h for a in h for b in h):
        raise ValueError(f"{h} is not a subgroup")
    cosets: list[tuple[int, ...]] = []
    where: dict[int, int] = {}
    for g in range(group.order):
        if g not in where:
            c = tuple(sorted(int(group.mult[g, x]) for x in h))
            for e in c:
                where[e] = len(cosets)
            cosets.append(c)
    act = np.array([[where[int(group.mult[g, c[0]])] for c in cosets] for g in range(group.order)])
    return GSet(group, act)


def disjoint_union(*sets: GSet) -> GSet:
    group = sets[0].group
    cols, shift = [], 0
    for s in sets:
        cols.append(s.act + shift)
        shift += s.size
    return GSet(group, np.concatenate(cols, axis=1))


def load_json(path: str | Path) -> GSet:
    """``{"mult": [[...]], "action": [[...]]}`` or ``{"mult": ..., "cosets": [[subgroup], ...]}``."""
    doc = json.loads(Path(path).read_text())
    group = FinGroup(doc["mult"], doc.get("name", "G"))
    if "action" in doc:
        return GSet(group, doc["action"])
    if "cosets" in doc:
        return disjoint_union(*(coset_space(group, h) for h in doc["cosets"]))
    raise ValueError("group file needs an 'action' or 'cosets' entry")


@dataclass(frozen=True, order=True)
class BundleClass:
    """Orbit ``omega`` on ``X x X`` and irreducible ``rho`` of its base-point isotropy."""

    omega: int
    rho: int


FormalSum = dict[BundleClass, Fraction]


def _clean(d: dict) -> FormalSum:
    return {k: Fraction(v) for k, v in sorted(d.items()) if v}


@dataclass
class Check42Report:
    failures: list[tuple] = field(default_factory=list)
    checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures


class BundleRing:
    """``K_G(X x X)`` with basis ``V^{Omega, rho}``."""

    def __init__(self, gset: GSet):
        self.gset = gset
        self.group = gset.group
        n = gset.size
        g = self.group
        pairs = np.arange(n * n)
        a, b = np.divmod(pairs, n)
        # orbits on X x X by minimal pair; transporter[p] maps the base pair to p
        orbit = -np.ones(n * n, dtype=int)
        transporter = np.zeros(n * n, dtype=int)
        self.pair_orbits: list[tuple[int, int]] = []
        for p in range(n * n):
            if orbit[p] >= 0:
                continue
            k = len(self.pair_orbits)
            self.pair_orbits.append((int(a[p]), int(b[p])))
            for h in range(g.order):
                q = int(gset.act[h, a[p]] * n + gset.act[h, b[p]])
                if orbit[q] < 0:
                    orbit[q] = k
                    transporter[q] = h
        self.orbit = orbit
        self.transporter = transporter
        self.orbit_size = np.bincount(orbit)
        self.isotropy = [gset.stabilizer(x, y) for x, y in self.pair_orbits]

    # -- basis ----------------------------------------------------------------
    def rho_table(self, k: int) -> tuple[list[int], CharacterTable]:
        return self.group.subgroup_table(self.isotropy[k])

    @cached_property
    def basis(self) -> list[BundleClass]:
        out = []
        for k in range(len(self.pair_orbits)):
            _, tab = self.rho_table(k)
            out.extend(BundleClass(k, r) for r in range(len(tab.values)))
        return out

    @cached_property
    def index(self) -> dict[BundleClass, int]:
        return {bc: i for i, bc in enumerate(self.basis)}

    def dim_rho(self, bc: BundleClass) -> int:
        return int(self.rho_table(bc.omega)[1].degrees[bc.rho])

    def orbit_points(self, k: int) -> list[tuple[int, int]]:
        n = self.gset.size
        return [divmod(int(p), n) for p in np.nonzero(self.orbit == k)[0]]

    def inside(self, k: int) -> tuple[int, int]:
        """``(omega_1, omega_1')`` with ``Omega_k ⊂ omega_1 x omega_1'``."""
        x, y = self.pair_orbits[k]
        return int(self.gset.orbit_of[x]), int(self.gset.orbit_of[y])

    # -- fiber characters ----------------------------------------------------
    @cached_property
    def _basis_fibers(self) -> np.ndarray:
        """``[i, a, b, h]`` fiber characters of the basis bundles."""
        g, n = self.group, self.gset.size
        out = np.zeros((len(self.basis), n, n, g.order), dtype=complex)
        for i, bc in enumerate(self.basis):
            elems, tab = self.rho_table(bc.omega)
            chi = dict(zip(elems, tab.element_values(bc.rho)))
            for p in np.nonzero(self.orbit == bc.omega)[0]:
                a, b = divmod(int(p), n)
                t = int(self.transporter[p])
                for h in self.gset.stabilizer(a, b):
                    out[i, a, b, h] = chi[g.conj(t, h)]
        return out

    def fibers(self, u: FormalSum) -> np.ndarray:
        n, m = self.gset.size, self.group.order
        out = np.zeros((n, n, m), dtype=complex)
        for bc, c in u.items():
            out += complex(c) * self._basis_fibers[self.index[bc]]
        return out

    def decompose(self, f: np.ndarray) -> FormalSum:
        """Integer multiplicities of ``f`` in the basis; checks equivariance on every fiber."""
        out: dict[BundleClass, int] = {}
        for k, (a, b) in enumerate(self.pair_orbits):
            elems, tab = self.rho_table(k)
            chi = f[a, b, elems]
            mult = (tab.values[:, tab.class_of].conj() @ chi) / len(elems)
            r = np.rint(mult.real)
            if np.abs(mult - r).max(initial=0.0) > ROUND_TOL:
                raise StructuralError(f"fiber over orbit {k} is not a representation: {mult}")
            for row, m in enumerate(r):
                if m:
                    out[BundleClass(k, row)] = int(m)
        back = self.fibers(out)
        if np.abs(back - f).max(initial=0.0) > 1e-7:
            raise StructuralError("bundle is not G-equivariant")
        return _clean(out)

    def _convolve_fibers(self, fu: np.ndarray, fv: np.ndarray) -> np.ndarray:
        return np.einsum("ayh,ybh,yh->abh", fu, fv, self.gset.fixed)

    def _basis_product(self, i: int, j: int) -> FormalSum:
        cache = self.__dict__.setdefault("_products", {})
        if (i, j) not in cache:
            bf = self._basis_fibers
            cache[(i, j)] = self.decompose(self._convolve_fibers(bf[i], bf[j]))
        return cache[(i, j)]

    @cached_property
    def structure(self) -> np.ndarray:
        """Integer structure constants ``[i, j, k]`` of the basis."""
        nb = len(self.basis)
        out = np.zeros((nb, nb, nb), dtype=np.int64)
        for i in range(nb):
            for j in range(nb):
                for bc, c in self._basis_product(i, j).items():
                    out[i, j, self.index[bc]] = int(c)
        return out

    def convolve(self, u: FormalSum, v: FormalSum) -> FormalSum:
        """Brute-force convolution on basis pairs, extended bilinearly over Q."""
        out: dict[BundleClass, Fraction] = {}
        for bu, cu in u.items():
            for bv, cv in v.items():
                for bw, cw in self._basis_product(self.index[bu], self.index[bv]).items():
                    out[bw] = out.get(bw, Fraction(0)) + cu * cv * cw
        return _clean(out)

    def is_associative(self) -> bool:
        c = self.structure
        lhs = np.einsum("ijk,klm->ijlm", c, c)
        rhs = np.einsum("jlk,ikm->ijlm", c, c)
        return bool(np.array_equal(lhs, rhs))

    @cached_property
    def identity(self) -> FormalSum:
        out = {}
        for k, (a, b) in enumerate(self.pair_orbits):
            if a == b:
                out[BundleClass(k, 0)] = Fraction(1)
        return out

    # -- V^{omega, omega'} and R_{omega'} -------------------------------------
    def v_omega(self, w: int, wp: int) -> tuple[FormalSum, FormalSum]:
        """``V^{w,w'} = sum_{Omega ⊂ w x w'} dim(rho) |Omega| V^{Omega,rho}`` and ``V-bar = V / |w|``."""
        v: dict[BundleClass, Fraction] = {}
        for bc in self.basis:
            if self.inside(bc.omega) == (w, wp):
                v[bc] = Fraction(self.dim_rho(bc) * int(self.orbit_size[bc.omega]))
        size = len(self.gset.orbits[w])
        return _clean(v), _clean({k: c / size for k, c in v.items()})

    def _is_regular_multiple(self, f: np.ndarray) -> bool:
        n = self.gset.size
        for a in range(n):
            for b in range(n):
                stab = self.gset.stabilizer(a, b)
                if np.abs(f[a, b, stab[1:]]).max(initial=0.0) > 1e-7:
                    return False
        return True

    def check_42a(self, bc: BundleClass, w: int, wp: int, report: Check42Report | None = None) -> Check42Report:
        rep = report or Check42Report()
        rep.checked += 1
        w1, w1p = self.inside(bc.omega)
        v, vbar = self.v_omega(w, wp)
        target, target_bar = self.v_omega(w1, wp)
        if w1p != w:
            n_val = Fraction(0)
            n_bar = Fraction(0)
        else:
            d_om = self.dim_rho(bc) * int(self.orbit_size[bc.omega])
            n_val = Fraction(d_om, len(self.gset.orbits[w1]))
            n_bar = Fraction(d_om, len(self.gset.orbits[w]))
        if n_val.denominator != 1:
            rep.failures.append(("N not integral", bc, w, wp, n_val))
        if n_bar.denominator != 1:
            rep.failures.append(("N' not integral", bc, w, wp, n_bar))
        single = {bc: Fraction(1)}
        prod = self.convolve(single, v)
        if prod != _clean({k: n_val * c for k, c in target.items()}):
            rep.failures.append(("multiplication", bc, w, wp, prod))
        prod_bar = self.convolve(single, vbar)
        if prod_bar != _clean({k: n_bar * c for k, c in target_bar.items()}):
            rep.failures.append(("V-bar form", bc, w, wp, prod_bar))
        if not self._is_regular_multiple(self.fibers(prod)):
            rep.failures.append(("regular fiber", bc, w, wp))
        return rep

    def check_42a_all(self) -> Check42Report:
        rep = Check42Report()
        r = len(self.gset.orbits)
        for bc in self.basis:
            for w in range(r):
                for wp in range(r):
                    self.check_42a(bc, w, wp, rep)
        return rep

    def module_R(self, wp: int) -> dict[BundleClass, np.ndarray]:
        """Action of each basis bundle on ``R_{w'}`` in the basis ``V-bar^{w,w'}``, ``w`` in ``G\\X``."""
        r = len(self.gset.orbits)
        vbars = [self.v_omega(w, wp)[1] for w in range(r)]
        out = {}
        for bc in self.basis:
            mat = np.zeros((r, r), dtype=object)
            for w in range(r):
                prod = self.convolve({bc: Fraction(1)}, vbars[w])
                for w1 in range(r):
                    part = {k: c for k, c in prod.items() if self.inside(k.omega) == (w1, wp)}
                    if not part:
                        continue
                    ratios = {c / vbars[w1][k] for k, c in part.items() if k in vbars[w1]}
                    if len(ratios) != 1 or set(part) != set(vbars[w1]):
                        raise StructuralError(f"R_{wp}: product leaves the span of V-bar")
                    mat[w1, w] = ratios.pop()
                if sum(len([k for k in prod if self.inside(k.omega) == (w1, wp)]) for w1 in range(r)) != len(prod):
                    raise StructuralError(f"R_{wp}: product has support outside X x omega'")
            for x in mat.flat:
                x = Fraction(x)
                if x < 0 or x.denominator != 1:
                    raise StructuralError(f"R_{wp}: entry {x} is not a nonnegative integer")
            out[bc] = np.array([[int(x) for x in row] for row in mat], dtype=np.int64)
        return out

    def modules_isomorphic(self) -> bool:
        """The canonical map ``V-bar^{w,w'} -> V-bar^{w,w''}`` intertwines every ``R``."""
        mods = [self.module_R(wp) for wp in range(len(self.gset.orbits))]
        first = mods[0]
        return all(all(np.array_equal(first[bc], m[bc]) for bc in self.basis) for m in mods[1:])
