"""Positive lines, special modules and the special representation.

For each two-sided cell of G2 we build the transfer matrices, find their Perron
lines, assemble the module M_Gamma and identify it with a W-representation
through psi.
"""

import numpy as np

from asymhecke.core import context
from asymhecke.perron import CellRing, special_module, transfer_matrix, verify_theorem12

ctx = context("G2")
g, cells, j, sr = ctx.group, ctx.cells, ctx.jalg, ctx.special

for c in range(len(cells.two_sided_cells)):
    ring = CellRing(j, c)
    gamma = ring.L[0]
    print(f"\ntwo-sided cell {c}: |c| = {ring.m}, L = {ring.L}, a = {cells.a_of_cell(c)}, a' = {cells.a_prime(c)}")

    tm = transfer_matrix(ring, gamma, ring.L[-1])
    print("  transfer matrix (Gamma, Gamma') =", (gamma, ring.L[-1]))
    for row in tm.matrix:
        print("    ", row)

    mod = special_module(ring, gamma)
    path = "exact all-ones" if mod.exact else "power iteration"
    print(f"  M_Gamma has dimension {mod.dim}, built by {path}")
    for gp, vec in mod.basis.items():
        print(f"    e~_{gp} =", np.round(vec[vec != 0].astype(float), 6))

    rep = verify_theorem12(j, c)
    print("  clauses:", ", ".join(k for k, v in rep.clauses.items() if v))

    r32 = sr.verify_theorem32(c)
    e = r32.special
    print(f"  special representation: dim {sr.chars.degrees[e]}, b = {r32.b_special}; matches M_Gamma: {r32.passed}")
