"""W-graph of a special module and the Hecke representation it defines.

Extracts the node labels and edge weights for the middle cell of B3, checks
the quadratic and braid relations symbolically and prints DOT.
"""

from asymhecke import wgraph as W
from asymhecke.core import context
from asymhecke.perron import CellRing, special_module

ctx = context("B3")
ring = CellRing(ctx.jalg, 2)
mod = special_module(ring, ring.L[0])
wg = W.extract(mod)

print("nodes and labels:", {n: [s + 1 for s in wg.labels[n]] for n in wg.nodes})
print("edges (source, target, f):", wg.edges())

rep = W.hecke_check(wg)
print("quadratic relations:", rep.quadratic)
print("braid relations:", rep.braid)

mats = W.generator_matrices(wg)
print("\nT_1 as a matrix over Z[v, v^-1]:")
for row in W.laurent_matrix(mats[0]):
    print("  ", [str(x) for x in row])

print("\n" + W.export(wg, "dot"))
