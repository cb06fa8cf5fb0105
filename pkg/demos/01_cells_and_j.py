"""Cells of a small Weyl group and the ring J.

Walks through B2: the KL polynomials, the products c_x c_y, the a-function,
the cell partition and the structure constants of J.
"""

import numpy as np

from asymhecke.core import context

ctx = context("B2")
g, kl, cells, j = ctx.group, ctx.kl, ctx.cells, ctx.jalg

print(f"W = {g.datum.label}, |W| = {g.order}, l(w0) = {g.length[g.w0]}")

# a product in the c-basis; every coefficient is a bar-invariant Laurent polynomial with
# nonnegative coefficients
s = g.element((0,))
w = g.element((0, 1, 0))
print(f"\nc_{g.word_str(s)} c_{g.word_str(w)} =")
for z, h in sorted(kl.c_product(s, w).items()):
    print(f"   ({h}) c_{g.word_str(z)}")

print("\na-function:", {g.word_str(x): int(kl.a_values[x]) for x in range(g.order)})

print("\nleft cells:")
for i, members in enumerate(cells.left_cells):
    d = g.word_str(cells.delta(i))
    print(f"  {i}: {[g.word_str(x) for x in members]}  delta = {d}")

# J is associative with unit sum_d t_d
e = j.unit
print("\nunit of J is supported on", [g.word_str(d) for d in np.nonzero(e)[0]])
print("two-sided unit:", j.is_two_sided_unit(e))

# psi: Q[W] -> J (x) Q is an isomorphism; psi(s) for a simple reflection
coeffs = j.psi(s)
terms = " ".join(f"{'+' if c > 0 else '-'} {abs(c)}*t_{g.word_str(z)}" for z, c in enumerate(coeffs) if c)
print(f"\npsi({g.word_str(s)}) = {terms}")
