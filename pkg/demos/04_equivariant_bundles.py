"""Convolution of equivariant bundles for S3 acting on a union of coset spaces."""

from asymhecke.eqbundle import BundleRing, coset_space, disjoint_union, subgroup_generated, symmetric_group

s3, perms = symmetric_group(3)
transposition = subgroup_generated(s3, [1])
rotations = subgroup_generated(s3, [3])
x = disjoint_union(coset_space(s3, transposition), coset_space(s3, rotations))
ring = BundleRing(x)

print(f"|X| = {x.size}, orbits on X: {x.orbits}")
print(f"{len(ring.pair_orbits)} orbits on X x X, basis of size {len(ring.basis)}")

v, vbar = ring.v_omega(0, 1)
print("\nV^{0,1} =", {(b.omega, b.rho): int(c) for b, c in v.items()})

b = ring.basis[1]
prod = ring.convolve({b: 1}, v)
print(f"V^(Omega, rho) * V^{{0,1}} with (Omega, rho) = {(b.omega, b.rho)}:", {(k.omega, k.rho): int(c) for k, c in prod.items()})

rep = ring.check_42a_all()
print(f"\nmultiplication formulas: {rep.checked} checks, passed = {rep.passed}")
print("associative:", ring.is_associative())
print("R modules isomorphic:", ring.modules_isomorphic())
for bc, mat in ring.module_R(0).items():
    print(f"  (Omega, rho) = {(bc.omega, bc.rho)} acts on R_0 by", mat.tolist())
