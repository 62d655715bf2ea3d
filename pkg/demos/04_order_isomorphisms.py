"""Order isomorphisms of [0, e] in closed form.

The Mobius family mobius_t is a one-parameter automorphism group; on a
single factor, every order isomorphism preserving the invertible part is
mobius_t composed with a stretch by z and a Jordan isomorphism.  Direct
sums add a routing of the rank-one coordinates.
"""

import numpy as np

import effectorder as eo

factor = eo.HermFactor(3)
alg = eo.single_factor(factor)
rng = np.random.default_rng(12)
e = eo.unit(alg)

# the Mobius group: composition law t*s = t + s - ts
x = eo.sample_element(alg, rng, "effect")
lhs = eo.mobius_apply(0.5, eo.mobius_apply(-2.0, x))
rhs = eo.mobius_apply(eo.mobius_compose(0.5, -2.0), x)
print("Mobius group law residual:", eo.sup_norm(lhs - rhs))

# a random closed-form order isomorphism (t, z, J)
iso = eo.random_factor_iso(factor, rng)
print(f"\nfactor map with t = {iso.t:.4f}")
a, b = eo.sample_ordered_pair(alg, rng)
fa, fb = iso.apply(a), iso.apply(b)
print("order preserved:", eo.leq(fa, fb))
print("endpoints: f(0) ->", eo.sup_norm(iso.apply(eo.zero(alg))),
      " f(e) - e ->", eo.sup_norm(iso.apply(e) - e))
print("roundtrip residual:", eo.sup_norm(iso.inverse_apply(iso.apply(a)) - a))

# the invertible part (0, e] is left invariant
inv_x = eo.sample_element(alg, rng, "invertible_effect")
print("image of invertible effect stays invertible:",
      eo.min_eigenvalue(iso.apply(inv_x)) > 0)

# interior form vs closed form: same map, two parameterizations
y = eo.apply_function(eo.sample_element(alg, rng, "general"), lambda v: min(max(v, 0.4), 1.5))
jord = eo.random_jordan_iso(factor, rng)
x_inv = eo.sample_element(alg, rng, "invertible_effect")
ref = eo.interior_iso_apply(y, x_inv, jord)
params = eo.params_from_cone_map(y, jord)
print("\ninterior form vs closed form residual:", eo.sup_norm(params.apply(x_inv) - ref))

# transitivity: some automorphism carries e/2 to any strictly interior w
w = eo.apply_function(eo.sample_element(alg, rng, "general"), lambda v: min(max(v, 0.1), 0.9))
witness = eo.transitivity_witness(w)
moved = eo.interior_iso_apply(witness, 0.5 * e)
print("transitivity: moved e/2 onto target, residual", eo.sup_norm(moved - w))

# composite maps on direct sums: scalar maps on lines, closed form elsewhere
src = eo.algebra(eo.HermFactor(1), eo.HermFactor(1), eo.HermFactor(2), eo.SpinFactor(3))
dst = eo.algebra(eo.SpinFactor(3), eo.HermFactor(1), eo.HermFactor(2), eo.HermFactor(1))
comp = eo.random_composite_iso(src, dst, rng)
print("\ncomposite routing sigma:", comp.sigma, " engaged:", comp.engaged_pairs)
u = eo.sample_element(src, rng, "effect")
print("composite roundtrip residual:", eo.sup_norm(comp.inverse_apply(comp.apply(u)) - u))
