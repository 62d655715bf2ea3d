"""The order structure of the effect algebra [0, e].

Covers the cone order, classification flags, the projection lattice
inside [0, e], atom domination, and splitting along central projections.
"""

import numpy as np

import effectorder as eo

alg = eo.algebra(eo.HermFactor(2), eo.HermFactor(1), eo.SpinFactor(3))
rng = np.random.default_rng(3)
e = eo.unit(alg)

x = eo.sample_element(alg, rng, "effect")
print("x in [0, e]:", eo.leq(eo.zero(alg), x) and eo.leq(x, e))
print("classification:", eo.classify(x))

# complementation x -> e - x reverses the order
y = eo.sample_element(alg, rng, "effect")
print("x <= y iff e-y <= e-x:", eo.leq(x, y) == eo.leq(e - y, e - x))

# the projection lattice: meets and joins exist inside [0, e]
p = eo.sample_element(alg, rng, "projection")
q = eo.sample_element(alg, rng, "projection")
m = eo.proj_meet(p, q)
j = eo.proj_join(p, q)
print("\nmeet <= p, q:", eo.leq(m, p) and eo.leq(m, q))
print("join >= p, q:", eo.leq(p, j) and eo.leq(q, j))
print("De Morgan residual:", eo.sup_norm(m - (e - eo.proj_join(e - p, e - q))))

# atoms are the rank-one projections; interior elements dominate them all
atom = eo.sample_element(alg, rng, "atom")
print("\natom trace:", round(eo.canonical_trace(atom), 12))
interior = eo.sample_element(alg, rng, "interior")
ok, lam = eo.dominates_atom(interior, atom)
print(f"interior element dominates the atom with witness lambda = {lam:.4f}:", ok)
print("witness really works:", eo.leq(lam * atom, interior))

# an interval [0, x] is a chain exactly when x is a scaled atom
print("\n[0, 3p] totally ordered:", eo.has_totally_ordered_interval(3.0 * atom))
print("[0, e] totally ordered:", eo.has_totally_ordered_interval(e))

# the centre is spanned by the factor identities; splitting is blockwise
gens, disengaged = eo.central_structure(alg)
print("\ncentral generators:", len(gens), " disengaged indices:", disengaged)
inside, outside = eo.split_by_central(x, gens[0])
back = eo.unsplit_by_central(alg, gens[0], inside, outside)
print("split/recombine is the identity:", eo.sup_norm(back - x) == 0.0)
