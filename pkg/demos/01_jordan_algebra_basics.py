"""Building block direct sums and working with the Jordan product.

An algebra is described by its list of factors; elements carry one block
per factor.  This script builds a mixed algebra, multiplies a few
elements, and spot-checks the quadratic representation identities.
"""

import numpy as np

import effectorder as eo

# a direct sum: one line, a 2x2 real matrix factor, and a spin factor
alg = eo.algebra(eo.HermFactor(1), eo.HermFactor(2), eo.SpinFactor(3))
print("algebra:", alg)
print("rank:", alg.rank, " real dimension:", alg.dim)
print("disengaged (rank-one) factor indices:", alg.disengaged_indices)

e = eo.unit(alg)
print("\nunit blocks:")
for i, b in enumerate(e.blocks):
    print(f"  factor {i}:", np.array2string(np.asarray(b), precision=3))

# Jordan product: commutative, non-associative
rng = np.random.default_rng(0)
x = eo.sample_element(alg, rng, "general")
y = eo.sample_element(alg, rng, "general")
xy = eo.jordan_product(x, y)
yx = eo.jordan_product(y, x)
print("\ncommutativity residual:", eo.sup_norm(xy - yx))

a = eo.jordan_product(eo.jordan_product(x, y), y)
b = eo.jordan_product(x, eo.jordan_product(y, y))
print("associativity defect (x o y) o y vs x o (y o y):", eo.sup_norm(a - b))

# the quadratic representation U_x y = {x, y, x} equals x y x blockwise
u = eo.quad_rep(x, y)
t = eo.triple_product(x, y, x)
print("\nU_x y vs {x,y,x} residual:", eo.sup_norm(u - t))

# U_y maps the cone into itself, and U_y e = y^2
c = eo.sample_element(alg, rng, "cone")
print("min eigenvalue of U_y(cone element):", eo.min_eigenvalue(eo.quad_rep(y, c)))
print("U_y e vs y^2 residual:", eo.sup_norm(eo.quad_rep(y, e) - eo.jordan_product(y, y)))

# the fundamental identity U_{U_y x} = U_y U_x U_y
w = eo.sample_element(alg, rng, "general")
lhs = eo.quad_rep(eo.quad_rep(y, x), w)
rhs = eo.quad_rep(y, eo.quad_rep(x, eo.quad_rep(y, w)))
print("fundamental identity residual:", eo.sup_norm(lhs - rhs))
