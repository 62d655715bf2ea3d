"""Recovering (t, z, J) from a black-box order isomorphism.

Given only an evaluation callback on the invertible effects, the induced
positive-cone map is linear of the form U_y J; probing it on a basis
recovers y, then J, then canonical closed-form parameters.
"""

import numpy as np

import effectorder as eo

factor = eo.HermFactor(3, eo.Ring.COMPLEX)
alg = eo.single_factor(factor)
rng = np.random.default_rng(42)

secret = eo.random_factor_iso(factor, rng)
print(f"secret parameters: t = {secret.t:.6f}, conjugate-linear J: {secret.jordan.conjugate}")

# hand only the callable to the recovery routine
recovered = eo.recover_factor_iso(secret.apply, alg, alg, seed=0)
print(f"recovered:         t = {recovered.t:.6f}, conjugate-linear J: {recovered.jordan.conjugate}")

worst = 0.0
for _ in range(50):
    x = eo.sample_element(alg, rng, "invertible_effect")
    worst = max(worst, eo.sup_norm(recovered.apply(x) - secret.apply(x)))
print("reproduction error on 50 fresh inputs:", worst)

# note: the recovered t need not equal the secret t; the parameterization
# is unique only up to the choice of lambda, and both triples induce the
# same map.  Composition also lands back in the family:
other = eo.random_factor_iso(factor, rng)
fwd, _ = eo.compose_factor_isos(secret, other)
canonical = eo.recover_factor_iso(fwd, alg, alg, seed=1)
x = eo.sample_element(alg, rng, "invertible_effect")
print("canonical form of a composition, residual:",
      eo.sup_norm(canonical.apply(x) - fwd(x)))

# a map that is NOT of the closed form is rejected by the built-in checks
try:
    eo.recover_factor_iso(
        lambda v: eo.apply_function(v, lambda s: s * s), alg, alg
    )
except eo.RecoveryError as exc:
    print("non-conforming map rejected:", exc)
