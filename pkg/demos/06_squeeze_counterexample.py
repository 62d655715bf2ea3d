"""Why infinitely many summands break invertibility preservation.

On an n-fold sum of lines, squeeze the k-th coordinate of e/2 down to
2^(-k) with a Mobius map per coordinate.  Every finite stage keeps the
image strictly positive, but the spectral floor 2^(-n) collapses as n
grows: no uniform lower bound survives, which is exactly the obstruction
that appears with an infinite-dimensional centre.
"""

import effectorder as eo

for n in (1, 3, 10, 20):
    iso, image = eo.coordinate_squeeze_iso(n)
    coords = [float(image.block(k)[0, 0]) for k in range(n)]
    print(f"n = {n:2d}: image of e/2 starts {coords[:4]} ... min = {min(coords):.3e}")
    assert eo.min_eigenvalue(image) > 0.0  # each finite stage stays invertible

print()
report = eo.counterexample_report(20)
print(eo.render_report(report))

# the Mobius parameter that achieves phi_t(1/2) = 2^(-k) is t = 2 - 2^k;
# the nearby mis-derivation t = (3 - 2^k)/2 lands at 2/(2^k + 1) instead
print("\nscalar oracle on both parameter candidates (k = 1..4):")
for k in range(1, 5):
    used = eo.mobius_scalar(2.0 - 2.0 ** k, 0.5)
    alt = eo.mobius_scalar(0.5 * (3.0 - 2.0 ** k), 0.5)
    print(f"  k={k}: target {2.0**-k:<8g} t=2-2^k gives {used:<8g} "
          f"t=(3-2^k)/2 gives {alt:.6f}")
