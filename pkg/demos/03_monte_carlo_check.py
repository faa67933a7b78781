"""Sampling settles which formula is right.

Draw 10^5 Wishart matrices and average exp(i tr(v xi)). At v+ the two
candidate answers are 0.707 apart, hundreds of standard errors.
"""
import math

import numpy as np

from wishart_cf import ShapeParam, StripPoint, cf_quadrature, mc_charfn, naive_cf

p = ShapeParam(0.5, 3)
v = math.sqrt(3) / 2 * np.eye(3)
est = mc_charfn(v, p, n=100_000, rng_seed=2024)
correct = cf_quadrature(StripPoint.fourier(v), p).value
naive = naive_cf(v, p).value

print(f"Monte Carlo  {est.value:.5f}  (se {est.std_error:.5f})")
print(f"quadrature   {correct:.5f}  z = {max(est.z_scores(correct)):.2f}")
print(f"naive        {naive:.5f}  z = {max(est.z_scores(naive)):.0f}")

# a non-half-integer shape goes through the Bartlett sampler
rng = np.random.default_rng(1)
a = rng.uniform(-1, 1, (3, 3))
v = (a + a.T) / 2
p = ShapeParam(1.37, 3)
est = mc_charfn(v, p, n=100_000, rng_seed=7)
target = cf_quadrature(StripPoint.fourier(v), p).value
print(f"\nalpha=1.37 random v: MC {est.value:.5f}, quadrature {target:.5f}, "
      f"z = {max(est.z_scores(target)):.2f}")
