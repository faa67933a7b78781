"""Evaluating on the strip u - iv with u > -I/2.

When u and v do not commute no eigenvalue shortcut exists; the quadrature
evaluator still works, and at v = 0 it reproduces the Laplace transform.
"""
import numpy as np

from wishart_cf import ShapeParam, StripPoint, cf_quadrature, cf_spectral, phi_closed

p = ShapeParam(1.5, 3)
u = np.array([[0.3, 0.1, 0.0], [0.1, -0.2, 0.05], [0.0, 0.05, 0.8]])
v = np.array([[0.0, 1.2, -0.3], [1.2, 0.5, 0.0], [-0.3, 0.0, -0.9]])

res = cf_quadrature(StripPoint(u, v), p)
print(f"E[exp(-tr((u - iv) xi))] = {res.value:.12f}")
print(f"  quadrature error estimate {res.quad_error:.1e}, winding {res.winding:+d}")
print(f"  spectral evaluator fell back to: {cf_spectral(StripPoint(u, v), p).method.value}")

lap = cf_quadrature(StripPoint(u, np.zeros((3, 3))), p).value
print(f"\nv = 0: quadrature {lap.real:.14f}, exp(-phi) {np.exp(-phi_closed(1.0, u, p)):.14f}")

# large Fourier variables: |Phi| = det(I + 4v^2)^(-alpha/2)
big = 5 * v
res = cf_quadrature(StripPoint.fourier(big), p)
print(f"\n|Phi(5v)| = {abs(res.value):.6e}, "
      f"det(I+4v^2)^(-a/2) = {np.linalg.det(np.eye(3) + 4 * big @ big) ** (-0.75):.6e}, "
      f"winding {res.winding:+d}")
