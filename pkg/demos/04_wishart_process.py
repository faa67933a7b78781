"""The Wishart process started at 0 is Wishart distributed at t = 1, so its
Laplace transform must equal det(I + 2u)^(-alpha)."""
import math

import numpy as np

from wishart_cf import SdeConfig, ShapeParam, laplace_via_sde, phi_closed, simulate_path
from wishart_cf.process import tolerance_band

p = ShapeParam(1.0, 2)
cfg = SdeConfig(p, t_end=1.0, n_steps=1000, n_paths=10_000, seed=3)

path = simulate_path(cfg, path_seed=0)
print("one path, trace of X_t at t = 0, 0.25, 0.5, 0.75, 1:")
print("  ", np.round([np.trace(path.states[k]) for k in (0, 250, 500, 750, 1000)], 4))

for u in (np.eye(2), np.diag([2.0, 0.0]), np.array([[1.0, 0.4], [0.4, 0.3]])):
    est = laplace_via_sde(cfg, u)
    target = math.exp(-phi_closed(1.0, u, p))
    print(f"\nu = {u.tolist()}")
    print(f"  simulated {est.value.real:.5f} +- {est.std_error:.5f}   closed form {target:.5f}"
          f"   band {tolerance_band(est, cfg):.5f}")
