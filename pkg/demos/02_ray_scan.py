"""Follow the characteristic function along a ray s -> s * v.

The naive evaluator jumps when det(I - 2isv) crosses the negative real axis;
the correct value moves continuously and the winding counter ticks over.
Writes ray_scan.png if matplotlib is installed.
"""
import math

import numpy as np

from wishart_cf import ShapeParam, scan_ray

p = ShapeParam(0.5, 3)
v = math.sqrt(3) / 2 * np.eye(3)
scan = scan_ray(v, p, s_max=2.0, n_points=401)

jump = np.argmax(np.abs(np.diff(scan.naive)))
print(f"largest naive jump between s={scan.s[jump]:.4f} and s={scan.s[jump + 1]:.4f}: "
      f"{abs(scan.naive[jump + 1] - scan.naive[jump]):.4f}")
print(f"largest correct step: {np.abs(np.diff(scan.correct)).max():.4f}")
print(f"winding values seen: {sorted(set(scan.winding.tolist()))}")

print("\n     s     naive                    correct                  winding")
for k in range(0, 401, 40):
    n, c = scan.naive[k], scan.correct[k]
    print(f"  {scan.s[k]:.2f}  {n.real:+.5f}{n.imag:+.5f}i   {c.real:+.5f}{c.imag:+.5f}i   {scan.winding[k]:+d}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    pass
else:
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(scan.s, scan.naive.imag, label="naive Im")
    ax.plot(scan.s, scan.correct.imag, "--", label="correct Im")
    ax.set_xlabel("s")
    ax.legend()
    fig.savefig("ray_scan.png", dpi=120)
    print("\nsaved ray_scan.png")
