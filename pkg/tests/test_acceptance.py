"""Exit criteria for the package. Each test records one PASS/FAIL line that is
printed in the pytest terminal summary."""
import math
import time

import numpy as np
from scipy import stats

from wishart_cf import charfn, cli, distribution as dist, process as proc
from wishart_cf.charfn import StripPoint, cf_path, cf_quadrature, cf_spectral, naive_cf
from wishart_cf.distribution import ShapeParam, gindikin_contains

from conftest import ACCEPTANCE_LINES, random_sym, valid_alphas

ROOT3 = math.sqrt(3.0)
V_PLUS = ROOT3 / 2 * np.eye(3)
V_MINUS = -ROOT3 / 2 * np.eye(3)
INV_2R2 = 1 / (2 * math.sqrt(2))


def record(number, title, ok, detail):
    ACCEPTANCE_LINES.append(f"[{number:2d}] {'PASS' if ok else 'FAIL'}  {title}: {detail}")
    print(ACCEPTANCE_LINES[-1])
    return ok


def test_01_counterexample():
    start = time.perf_counter()
    p = ShapeParam(0.5, 3)
    errs = {
        "naive+": abs(naive_cf(V_PLUS, p).value - (-1j * INV_2R2)),
        "spectral+": abs(cf_spectral(StripPoint.fourier(V_PLUS), p).value - 1j * INV_2R2),
        "quadrature+": abs(cf_quadrature(StripPoint.fourier(V_PLUS), p).value - 1j * INV_2R2),
        "path+": abs(cf_path(V_PLUS, p).value - 1j * INV_2R2),
    }
    target = -1j * INV_2R2
    errs["naive-"] = abs(naive_cf(V_MINUS, p).value - target)
    errs["spectral-"] = abs(cf_spectral(StripPoint.fourier(V_MINUS), p).value - target)
    errs["quadrature-"] = abs(cf_quadrature(StripPoint.fourier(V_MINUS), p).value - target)
    errs["path-"] = abs(cf_path(V_MINUS, p).value - target)
    elapsed = time.perf_counter() - start
    worst = max(errs.values())
    ok = worst <= 1e-11 and elapsed < 1.0
    assert record(1, "counterexample", ok, f"max abs err {worst:.2e} (<= 1e-11), {elapsed:.3f}s (< 1s)")


def test_02_theorem_vs_monte_carlo():
    start = time.perf_counter()
    rng = np.random.default_rng(2)
    worst_z = 0.0
    for alpha in (0.5, 1.0, 1.5):
        p = ShapeParam(alpha, 3)
        for k in range(20):
            v = rng.uniform(-1, 1, (3, 3))
            v = np.tril(v) + np.tril(v, -1).T  # |v|_max <= 1
            est = dist.mc_charfn(v, p, 100_000, rng_seed=1000 * k + int(10 * alpha))
            target = cf_quadrature(StripPoint.fourier(v), p).value
            worst_z = max(worst_z, *est.z_scores(target))
    p = ShapeParam(0.5, 3)
    est = dist.mc_charfn(V_PLUS, p, 100_000, rng_seed=4242)
    z_naive = max(est.z_scores(naive_cf(V_PLUS, p).value))
    z_correct = max(est.z_scores(cf_quadrature(StripPoint.fourier(V_PLUS), p).value))
    elapsed = time.perf_counter() - start
    ok = worst_z <= 4 and z_correct <= 4 and z_naive > 100 and elapsed < 60
    assert record(2, "theorem vs Monte Carlo", ok,
                  f"max z vs quadrature {max(worst_z, z_correct):.2f} (<= 4), "
                  f"z vs naive at v+ {z_naive:.0f} (> 100), {elapsed:.1f}s (< 60s)")


def test_03_oracle_equivalence():
    start = time.perf_counter()
    rng = np.random.default_rng(3)
    d_quad = d_path = 0.0
    for _ in range(1000):
        m = int(rng.integers(1, 7))
        v = random_sym(rng, m, float(rng.uniform(0.1, 3.0)))
        p = ShapeParam(float(rng.choice(valid_alphas(m))), m)
        pt = StripPoint.fourier(v)
        spec = cf_spectral(pt, p).value
        d_quad = max(d_quad, abs(cf_quadrature(pt, p).value - spec))
        d_path = max(d_path, abs(cf_path(v, p).value - spec))
    elapsed = time.perf_counter() - start
    ok = d_quad <= 1e-10 and d_path <= 1e-9 and elapsed < 30
    assert record(3, "oracle equivalence", ok,
                  f"|quad-spec| {d_quad:.1e} (<= 1e-10), |path-spec| {d_path:.1e} (<= 1e-9), "
                  f"{elapsed:.1f}s (< 30s)")


def _shape_pair(rng, m):
    choices = [k / 2 for k in range(1, 2 * m + 4)] + [(m - 1) / 2 + x for x in (0.13, 0.71, 1.9)]
    while True:
        a, b = (float(x) for x in rng.choice(choices, 2))
        if all(gindikin_contains(x, m) for x in (a, b, a + b)):
            return a, b


def test_04a_convolution_identity():
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(200):
        m = int(rng.integers(3, 6))
        v = random_sym(rng, m, 2.0)
        a, b = _shape_pair(rng, m)
        pt = StripPoint.fourier(v)
        lhs = cf_quadrature(pt, ShapeParam(a, m)).value * cf_quadrature(pt, ShapeParam(b, m)).value
        worst = max(worst, abs(lhs - cf_quadrature(pt, ShapeParam(a + b, m)).value))
    assert record(4, "convolution identity (correct evaluator)", worst <= 1e-10,
                  f"max |Phi_a Phi_b - Phi_(a+b)| {worst:.1e} (<= 1e-10)")


def test_04b_naive_breaks_convolution_identity():
    # Criterion as stated. With one principal Log of the same determinant,
    # exp(-a L) exp(-b L) == exp(-(a+b) L) identically, so this cannot hold.
    p = ShapeParam(0.5, 3)
    half = naive_cf(V_PLUS, p).value
    one = naive_cf(V_PLUS, ShapeParam(1.0, 3)).value
    gap = abs(half * half - one)
    assert record(4, "naive violates identity at v+ (alpha = beta = 1/2)", gap >= 0.1,
                  f"|naive^2 - naive_1| = {gap:.2e} (>= 0.1 required)")


def test_04c_naive_breaks_eigenvalue_factorisation():
    # The functional-equation failure the naive formula does exhibit at v+:
    # prod_j (1 - 2 i lam_j)^(-1/2) != (prod_j (1 - 2 i lam_j))^(-1/2).
    p = ShapeParam(0.5, 3)
    factored = complex(np.prod((1 - 2j * np.full(3, ROOT3 / 2)) ** -0.5))
    gap = abs(naive_cf(V_PLUS, p).value - factored)
    assert record(4, "naive breaks per-eigenvalue factorisation at v+", gap >= 0.1,
                  f"|naive - prod of scalar CFs| = {gap:.3f} (>= 0.1)")


def test_05_low_dimension_agreement():
    rng = np.random.default_rng(5)
    worst = 0.0
    windings = set()
    for m in (1, 2):
        for _ in range(10_000):
            v = random_sym(rng, m, 6.0)
            pt = StripPoint.fourier(v)
            for alpha in (0.5, 1.0, 2.5):
                p = ShapeParam(alpha, m)
                spec = cf_spectral(pt, p)
                worst = max(worst, abs(naive_cf(v, p).value - spec.value))
                windings.add(spec.winding)
    ok = worst <= 1e-12 and windings == {0}
    assert record(5, "low-dimension agreement", ok,
                  f"max |naive-spectral| {worst:.1e} (<= 1e-12), windings {sorted(windings)}")


def test_06_modulus_law():
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(500):
        m = int(rng.integers(1, 7))
        v = random_sym(rng, m, 2.0)
        alpha = float(rng.choice(valid_alphas(m)))
        p = ShapeParam(alpha, m)
        target = np.prod(np.linalg.eigvalsh(np.eye(m) + 4 * v @ v)) ** (-alpha / 2)
        pt = StripPoint.fourier(v)
        for res in (cf_quadrature(pt, p), cf_spectral(pt, p), cf_path(v, p)):
            worst = max(worst, abs(abs(res.value) - target))
    assert record(6, "modulus law", worst <= 1e-10, f"max deviation {worst:.1e} (<= 1e-10)")


def test_07_laplace_consistency():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(200):
        m = int(rng.integers(1, 6))
        q, _ = np.linalg.qr(rng.standard_normal((m, m)))
        u = q @ np.diag(rng.uniform(-0.49, 3.0, m)) @ q.T
        p = ShapeParam(float(rng.choice(valid_alphas(m))), m)
        got = cf_quadrature(StripPoint(u, np.zeros((m, m))), p).value
        target = math.exp(-p.alpha * math.log(np.linalg.det(np.eye(m) + 2 * u)))
        worst = max(worst, abs(got - target))
    assert record(7, "Laplace consistency", worst <= 1e-10, f"max deviation {worst:.1e} (<= 1e-10)")


def test_08_sde_oracle():
    start = time.perf_counter()
    cases = [(1, a) for a in (0.5, 1.0, 1.5)] + [(2, a) for a in (1.0, 1.5)]
    mixed = {1: np.array([[0.5]]), 2: np.diag([1.0, 0.0])}
    failures = []
    worst_ratio = 0.0
    for m, alpha in cases:
        p = ShapeParam(alpha, m)
        cfg = proc.SdeConfig(p, t_end=1.0, n_steps=1000, n_paths=10_000, seed=80 + m)
        for name, u in (("0", np.zeros((m, m))), ("I", np.eye(m)), ("mixed", mixed[m])):
            est = proc.laplace_via_sde(cfg, u)
            target = math.exp(-charfn.phi_closed(1.0, u, p))
            err = abs(est.value.real - target)
            band = proc.tolerance_band(est, cfg)
            worst_ratio = max(worst_ratio, err / band if band else float(err > 0))
            if err > band:
                failures.append(f"m={m} alpha={alpha} u={name}: {err:.4f} > {band:.4f}")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 120
    assert record(8, "SDE oracle", ok,
                  f"{len(cases) * 3} cases, worst err/band {worst_ratio:.2f} (<= 1), "
                  f"C={proc.DISCRETIZATION_C}, {elapsed:.1f}s (< 120s) {'; '.join(failures)}")


def test_09_sampler_correctness():
    n = 100_000
    mean_ok = True
    worst_z = 0.0
    for method, alpha, m in (("outer", 1.5, 3), ("bartlett", 1.5, 3), ("bartlett", 2.3, 3),
                             ("outer", 0.5, 2)):
        xs = dist.sample_many(ShapeParam(alpha, m), n, 9, method=method)
        se = xs.std(axis=0, ddof=1) / math.sqrt(n)
        z = np.abs(xs.mean(axis=0) - 2 * alpha * np.eye(m)) / se
        worst_z = max(worst_z, float(z.max()))
        mean_ok &= bool(np.all(z <= 4))
    pvals = []
    for alpha in (0.5, 1.7, 3.0):
        xs = dist.sample_many(ShapeParam(alpha, 1), 10_000, 19, method="bartlett")[:, 0, 0]
        pvals.append(stats.kstest(xs, stats.gamma(alpha, scale=2).cdf).pvalue)
    p = ShapeParam(0.5, 3)
    rank_one = 0
    for seed in range(10_000):
        s = dist.sample_outer(p, seed).matrix
        if np.linalg.eigvalsh(s)[1] <= 1e-10 * np.abs(s).max():
            rank_one += 1
    ok = mean_ok and min(pvals) > 0.01 and rank_one == 10_000
    assert record(9, "sampler correctness", ok,
                  f"max mean z {worst_z:.2f} (<= 4), min KS p {min(pvals):.3f} (> 0.01), "
                  f"rank-1 {rank_one}/10000")


def test_10_determinism(capsys):
    commands = [
        ["eval", "--random", "4", "3", "1.5", "--alpha", "2"],
        ["compare", "--random", "3", "11", "2.0", "--alpha", "0.5"],
        ["scan", "--random", "3", "5", "1.0", "--alpha", "1", "--points", "25", "--csv"],
        ["mc-verify", "--random", "3", "1", "1.0", "--alpha", "1.5", "--n", "20000", "--seed", "6"],
        ["sde-verify", "--alpha", "1", "--diag", "1,0.5", "--paths", "1000", "--seed", "12"],
    ]
    identical = 0
    for argv in commands:
        outs = []
        for _ in range(2):
            cli.main(argv)
            outs.append(capsys.readouterr().out.encode())
        identical += outs[0] == outs[1]
    ok = identical == len(commands)
    assert record(10, "determinism", ok, f"{identical}/{len(commands)} seeded commands byte-identical")
