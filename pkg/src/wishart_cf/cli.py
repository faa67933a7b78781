"""Command line front end.

Exit codes: 0 success, 1 verification or self-test failure, 2 shape parameter
outside the Gindikin set, 3 unparsable input.
"""
from __future__ import annotations

import argparse
import cmath
import csv
import io
import math
import re
import sys
import time

import numpy as np

from . import __version__, charfn, linalg
from .charfn import Method, StripPoint
from .distribution import ShapeParam, mc_charfn
from .exceptions import ShapeError, WishartError
from .process import SdeConfig, laplace_via_sde, tolerance_band
from .report import SCAN_COLUMNS, RunReport, encode_complex, finite_or_none

EXIT_OK, EXIT_FAIL, EXIT_SHAPE, EXIT_PARSE = 0, 1, 2, 3
DEFECT_FACTOR = 100
Z_LIMIT = 4.0
SELFTEST_TOL = 1e-12

_SQRT_TOKEN = re.compile(r"^([+-]?)sqrt\(?([0-9.]+)\)?(?:/([0-9.]+))?$")


class ParseError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-sqrt3/2" through as a value, like "-0.87"
        self._negative_number_matcher = re.compile(r"^-(\d+\.?\d*([eE][-+]?\d+)?|\.\d+|sqrt.*)$")

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def parse_scalar(token: str) -> float:
    """Float, or a token such as ``sqrt3/2`` / ``-sqrt(3)/2``."""
    token = token.strip()
    match = _SQRT_TOKEN.match(token)
    try:
        if match:
            sign, rad, den = match.groups()
            val = math.sqrt(float(rad)) / (float(den) if den else 1.0)
            return -val if sign == "-" else val
        return float(token)
    except ValueError:
        raise ParseError(f"cannot parse number {token!r}") from None


def _scalars(text: str) -> list[float]:
    return [parse_scalar(t) for t in text.split(",") if t.strip()]


def matrix_from_args(args) -> np.ndarray:
    if args.diag is not None:
        vals = _scalars(args.diag)
        if not vals:
            raise ParseError("--diag needs at least one value")
        return np.diag(vals)
    if args.entries is not None:
        vals = _scalars(args.entries)
        m = math.isqrt(len(vals))
        if m * m != len(vals) or m == 0:
            raise ParseError(f"--entries needs m*m values, got {len(vals)}")
        a = np.array(vals).reshape(m, m)
        if np.max(np.abs(a - a.T)) > 1e-12:
            raise ParseError("--entries matrix is not symmetric")
        return linalg.as_sym(a)
    if args.scaled_identity is not None:
        m_tok, s_tok = args.scaled_identity
        m = _dim(m_tok)
        return parse_scalar(s_tok) * np.eye(m)
    if args.random is not None:
        m_tok, seed_tok, norm_tok = args.random
        m = _dim(m_tok)
        try:
            seed = int(seed_tok)
        except ValueError:
            raise ParseError(f"bad seed {seed_tok!r}") from None
        rng = np.random.default_rng(seed)
        a = rng.uniform(-1, 1, (m, m)) * parse_scalar(norm_tok)
        return linalg.as_sym(a)
    raise ParseError("a matrix is required: --diag, --entries, --scaled-identity or --random")


def _dim(token: str) -> int:
    try:
        m = int(token)
    except ValueError:
        raise ParseError(f"bad dimension {token!r}") from None
    if not 1 <= m <= linalg.MAX_DIM:
        raise ParseError(f"dimension must be in [1, {linalg.MAX_DIM}]")
    return m


def _matrix_seeds(args) -> dict:
    return {"matrix": int(args.random[1])} if getattr(args, "random", None) else {}


def _shape(alpha: float, m: int) -> ShapeParam:
    return ShapeParam(alpha, m)


def _matrix_params(mat: np.ndarray) -> dict:
    return {"dim": int(mat.shape[0]), "matrix": mat.tolist()}


# --------------------------------------------------------------------------
# commands


def cmd_eval(args) -> tuple[RunReport, int]:
    v = matrix_from_args(args)
    p = _shape(args.alpha, v.shape[0])
    res = charfn.evaluate(v, p, args.method, args.tol)
    rep = RunReport("eval", [], {**_matrix_params(v), "alpha": p.alpha, "method": args.method,
                                 "tol": args.tol}, [res.as_dict()], seeds=_matrix_seeds(args))
    return rep, EXIT_OK


def compare_methods(v: np.ndarray, p: ShapeParam, tol: float) -> dict:
    results = {m.value: charfn.evaluate(v, p, m, tol) for m in Method}
    names = [m.value for m in Method]
    diffs = {f"{a}-{b}": abs(results[a].value - results[b].value)
             for i, a in enumerate(names) for b in names[i + 1:]}
    defect = diffs["naive-quadrature"] > DEFECT_FACTOR * tol
    return {"results": results, "diffs": diffs, "winding": results["quadrature"].winding,
            "branch_defect": defect}


def cmd_compare(args) -> tuple[RunReport, int]:
    v = matrix_from_args(args)
    p = _shape(args.alpha, v.shape[0])
    cmp = compare_methods(v, p, args.tol)
    rows = [r.as_dict() for r in cmp["results"].values()]
    rows.append({"pairwise_abs_diff": cmp["diffs"], "winding": cmp["winding"],
                 "branch_defect": cmp["branch_defect"]})
    rep = RunReport("compare", [], {**_matrix_params(v), "alpha": p.alpha, "tol": args.tol}, rows,
                    status="BRANCH-DEFECT" if cmp["branch_defect"] else "ok",
                    seeds=_matrix_seeds(args))
    return rep, EXIT_OK


def scan_rows(scan: charfn.PathScan) -> list[dict]:
    return [dict(zip(SCAN_COLUMNS, (float(s), n.real, n.imag, c.real, c.imag, float(d), int(w))))
            for s, n, c, d, w in zip(scan.s, scan.naive, scan.correct, scan.abs_diff, scan.winding)]


def scan_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SCAN_COLUMNS)
    for row in rows:
        writer.writerow([row[c] if c == "winding" else format(row[c], ".17g") for c in SCAN_COLUMNS])
    return buf.getvalue()


def cmd_scan(args) -> tuple[RunReport, int]:
    v = matrix_from_args(args)
    p = _shape(args.alpha, v.shape[0])
    s_max = parse_scalar(args.s_max)
    scan = charfn.scan_ray(v, p, s_max, args.points)
    rep = RunReport("scan", [], {**_matrix_params(v), "alpha": p.alpha, "s_max": s_max,
                                 "n_points": args.points}, scan_rows(scan), seeds=_matrix_seeds(args))
    return rep, EXIT_OK


def counterexample_table() -> list[dict]:
    """The m = 3 worked example: det(I - 2 i v) at v = -/+ (sqrt 3 / 2) I and its square roots."""
    root3 = math.sqrt(3.0)
    rows = []
    for label, sign in (("v_minus", -1.0), ("v_plus", 1.0)):
        v = sign * root3 / 2 * np.eye(3)
        det = linalg.complex_det(np.eye(3) - 2j * v)
        principal = cmath.exp(0.5 * charfn.principal_log(det))
        lam = linalg.sym_eigen(v).eigenvalues
        per_eig = complex(np.prod(np.sqrt(1 - 2j * lam)))
        expected_per_eig = 2 * math.sqrt(2) * 1j * (1 if sign < 0 else -1)
        rows += [
            {"quantity": f"det(I - 2iv) at {label}", "value": encode_complex(det),
             "expected": encode_complex(-8)},
            {"quantity": f"principal sqrt det at {label}", "value": encode_complex(principal),
             "expected": encode_complex(2 * math.sqrt(2) * 1j)},
            {"quantity": f"per-eigenvalue sqrt product at {label}", "value": encode_complex(per_eig),
             "expected": encode_complex(expected_per_eig)},
        ]
    for row in rows:
        got = complex(row["value"]["re"], row["value"]["im"])
        want = complex(row["expected"]["re"], row["expected"]["im"])
        row["abs_error"] = abs(got - want)
        row["pass"] = row["abs_error"] <= SELFTEST_TOL
    return rows


def cmd_counterexample(args) -> tuple[RunReport, int]:
    rows = counterexample_table()
    p = ShapeParam(0.5, 3)
    for label, sign in (("v_minus", -1.0), ("v_plus", 1.0)):
        v = sign * math.sqrt(3.0) / 2 * np.eye(3)
        for method in Method:
            rows.append({"quantity": f"cf {method.value} at {label}",
                         **charfn.evaluate(v, p, method).as_dict()})
    ok = all(r.get("pass", True) for r in rows)
    rep = RunReport("counterexample", [], {"m": 3, "alpha": 0.5, "tol": SELFTEST_TOL}, rows,
                    status="PASS" if ok else "FAIL")
    return rep, EXIT_OK if ok else EXIT_FAIL


def cmd_mc_verify(args) -> tuple[RunReport, int]:
    v = matrix_from_args(args)
    p = _shape(args.alpha, v.shape[0])
    est = mc_charfn(v, p, args.n, args.seed)
    target = charfn.cf_quadrature(StripPoint.fourier(v), p, args.tol)
    naive = charfn.naive_cf(v, p)
    z = est.z_scores(target.value)
    z_naive = est.z_scores(naive.value)
    ok = max(z) <= Z_LIMIT
    rows = [{
        "estimate": encode_complex(est.value), "std_error": est.std_error,
        "se_re": est.se_re, "se_im": est.se_im, "n_samples": est.n_samples,
        "target": target.as_dict(),
        "z_re": finite_or_none(z[0]), "z_im": finite_or_none(z[1]),
        "naive": naive.as_dict(),
        "z_naive_re": finite_or_none(z_naive[0]), "z_naive_im": finite_or_none(z_naive[1]),
        "naive_consistent": max(z_naive) <= Z_LIMIT,
    }]
    rep = RunReport("mc-verify", [], {**_matrix_params(v), "alpha": p.alpha, "n": args.n,
                                      "z_limit": Z_LIMIT}, rows,
                    status="PASS" if ok else "FAIL", seeds={"mc": args.seed, **_matrix_seeds(args)})
    return rep, EXIT_OK if ok else EXIT_FAIL


def cmd_sde_verify(args) -> tuple[RunReport, int]:
    u = matrix_from_args(args)
    m = u.shape[0]
    if args.dim is not None and args.dim != m:
        raise ParseError(f"--dim {args.dim} does not match u ({m}x{m})")
    p = _shape(args.alpha, m)
    if args.alpha < (m - 1) / 2:
        raise ShapeError("sde-verify needs alpha >= (m-1)/2")
    cfg = SdeConfig(p, args.t_end, args.steps, args.paths, args.seed)
    est = laplace_via_sde(cfg, u)
    target = math.exp(-charfn.phi_closed(cfg.t_end, u, p))
    band = tolerance_band(est, cfg)
    err = abs(est.value.real - target)
    ok = err <= band
    rows = [{"estimate": est.value.real, "std_error": est.std_error, "target": target,
             "abs_error": err, "band": band, "n_paths": cfg.n_paths, "n_steps": cfg.n_steps}]
    rep = RunReport("sde-verify", [], {**_matrix_params(u), "alpha": p.alpha, "t_end": cfg.t_end},
                    rows, status="PASS" if ok else "FAIL",
                    seeds={"sde": args.seed, **_matrix_seeds(args)})
    return rep, EXIT_OK if ok else EXIT_FAIL


# --------------------------------------------------------------------------


def _add_matrix(sp, required=True):
    g = sp.add_mutually_exclusive_group(required=required)
    g.add_argument("--diag", metavar="D1,D2,...")
    g.add_argument("--entries", metavar="A11,A12,...", help="row-major, m*m values")
    g.add_argument("--scaled-identity", nargs=2, metavar=("M", "S"))
    g.add_argument("--random", nargs=3, metavar=("M", "SEED", "MAXNORM"))


def _tol_default() -> float:
    return charfn.DEFAULT_TOL


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wishart-cf", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--json", action="store_true", help="JSON report (default)")
    parser.add_argument("--timing", action="store_true", help="add wall time to the report")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("eval", help="evaluate the characteristic function")
    _add_matrix(sp)
    sp.add_argument("--alpha", type=parse_scalar, required=True)
    sp.add_argument("--method", choices=[m.value for m in Method], default="quadrature")
    sp.add_argument("--tol", type=float, default=_tol_default())
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("compare", help="run all four methods and flag branch defects")
    _add_matrix(sp)
    sp.add_argument("--alpha", type=parse_scalar, required=True)
    sp.add_argument("--tol", type=float, default=_tol_default())
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("scan", help="naive vs correct values along a ray")
    _add_matrix(sp)
    sp.add_argument("--alpha", type=parse_scalar, required=True)
    sp.add_argument("--s-max", default="2")
    sp.add_argument("--points", type=int, default=101)
    sp.add_argument("--csv", action="store_true")
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("counterexample", help="reproduce the m = 3 worked example")
    sp.set_defaults(func=cmd_counterexample)

    sp = sub.add_parser("mc-verify", help="Monte Carlo check against quadrature")
    _add_matrix(sp)
    sp.add_argument("--alpha", type=parse_scalar, required=True)
    sp.add_argument("--n", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tol", type=float, default=_tol_default())
    sp.set_defaults(func=cmd_mc_verify)

    sp = sub.add_parser("sde-verify", help="Wishart SDE check of the Laplace transform")
    _add_matrix(sp)
    sp.add_argument("--alpha", type=parse_scalar, required=True)
    sp.add_argument("--dim", type=int)
    sp.add_argument("--steps", type=int, default=1000)
    sp.add_argument("--paths", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--t-end", type=float, default=1.0)
    sp.set_defaults(func=cmd_sde_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except ParseError as exc:  # raised by type=parse_scalar
        print(f"wishart-cf: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE
    start = time.perf_counter()
    try:
        report, code = args.func(args)
    except ShapeError as exc:
        print(f"wishart-cf: invalid shape parameter: {exc}", file=sys.stderr)
        return EXIT_SHAPE
    except (ParseError, WishartError, ValueError) as exc:
        print(f"wishart-cf: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    report.argv = argv
    report.version = __version__
    if args.timing:
        report.wall_time = time.perf_counter() - start
    if getattr(args, "csv", False):
        sys.stdout.write(scan_csv(report.results))
    else:
        print(report.to_json())
    return code


if __name__ == "__main__":
    sys.exit(main())
