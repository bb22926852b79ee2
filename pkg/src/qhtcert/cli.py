"""Command-line front end.

Subcommands
-----------
certify        sample a classifier on a state and write a certificate JSON
bounds         print one CSV row with every closed-form radius at (pA, pB, p)
compare-pure   CSV grid of differences between the pure-state radii
compare-depol  CSV curves of the smoothed radii over (p, pA)
toy-example    check the worked single-qubit numbers against stored references
oracle         brute-force verifiers (min-beta, boundary, coverage)

Exit codes: 0 success / certificate, 2 ABSTAIN, 1 error (a JSON error record
is printed to stderr).  CSV output is byte-stable for fixed inputs and seed:
fixed header, fixed column order, 12-significant-digit formatting.

The environment variable QHT_CERT_THREADS caps BLAS-level parallelism (all
sweeps themselves run sequentially, so outputs never depend on it).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import bounds as bnd
from . import demo, oracle, serialize
from .certification import certificate_to_json, certify, certify_smoothed
from .errors import QhtcertError
from .helstrom import helstrom, tau
from .states import PureState

CSV_BOUND_COLUMNS = [
    "pA",
    "pB",
    "p",
    "r_qht_pure",
    "r_hoelder",
    "r_qht_pure_mixed_main",
    "r_qht_pure_mixed_appendix",
    "r_depol_qht",
    "r_depol_hoelder",
    "r_depol_dp",
]


def _fmt(x) -> str:
    if x is None:
        return ""
    return format(float(x), ".12g")


def _emit(lines, path: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _limit_threads() -> None:
    cap = os.environ.get("QHT_CERT_THREADS")
    if not cap:
        return
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(var, cap)


def _bound_row(p_a: float, p_b: float, p: float) -> str:
    report = bnd.bound_report(p_a, p_b, p)
    values = [
        report.p_a,
        report.p_b,
        report.p,
        report.r_qht_pure,
        report.r_hoelder,
        report.r_qht_pure_mixed_main,
        report.r_qht_pure_mixed_appendix,
        report.r_depol_qht,
        report.r_depol_hoelder,
        report.r_depol_dp,
    ]
    return ",".join(_fmt(v) for v in values)


def cmd_certify(args) -> int:
    cl = serialize.classifier_from_json(serialize.load_json(args.classifier))
    sigma = serialize.state_from_json(serialize.load_json(args.state))
    if args.smooth_p is not None:
        cert = certify_smoothed(cl, sigma, args.smooth_p, args.shots, args.epsilon, args.seed)
    else:
        cert = certify(cl, sigma, args.shots, args.epsilon, args.seed, mode=args.mode)
    record = certificate_to_json(cert)
    if args.output:
        serialize.save_json(record, args.output)
    else:
        sys.stdout.write(json.dumps(record, indent=2, sort_keys=True) + "\n")
    return 2 if cert.abstained else 0


def cmd_bounds(args) -> int:
    lines = [",".join(CSV_BOUND_COLUMNS), _bound_row(args.pA, args.pB, args.p)]
    _emit(lines, args.output)
    return 0


def cmd_compare_pure(args) -> int:
    n = args.grid
    header = "pA,pB,r_qht_pure,r_hoelder,d_qht_minus_hoelder,d_hoelder_minus_mixed_main,d_hoelder_minus_mixed_appendix"
    lines = [header]
    values = np.linspace(0.0, 1.0, n)
    for p_a in values:
        for p_b in values:
            if not p_b < p_a:
                continue
            r1 = bnd.radius_qht_pure(p_a, p_b)
            rh = bnd.radius_hoelder(p_a, p_b)
            r2m = bnd.radius_qht_pure_mixed(p_a, p_b, "main")
            r2a = bnd.radius_qht_pure_mixed(p_a, p_b, "appendix")
            lines.append(
                ",".join(_fmt(v) for v in (p_a, p_b, r1, rh, r1 - rh, rh - r2m, rh - r2a))
            )
    _emit(lines, args.output)
    return 0


def cmd_compare_depol(args) -> int:
    p_values = [float(tok) for tok in args.p.split(",") if tok]
    n = args.grid
    header = "p,pA,r_depol_qht,r_depol_hoelder,r_depol_dp"
    lines = [header]
    pa_values = [0.5 + (k + 1) * 0.5 / (n + 1) for k in range(n)]
    for p in p_values:
        for p_a in pa_values:
            lines.append(
                ",".join(
                    _fmt(v)
                    for v in (
                        p,
                        p_a,
                        bnd.radius_depol_qht(p_a, p),
                        bnd.radius_depol_hoelder(p_a, p),
                        bnd.radius_depol_dp(p_a, p),
                    )
                )
            )
    _emit(lines, args.output)
    return 0


def cmd_toy_example(args) -> int:
    refs = demo.reference_numbers()
    sigma = demo.benign_state().density()
    rho = demo.adversarial_state().density()
    t_generic = tau(rho, sigma, demo.ALPHA0)
    test = helstrom(rho, sigma, demo.ALPHA0)
    theta_boundary = 2.0 * math.asin(
        oracle.boundary_radius_search(
            demo.TOP_PROBABILITY, 1.0 - demo.TOP_PROBABILITY, demo.benign_state(), seed=args.seed
        )
    )
    checks = [
        ("t_threshold", t_generic, refs["t_threshold"], 1e-6),
        ("beta_type2", test.beta, refs["beta"], 1e-6),
        ("beta_vs_rounded_0.44", test.beta, refs["beta_rounded"], 0.01),
        ("theta_max", theta_boundary, refs["theta_max"], 1e-3),
    ]
    all_ok = True
    for name, got, want, tol in checks:
        ok = abs(got - want) <= tol
        all_ok &= ok
        print(f"{name}: computed={got:.6f} reference={want:.6f} tol={tol:g} {'PASS' if ok else 'FAIL'}")
    return 0 if all_ok else 1


def cmd_oracle(args) -> int:
    if args.oracle_cmd == "min-beta":
        sigma = serialize.state_from_json(serialize.load_json(args.null))
        rho = serialize.state_from_json(serialize.load_json(args.alt))
        report = oracle.brute_force_min_beta(sigma, rho, args.alpha0, args.samples, args.seed)
        print(json.dumps({
            "best_value": report.best_value,
            "argmin_description": report.argmin_description,
            "samples_used": report.samples_used,
            "seed": report.seed,
        }, indent=2, sort_keys=True))
    elif args.oracle_cmd == "boundary":
        reference = PureState([1.0, 0.0])
        if args.reference:
            mat = serialize.state_from_json(serialize.load_json(args.reference))
            reference = PureState.from_density(mat)
        radius = oracle.boundary_radius_search(args.pA, args.pB, reference, args.samples, args.seed)
        print(json.dumps({
            "trace_distance": radius,
            "theta": 2.0 * math.asin(min(radius, 1.0)),
        }, indent=2, sort_keys=True))
    else:
        cl = serialize.classifier_from_json(serialize.load_json(args.classifier))
        sigma = serialize.state_from_json(serialize.load_json(args.state))
        cov = oracle.hoeffding_coverage(cl, sigma, args.trials, args.shots, args.epsilon, args.seed)
        print(json.dumps({"coverage": cov, "epsilon": args.epsilon}, indent=2, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qhtcert",
        description="Certify adversarial robustness of quantum classifiers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", help="sample a classifier and emit a certificate (exit 2 on ABSTAIN)")
    p.add_argument("--classifier", required=True, help="classifier JSON file")
    p.add_argument("--state", required=True, help="benign state JSON file (density or pure)")
    p.add_argument("--shots", type=int, required=True, help="number of measurement shots N")
    p.add_argument("--epsilon", type=float, required=True, help="confidence parameter in (0, 1)")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (counter-based Philox)")
    p.add_argument("--smooth-p", type=float, default=None, help="depolarization smoothing parameter")
    p.add_argument("--mode", choices=("protocol", "extended"), default="protocol")
    p.add_argument("--output", default=None, help="write certificate JSON here instead of stdout")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("bounds", help="one CSV row of closed-form radii at (pA, pB, p)")
    p.add_argument("--pA", type=float, required=True)
    p.add_argument("--pB", type=float, required=True)
    p.add_argument("--p", type=float, default=0.0, help="depolarization parameter (0 = unsmoothed)")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("compare-pure", help="CSV difference grids of the pure-state radii")
    p.add_argument("--grid", type=int, default=100, help="grid resolution per axis")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_compare_pure)

    p = sub.add_parser("compare-depol", help="CSV curves of the smoothed radii over (p, pA)")
    p.add_argument(
        "--p",
        default="0.05,0.15,0.25,0.35,0.45,0.55,0.65,0.75,0.85,0.95",
        help="comma-separated depolarization parameters",
    )
    p.add_argument("--grid", type=int, default=99, help="number of pA points in (0.5, 1)")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_compare_depol)

    p = sub.add_parser("toy-example", help="check the worked single-qubit numbers (PASS/FAIL)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_toy_example)

    p = sub.add_parser("oracle", help="brute-force verifiers")
    osub = p.add_subparsers(dest="oracle_cmd", required=True)

    q = osub.add_parser("min-beta", help="random search for the minimal type-II error")
    q.add_argument("--null", required=True, help="null-hypothesis state JSON (benign)")
    q.add_argument("--alt", required=True, help="alternative state JSON (adversarial)")
    q.add_argument("--alpha0", type=float, required=True)
    q.add_argument("--samples", type=int, default=100_000)
    q.add_argument("--seed", type=int, default=0)

    q = osub.add_parser("boundary", help="bisection for the certified-radius boundary")
    q.add_argument("--pA", type=float, required=True)
    q.add_argument("--pB", type=float, required=True)
    q.add_argument("--reference", default=None, help="pure reference state JSON (default |0>)")
    q.add_argument("--samples", type=int, default=60, help="bisection steps")
    q.add_argument("--seed", type=int, default=0)

    q = osub.add_parser("coverage", help="empirical coverage of the confidence bound")
    q.add_argument("--classifier", required=True)
    q.add_argument("--state", required=True)
    q.add_argument("--trials", type=int, default=10_000)
    q.add_argument("--shots", type=int, default=1_000)
    q.add_argument("--epsilon", type=float, default=0.05)
    q.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    _limit_threads()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (QhtcertError, ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        record = {"error": type(exc).__name__, "message": str(exc)}
        sys.stderr.write(json.dumps(record, sort_keys=True) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
