#!/usr/bin/env python3
"""End-to-end run of the worked single-qubit example.

Prints the hypothesis-testing view (threshold, type-II error), the
classification view (certified angle), and a finite-sampling certificate for
the demo classifier.
"""

import argparse
import math

from qhtcert import (
    boundary_radius_search,
    certify,
    helstrom,
    predict,
    tau,
)
from qhtcert import demo


def run(seed: int, shots: int, epsilon: float) -> None:
    sigma = demo.benign_state().density()
    rho = demo.adversarial_state().density()
    refs = demo.reference_numbers()

    print("== hypothesis-testing view ==")
    t = tau(rho, sigma, demo.ALPHA0)
    test = helstrom(rho, sigma, demo.ALPHA0)
    print(f"threshold t            : {t:.10f} (analytic {refs['t_threshold']:.10f})")
    print(f"type-I error attained  : {test.alpha:.10f} (requested {demo.ALPHA0})")
    print(f"minimal type-II error  : {test.beta:.10f} (analytic {refs['beta']:.10f})")
    print(f"robust (beta > 1/2)?   : {test.beta > 0.5}")

    print("\n== classification view ==")
    radius = boundary_radius_search(demo.TOP_PROBABILITY, 1 - demo.TOP_PROBABILITY,
                                    demo.benign_state(), seed=seed)
    print(f"certified trace radius : {radius:.10f} (analytic {refs['radius']:.10f})")
    print(f"certified angle        : {2 * math.asin(radius):.10f} (analytic {refs['theta_max']:.10f})")

    print("\n== demo classifier ==")
    cl = demo.hemisphere_classifier()
    pred = predict(cl, rho)
    print(f"prediction on adversarial state: class {pred.label} "
          f"(probabilities {pred.probabilities.round(6)})")

    print("\n== finite-sampling certificate ==")
    cert = certify(cl, sigma, shots, epsilon, seed)
    print(f"label={cert.label} pA_lower={cert.pA_lower:.6f} abstained={cert.abstained}")
    if cert.radii is not None:
        print(f"R_qht_pure={cert.radii.r_qht_pure:.6f} R_hoelder={cert.radii.r_hoelder:.6f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--shots", type=int, default=100_000)
    ap.add_argument("--epsilon", type=float, default=0.001)
    args = ap.parse_args()
    run(args.seed, args.shots, args.epsilon)
