"""Finite-sampling robustness certification with Hoeffding confidence bounds.

The certification procedure measures the classifier N times on the benign
input, lower-bounds the top-class probability as

    pA_lower = y_hat_kA - sqrt(-log(eps) / (2N)),

and, when pA_lower > 1/2, reports the certified radius
sqrt(1/2 - sqrt(pA_lower (1 - pA_lower))) together with the other applicable
bounds; otherwise it abstains.  A depolarization-smoothed variant samples the
smoothed input and reports the smoothed radii, which certify a ball around
the original (unsmoothed) state.

Sampling uses the counter-based Philox generator keyed by the caller's seed,
so certificates are bit-reproducible across runs and platforms.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from . import serialize
from .bounds import (
    BoundReport,
    bound_report,
    radius_depol_dp,
    radius_depol_hoelder,
    radius_depol_qht,
    smoothing_covers_everything,
)
from .classifier import Classifier, class_probabilities
from .helstrom import certify_condition
from .states import DensityMatrix, PureState, depolarize, is_rank_one

TOOL_VERSION = "0.1.0"


@dataclass(frozen=True)
class HoeffdingEstimate:
    """Confidence bounds on the top two class probabilities.

    ``k_a`` / ``k_b`` are indices into the counts vector (top and runner-up
    empirical classes, ties to the lower index).  ``clipped`` records whether
    either bound had to be clipped back into [0, 1].
    """

    pA_lower: float
    pB_upper: float
    k_a: int
    k_b: int
    clipped: bool


@dataclass(frozen=True)
class Certificate:
    """Outcome of a certification run.

    ``abstained`` is True exactly when pA_lower <= 1/2 (no radius is then
    reported).  ``radii`` carries every bound applicable to the operating
    point.  ``covers_all_states`` marks the smoothed regime in which the
    radius saturates at 1 and the certificate covers the whole state space.
    """

    label: object
    pA_lower: float
    pB_upper: float
    epsilon: float
    n_shots: int
    seed: int
    abstained: bool
    radii: BoundReport | None
    counts: tuple
    smoothing_p: float = 0.0
    mode: str = "protocol"
    clipped: bool = False
    covers_all_states: bool = False
    generic_fallback: bool = False
    classifier_hash: str = ""
    state_hash: str = ""


def hoeffding_margin(n_shots: int, epsilon: float) -> float:
    return math.sqrt(-math.log(epsilon) / (2.0 * n_shots))


def sample_outcomes(cl: Classifier, sigma: DensityMatrix, n_shots: int, seed: int) -> np.ndarray:
    """Counts of N i.i.d. measurement outcomes, ordered like ``cl.labels``.

    Identical (classifier, state, N, seed) always reproduce identical counts.
    """
    if n_shots < 1:
        raise ValueError("n_shots must be >= 1")
    probs = class_probabilities(cl, sigma)
    probs = probs / probs.sum()
    rng = np.random.Generator(np.random.Philox(seed))
    return rng.multinomial(n_shots, probs)


def hoeffding_bounds(counts, n_shots: int, epsilon: float) -> HoeffdingEstimate:
    """Lower/upper confidence bounds for the top two empirical classes."""
    counts = np.asarray(counts)
    if int(counts.sum()) != int(n_shots):
        raise ValueError("counts must sum to n_shots")
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must lie in (0, 1)")
    freq = counts / float(n_shots)
    order = np.lexsort((np.arange(len(freq)), -freq))
    k_a, k_b = int(order[0]), int(order[1])
    margin = hoeffding_margin(n_shots, epsilon)
    lower = freq[k_a] - margin
    upper = freq[k_b] + margin
    clipped = bool(lower < 0.0 or upper > 1.0)
    return HoeffdingEstimate(
        pA_lower=float(np.clip(lower, 0.0, 1.0)),
        pB_upper=float(np.clip(upper, 0.0, 1.0)),
        k_a=k_a,
        k_b=k_b,
        clipped=clipped,
    )


def _input_hashes(cl: Classifier, sigma: DensityMatrix) -> tuple[str, str]:
    return (
        serialize.content_hash(serialize.classifier_to_json(cl)),
        serialize.content_hash(serialize.density_to_json(sigma)),
    )


def certify(
    cl: Classifier,
    sigma: DensityMatrix,
    n_shots: int,
    epsilon: float,
    seed: int,
    mode: str = "protocol",
) -> Certificate:
    """Sampling-based certification of the prediction on a benign input.

    ``mode="protocol"`` follows the published procedure: pB is tied to
    1 - pA_lower and the run abstains when pA_lower <= 1/2.  The pure-state
    radius is reported only when sigma is rank one (second eigenvalue below
    1e-8); for mixed benign inputs only the duality radius applies.

    ``mode="extended"`` additionally Hoeffding-bounds the runner-up class and
    feeds (pA_lower, pB_upper) to the general bounds; it abstains when
    pA_lower <= pB_upper.  This mode is an extension beyond the published
    protocol and carries no tightness claim.
    """
    if mode not in ("protocol", "extended"):
        raise ValueError("mode must be 'protocol' or 'extended'")
    counts = sample_outcomes(cl, sigma, n_shots, seed)
    est = hoeffding_bounds(counts, n_shots, epsilon)
    label = cl.labels[est.k_a]
    pure = is_rank_one(sigma)
    cl_hash, st_hash = _input_hashes(cl, sigma)

    if mode == "protocol":
        abstained = est.pA_lower <= 0.5
        p_b = 1.0 - est.pA_lower
    else:
        abstained = est.pA_lower <= est.pB_upper
        p_b = est.pB_upper

    radii = None
    if not abstained:
        radii = bound_report(est.pA_lower, p_b, benign_pure=pure)
    return Certificate(
        label=label,
        pA_lower=est.pA_lower,
        pB_upper=p_b,
        epsilon=epsilon,
        n_shots=n_shots,
        seed=seed,
        abstained=abstained,
        radii=radii,
        counts=tuple(int(c) for c in counts),
        mode=mode,
        clipped=est.clipped,
        classifier_hash=cl_hash,
        state_hash=st_hash,
    )


def _smoothed_boundary_generic(sigma: DensityMatrix, p: float, p_a: float, steps: int = 40) -> float:
    """Boundary radius for smoothed pure pairs via the generic test condition.

    Bisects over the angle between sigma and a pure state in a fixed 2-plane;
    for pure pairs the condition depends only on the overlap, so the result is
    the trace distance (between unsmoothed states) below which certification
    holds.
    """
    psi = PureState.from_density(sigma)
    d = sigma.dim
    # Orthonormal partner spanning the 2-plane.
    k = int(np.argmin(np.abs(psi.amplitudes)))
    e = np.zeros(d, dtype=np.complex128)
    e[k] = 1.0
    partner = e - np.vdot(psi.amplitudes, e) * psi.amplitudes
    partner = partner / np.linalg.norm(partner)
    smoothed_sigma = depolarize(sigma, p)

    def robust(theta: float) -> bool:
        amps = np.cos(theta / 2.0) * psi.amplitudes + np.sin(theta / 2.0) * partner
        rho = depolarize(PureState(amps).density(), p)
        return certify_condition(smoothed_sigma, rho, p_a, 1.0 - p_a)

    lo, hi = 0.0, math.pi
    if robust(hi):
        return 1.0
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if robust(mid):
            lo = mid
        else:
            hi = mid
    theta = 0.5 * (lo + hi)
    return math.sin(theta / 2.0)


def certify_smoothed(
    cl: Classifier,
    sigma: DensityMatrix,
    p: float,
    n_shots: int,
    epsilon: float,
    seed: int,
) -> Certificate:
    """Certification with a depolarizing channel applied before the classifier.

    Samples the classifier on the smoothed input and reports radii in trace
    distance between the *unsmoothed* pure states.  Closed forms cover the
    single-qubit pure case; higher-dimensional pure inputs fall back to a
    bisection through the generic test condition (flagged in the result), and
    mixed inputs keep only the duality radius.
    """
    if not 0.0 < p < 1.0:
        raise ValueError("smoothing parameter p must lie in (0, 1)")
    smoothed = depolarize(sigma, p)
    counts = sample_outcomes(cl, smoothed, n_shots, seed)
    est = hoeffding_bounds(counts, n_shots, epsilon)
    label = cl.labels[est.k_a]
    pure = is_rank_one(sigma)
    cl_hash, st_hash = _input_hashes(cl, sigma)
    abstained = est.pA_lower <= 0.5

    radii = None
    covers_all = False
    fallback = False
    if not abstained:
        pa = est.pA_lower
        r_hoelder_p = radius_depol_hoelder(pa, p)
        r_qht_p = r_dp = None
        if pure and sigma.dim == 2:
            r_qht_p = radius_depol_qht(pa, p)
            r_dp = radius_depol_dp(pa, p)
            covers_all = smoothing_covers_everything(pa, p)
        elif pure:
            r_qht_p = _smoothed_boundary_generic(sigma, p, pa)
            fallback = True
        radii = BoundReport(
            p_a=pa,
            p_b=1.0 - pa,
            p=p,
            r_depol_qht=r_qht_p,
            r_depol_hoelder=r_hoelder_p,
            r_depol_dp=r_dp,
        )
    return Certificate(
        label=label,
        pA_lower=est.pA_lower,
        pB_upper=1.0 - est.pA_lower,
        epsilon=epsilon,
        n_shots=n_shots,
        seed=seed,
        abstained=abstained,
        radii=radii,
        counts=tuple(int(c) for c in counts),
        smoothing_p=p,
        clipped=est.clipped,
        covers_all_states=covers_all,
        generic_fallback=fallback,
        classifier_hash=cl_hash,
        state_hash=st_hash,
    )


def certificate_to_json(cert: Certificate) -> dict:
    """JSON record of a certificate, including tool version and input hashes."""
    obj = dataclasses.asdict(cert)
    obj["counts"] = list(cert.counts)
    obj["radii"] = None if cert.radii is None else dataclasses.asdict(cert.radii)
    obj["version"] = TOOL_VERSION
    return obj


def soundness_check(
    cert: Certificate,
    sigma: DensityMatrix,
    rho: DensityMatrix,
) -> bool:
    """Re-derive the robustness condition for a concrete adversarial state.

    Intended for auditing non-abstaining unsmoothed certificates: returns the
    generic condition evaluated at the certificate's operating point.
    """
    if cert.abstained or cert.radii is None:
        return False
    return certify_condition(sigma, rho, cert.pA_lower, cert.pB_upper)
