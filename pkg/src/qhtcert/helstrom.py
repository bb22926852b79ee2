"""Optimal binary quantum hypothesis tests with a preassigned type-I error.

The null hypothesis is the benign state sigma, the alternative the adversarial
state rho.  A test is an operator 0 <= M <= 1 with error rates

    alpha(M) = Tr[sigma M]        (reject the null although it is true)
    beta(M)  = Tr[rho (1 - M)]    (accept the null although rho is true)

The minimizer of beta at fixed alpha is assembled from the eigenprojections of
rho - t*sigma: M = P_plus(t) + q0 * P_zero(t), with t the smallest value at
which alpha(P_plus) drops to the requested level and q0 a scalar mixing weight
on the zero eigenspace.  t is located by doubling-then-bisection, which is
sound because t -> alpha(P_plus(t)) is non-increasing and right-continuous.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimMismatch,
    InvalidProbabilityOrder,
    InvalidTestOperator,
    NegativeT,
    SandwichViolated,
)
from .states import TOL_PSD, DensityMatrix, hermitian_residual

# Relative zero-classification threshold for eigenvalues of rho - t*sigma.
DEFAULT_LAMBDA_TOL = 1e-8

# Absolute eigenvalue floor, scaled by (1 + t): when rho - t*sigma itself
# vanishes (e.g. rho = sigma at t = 1) its operator norm no longer provides a
# usable scale, so roundoff-sized eigenvalues must still land in P_zero.
EIG_FLOOR = 1e-13

# Relative bracket width at which the bisection for t stops.
T_TOL = 1e-12

# Stand-in level when the requested type-I error is exactly zero; the true
# infimum sits at t -> infinity for non-orthogonal rank-deficient pairs.
ZERO_LEVEL = 1e-12

# Tolerance for the bracketing inequalities alpha(P_+) <= a0 <= alpha(P_+ + P_0).
SANDWICH_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class SignedProjections:
    """Orthogonal projections onto the positive / zero / negative eigenspaces
    of rho - t*sigma."""

    t: float
    p_plus: np.ndarray
    p_zero: np.ndarray
    p_minus: np.ndarray
    lambda_tol: float


@dataclass(frozen=True, eq=False)
class HelstromTest:
    """An optimal test M = P_plus + q0 * P_zero attaining alpha = alpha0."""

    m: np.ndarray
    t: float
    q0: float
    alpha: float
    beta: float
    projections: SignedProjections


def _eig_difference(rho: DensityMatrix, sigma: DensityMatrix, t: float):
    a = rho.matrix - t * sigma.matrix
    w, v = np.linalg.eigh(a)
    return w, v


def _zero_threshold(w: np.ndarray, t: float, lambda_tol: float, eig_floor: float = EIG_FLOOR) -> float:
    op_norm = float(np.max(np.abs(w))) if w.size else 0.0
    return max(lambda_tol * op_norm, eig_floor * (1.0 + t))


def _alpha_plus(rho: DensityMatrix, sigma: DensityMatrix, t: float, lambda_tol: float) -> float:
    """alpha(P_plus(t)) without assembling the projector."""
    w, v = _eig_difference(rho, sigma, t)
    thr = _zero_threshold(w, t, lambda_tol)
    mask = w > thr
    if not np.any(mask):
        return 0.0
    sv = sigma.matrix @ v[:, mask]
    return float(np.real(np.sum(v[:, mask].conj() * sv)))


def signed_projections(
    rho: DensityMatrix,
    sigma: DensityMatrix,
    t: float,
    lambda_tol: float = DEFAULT_LAMBDA_TOL,
    eig_floor: float = EIG_FLOOR,
) -> SignedProjections:
    """Classify the spectrum of rho - t*sigma into +/0/- eigenspaces.

    Eigenvalues with |lambda| <= lambda_tol * ||rho - t*sigma||_op are
    assigned to the zero space (with an absolute floor guarding the
    vanishing-difference case).
    """
    if rho.dim != sigma.dim:
        raise DimMismatch(f"dimensions differ: {rho.dim} vs {sigma.dim}")
    if t < 0:
        raise NegativeT(f"t must be non-negative, got {t}")
    if lambda_tol <= 0:
        raise ValueError("lambda_tol must be positive")
    w, v = _eig_difference(rho, sigma, t)
    thr = _zero_threshold(w, t, lambda_tol, eig_floor)
    d = rho.dim

    def proj(mask: np.ndarray) -> np.ndarray:
        if not np.any(mask):
            return np.zeros((d, d), dtype=np.complex128)
        cols = v[:, mask]
        return cols @ cols.conj().T

    plus = proj(w > thr)
    minus = proj(w < -thr)
    zero = np.eye(d) - plus - minus
    return SignedProjections(t=float(t), p_plus=plus, p_zero=zero, p_minus=minus, lambda_tol=lambda_tol)


def error_probabilities(m, sigma: DensityMatrix, rho: DensityMatrix):
    """(alpha, beta) of the test operator M against null sigma / alternative rho."""
    mat = np.asarray(m, dtype=np.complex128)
    if mat.shape != (sigma.dim, sigma.dim) or rho.dim != sigma.dim:
        raise DimMismatch("test operator and states must share one dimension")
    res = hermitian_residual(mat)
    if res > 1e-8:
        raise InvalidTestOperator("test operator is not Hermitian", residual=res)
    w = np.linalg.eigvalsh((mat + mat.conj().T) / 2.0)
    if w[0] < -TOL_PSD or w[-1] > 1.0 + TOL_PSD:
        raise InvalidTestOperator(
            "test operator eigenvalues outside [0, 1]",
            residual=float(max(-w[0], w[-1] - 1.0)),
        )
    alpha = float(np.clip(np.real(np.trace(sigma.matrix @ mat)), 0.0, 1.0))
    beta = float(np.clip(1.0 - np.real(np.trace(rho.matrix @ mat)), 0.0, 1.0))
    return alpha, beta


def _tau_search(
    rho: DensityMatrix,
    sigma: DensityMatrix,
    level: float,
    lambda_tol: float,
    t_tol: float = T_TOL,
) -> float:
    """Smallest t >= 0 with alpha(P_plus(t)) <= level, by doubling + bisection."""

    def pred(t: float) -> bool:
        return _alpha_plus(rho, sigma, t, lambda_tol) <= level

    if pred(0.0):
        return 0.0
    lo, hi = 0.0, 1.0
    if not pred(hi):
        lo = hi
        while True:
            hi *= 2.0
            if pred(hi):
                break
            lo = hi
            if hi > 2.0**100:
                raise SandwichViolated(
                    f"no t <= 2^100 reaches type-I error level {level}"
                )
    while hi - lo > t_tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


def tau(rho: DensityMatrix, sigma: DensityMatrix, alpha0: float, *, lambda_tol: float = DEFAULT_LAMBDA_TOL) -> float:
    """The threshold tau(alpha0) = inf{t >= 0 : alpha(P_plus(t)) <= alpha0}."""
    if not 0.0 < alpha0 < 1.0:
        raise ValueError("alpha0 must lie strictly between 0 and 1")
    if rho.dim != sigma.dim:
        raise DimMismatch(f"dimensions differ: {rho.dim} vs {sigma.dim}")
    return _tau_search(rho, sigma, alpha0, lambda_tol)


def helstrom(
    rho: DensityMatrix,
    sigma: DensityMatrix,
    alpha0: float,
    *,
    lambda_tol: float = DEFAULT_LAMBDA_TOL,
) -> HelstromTest:
    """Optimal test for null sigma vs alternative rho at type-I error alpha0.

    Returns the operator M = P_plus + q0 * P_zero at t = tau(alpha0) with
    q0 = (alpha0 - alpha(P_plus)) / alpha(P_zero) when the zero space carries
    weight, so that alpha(M) = alpha0 exactly; beta(M) is then the minimal
    type-II error among all tests with alpha <= alpha0.

    alpha0 = 1 returns M = 1 (t = 0, q0 = 1); alpha0 = 0 returns the bare
    positive projection at a large threshold, attaining alpha below 1e-12.
    """
    if rho.dim != sigma.dim:
        raise DimMismatch(f"dimensions differ: {rho.dim} vs {sigma.dim}")
    if not 0.0 <= alpha0 <= 1.0:
        raise ValueError("alpha0 must lie in [0, 1]")

    if alpha0 >= 1.0:
        proj = signed_projections(rho, sigma, 0.0, lambda_tol)
        m = np.eye(rho.dim, dtype=np.complex128)
        alpha, beta = error_probabilities(m, sigma, rho)
        return HelstromTest(m=m, t=0.0, q0=1.0, alpha=alpha, beta=beta, projections=proj)

    level = alpha0 if alpha0 > 0.0 else ZERO_LEVEL

    # Near the crossing the separating eigenvalue is numerically small but not
    # exactly zero; widen the zero-classification band until the bracketing
    # inequalities hold.  The relative ladder handles ordinary crossings; the
    # absolute-floor ladder handles near-identical state pairs, where the
    # projection rotates steeply in t without any eigenvalue crossing and the
    # attainable beta error stays O(d * floor).  If neither works at the
    # standard bracket width, refine t to machine precision and retry.
    ladder = []
    rel = lambda_tol
    while rel <= 1e-4:
        ladder.append((rel, EIG_FLOOR))
        rel *= 10.0
    floor = EIG_FLOOR * 10.0
    while floor <= 1e-7:
        ladder.append((1e-4, floor))
        floor *= 10.0

    t = proj = a_plus = a_zero = None
    for t_tol in (T_TOL, 4e-16):
        t = _tau_search(rho, sigma, level, lambda_tol, t_tol)
        for rel, floor in ladder:
            proj = signed_projections(rho, sigma, t, rel, floor)
            a_plus = float(np.real(np.trace(sigma.matrix @ proj.p_plus)))
            a_zero = float(np.real(np.trace(sigma.matrix @ proj.p_zero)))
            if a_plus <= alpha0 + SANDWICH_TOL and a_plus + a_zero >= alpha0 - SANDWICH_TOL:
                break
        else:
            continue
        break
    else:
        raise SandwichViolated(
            f"alpha(P_+)={a_plus:.3e}, alpha(P_+ + P_0)={a_plus + a_zero:.3e} "
            f"do not bracket alpha0={alpha0:.3e} at t={t:.6e}"
        )

    if a_zero > 0.0:
        q0 = float(np.clip((alpha0 - a_plus) / a_zero, 0.0, 1.0))
    else:
        q0 = 0.0
    m = proj.p_plus + q0 * proj.p_zero
    m = (m + m.conj().T) / 2.0
    alpha, beta = error_probabilities(m, sigma, rho)
    return HelstromTest(m=m, t=t, q0=q0, alpha=alpha, beta=beta, projections=proj)


def certify_condition(sigma: DensityMatrix, rho: DensityMatrix, p_a: float, p_b: float) -> bool:
    """Robustness condition from optimal testing.

    Builds the optimal tests M_A (alpha = 1 - p_a) and M_B (alpha = p_b) for
    null sigma vs alternative rho and returns whether
    beta(M_A) + beta(M_B) > 1.  When true, every classifier whose top class on
    sigma has probability >= p_a and runner-up <= p_b must assign rho the same
    top class.
    """
    if not (0.0 <= p_b < p_a <= 1.0):
        raise InvalidProbabilityOrder(f"need 0 <= pB < pA <= 1, got pA={p_a}, pB={p_b}")
    test_a = helstrom(rho, sigma, 1.0 - p_a)
    if p_b == 1.0 - p_a:
        # Equal type-I levels give the identical optimal test.
        return bool(2.0 * test_a.beta > 1.0)
    test_b = helstrom(rho, sigma, p_b)
    return bool(test_a.beta + test_b.beta > 1.0)
