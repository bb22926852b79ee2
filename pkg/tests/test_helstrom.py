import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qhtcert import (
    PureState,
    certify_condition,
    error_probabilities,
    helstrom,
    pure_beta_closed_form,
    random_density,
    random_pure,
    signed_projections,
    tau,
)
from qhtcert.errors import (
    DimMismatch,
    InvalidProbabilityOrder,
    InvalidTestOperator,
    NegativeT,
)
from qhtcert.helstrom import _alpha_plus
from qhtcert.oracle import sample_test_operators
from qhtcert import demo

from conftest import philox

SIGMA = demo.benign_state().density()
RHO = demo.adversarial_state().density()
OVERLAP_SQ = 0.75


# ---------------------------------------------------------------------------
# independent oracles


def tau_closed_form(overlap_sq: float, alpha0: float) -> float:
    """Threshold for pure pairs, solved analytically from the 2x2 eigenproblem."""
    if alpha0 >= overlap_sq:
        return 0.0
    return 2.0 * overlap_sq - 1.0 - (2.0 * alpha0 - 1.0) * math.sqrt(
        overlap_sq * (1.0 - overlap_sq) / (alpha0 * (1.0 - alpha0))
    )


def tau_grid_scan(rho, sigma, alpha0, t_max=8.0, steps=4000) -> float:
    """Coarse independent location of inf{t : alpha(P_plus(t)) <= alpha0}."""
    ts = np.linspace(0.0, t_max, steps)
    for t in ts:
        if _alpha_plus(rho, sigma, float(t), 1e-8) <= alpha0:
            return float(t)
    return math.inf


def test_tau_bisection_matches_grid_scan(rng):
    for _ in range(5):
        a, b = random_pure(2, rng).density(), random_pure(2, rng).density()
        for alpha0 in (0.1, 0.35, 0.7):
            t_scan = tau_grid_scan(a, b, alpha0)
            if math.isinf(t_scan):
                continue
            assert tau(a, b, alpha0) == pytest.approx(t_scan, abs=8.0 / 4000 + 1e-9)


# ---------------------------------------------------------------------------
# signed projections


def test_t_zero_has_no_negative_part(rng):
    proj = signed_projections(random_density(3, rng), random_density(3, rng), 0.0)
    assert np.allclose(proj.p_minus, 0.0, atol=1e-12)


@pytest.mark.parametrize("t", [0.5, 1.0, 1.6547, 3.0])
def test_pure_pair_positive_part_is_rank_one(t):
    proj = signed_projections(RHO, SIGMA, t)
    assert np.trace(proj.p_plus).real == pytest.approx(1.0, abs=1e-9)


@given(seed=st.integers(0, 2**32 - 1), d=st.sampled_from([2, 3, 4]), t=st.floats(0.0, 5.0))
@settings(max_examples=40, deadline=None)
def test_projections_are_complete_and_orthogonal(seed, d, t):
    rng = philox(seed)
    proj = signed_projections(random_density(d, rng), random_density(d, rng), t)
    total = proj.p_plus + proj.p_zero + proj.p_minus
    assert np.allclose(total, np.eye(d), atol=1e-10)
    assert np.allclose(proj.p_plus @ proj.p_plus, proj.p_plus, atol=1e-9)
    assert np.allclose(proj.p_plus @ proj.p_minus, 0.0, atol=1e-9)


def test_signed_projections_input_errors(rng):
    with pytest.raises(NegativeT):
        signed_projections(SIGMA, RHO, -0.1)
    with pytest.raises(DimMismatch):
        signed_projections(SIGMA, random_density(3, rng), 1.0)


# ---------------------------------------------------------------------------
# error probabilities


def test_error_probabilities_extremes():
    assert error_probabilities(np.zeros((2, 2)), SIGMA, RHO) == (0.0, 1.0)
    assert error_probabilities(np.eye(2), SIGMA, RHO) == (1.0, 0.0)


def test_error_probabilities_of_optimal_demo_test():
    test = helstrom(RHO, SIGMA, 0.1)
    alpha, beta = error_probabilities(test.m, SIGMA, RHO)
    assert alpha == pytest.approx(0.1, abs=1e-9)
    assert beta == pytest.approx(0.44019237886467, abs=1e-8)


def test_error_probabilities_rejects_bad_operator():
    with pytest.raises(InvalidTestOperator):
        error_probabilities(np.eye(2) * 1.5, SIGMA, RHO)
    with pytest.raises(InvalidTestOperator):
        error_probabilities(np.array([[0.5, 0.4], [0.0, 0.5]]), SIGMA, RHO)


# ---------------------------------------------------------------------------
# tau


def test_tau_demo_value():
    want = tau_closed_form(OVERLAP_SQ, 0.1)
    assert want == pytest.approx(1.6547005383793, abs=1e-10)
    assert tau(RHO, SIGMA, 0.1) == pytest.approx(want, abs=1e-9)


def test_tau_zero_when_level_above_overlap():
    # At alpha0 = |gamma|^2 exactly, roundoff may push the search one bracket
    # width above the true threshold 0.
    assert tau(RHO, SIGMA, 0.75) == pytest.approx(0.0, abs=1e-9)
    assert tau(RHO, SIGMA, 0.9) == 0.0


def test_tau_equal_states_is_one(rng):
    dm = random_density(3, rng)
    for alpha0 in (0.1, 0.5, 0.9):
        assert tau(dm, dm, alpha0) == pytest.approx(1.0, abs=1e-9)


@given(seed=st.integers(0, 2**32 - 1), alpha0=st.floats(0.02, 0.98))
@settings(max_examples=30, deadline=None)
def test_tau_matches_closed_form_for_pure_pairs(seed, alpha0):
    rng = philox(seed)
    a, b = random_pure(2, rng), random_pure(2, rng)
    g2 = abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2
    if g2 > 0.999 or abs(g2 - alpha0) < 1e-3:
        return
    got = tau(b.density(), a.density(), alpha0)
    assert got == pytest.approx(tau_closed_form(g2, alpha0), abs=1e-7)


# ---------------------------------------------------------------------------
# helstrom construction


def test_helstrom_demo_beta():
    test = helstrom(RHO, SIGMA, 0.1)
    beta_closed, _ = pure_beta_closed_form(OVERLAP_SQ, 0.9, 0.1)
    assert test.beta == pytest.approx(beta_closed, abs=1e-8)
    assert test.beta == pytest.approx(0.44, abs=0.005)


def test_helstrom_equal_states():
    test = helstrom(SIGMA, SIGMA, 0.1)
    assert test.t == pytest.approx(1.0, abs=1e-9)
    assert test.alpha == pytest.approx(0.1, abs=1e-9)
    assert test.beta == pytest.approx(0.9, abs=1e-9)
    assert np.allclose(test.m, 0.1 * np.eye(2), atol=1e-9)


@pytest.mark.parametrize("alpha0", [0.0, 0.3, 1.0])
def test_helstrom_orthogonal_states_have_zero_beta(alpha0):
    one = PureState([0.0, 1.0]).density()
    test = helstrom(one, SIGMA, alpha0)
    assert test.beta == pytest.approx(0.0, abs=1e-9)


def test_helstrom_degenerate_levels():
    full = helstrom(RHO, SIGMA, 1.0)
    assert full.alpha == 1.0 and full.beta == 0.0
    none = helstrom(RHO, SIGMA, 0.0)
    assert none.alpha <= 1e-9
    # At alpha = 0 the best achievable beta for pure pairs is the overlap.
    assert none.beta == pytest.approx(OVERLAP_SQ, abs=1e-4)


def test_helstrom_operator_structure():
    test = helstrom(RHO, SIGMA, 0.1)
    proj = test.projections
    rebuilt = proj.p_plus + test.q0 * proj.p_zero
    assert np.allclose(test.m, rebuilt, atol=1e-10)
    w = np.linalg.eigvalsh(test.m)
    assert w[0] > -1e-9 and w[-1] < 1.0 + 1e-9


@given(seed=st.integers(0, 2**32 - 1), d=st.sampled_from([2, 3, 4]), alpha0=st.floats(0.02, 0.98))
@settings(max_examples=40, deadline=None)
def test_helstrom_attains_requested_alpha(seed, d, alpha0):
    rng = philox(seed)
    test = helstrom(random_density(d, rng), random_density(d, rng), alpha0)
    assert test.alpha == pytest.approx(alpha0, abs=1e-9)


def test_sandwich_inequalities(rng):
    for d in (2, 3, 4):
        for _ in range(6):
            a, b = random_density(d, rng), random_density(d, rng)
            for alpha0 in (0.1, 0.3, 0.5, 0.7, 0.9):
                test = helstrom(a, b, alpha0)
                proj = test.projections
                a_plus = float(np.real(np.trace(b.matrix @ proj.p_plus)))
                a_zero = float(np.real(np.trace(b.matrix @ proj.p_zero)))
                assert a_plus <= alpha0 + 1e-9
                assert a_plus + a_zero >= alpha0 - 1e-9


def test_alpha_plus_monotone_in_t(rng):
    for d in (2, 3, 4):
        for _ in range(6):
            a, b = random_density(d, rng), random_density(d, rng)
            ts = np.sort(rng.uniform(0.0, 4.0, size=6))
            plus = [_alpha_plus(a, b, float(t), 1e-8) for t in ts]
            for lo, hi in zip(plus[1:], plus[:-1]):
                assert lo <= hi + 1e-9
            keep = [
                float(np.real(np.trace(b.matrix @ (
                    signed_projections(a, b, float(t)).p_plus
                    + signed_projections(a, b, float(t)).p_zero
                ))))
                for t in ts
            ]
            for lo, hi in zip(keep[1:], keep[:-1]):
                assert lo <= hi + 1e-9


def test_optimality_against_random_tests(rng):
    # No valid test with alpha(M) <= alpha0 may undercut the constructed beta,
    # and any test with alpha(M) >= 1 - alpha0 obeys 1 - beta(M) >= beta*.
    for d in (2, 3):
        for _ in range(4):
            a, b = random_density(d, rng), random_density(d, rng)
            for alpha0 in (0.1, 0.4, 0.8):
                best = helstrom(a, b, alpha0)
                for frac in (0.2, 0.7, 1.0):
                    target = max(alpha0 * frac - 1e-6, 0.0)
                    ms = sample_test_operators(d, 200, target, b.matrix, rng)
                    betas = 1.0 - np.real(np.einsum("ij,nji->n", a.matrix, ms))
                    assert betas.min() >= best.beta - 1e-8
                target2 = min(1.0 - alpha0 + 1e-6 + 0.1 * alpha0, 1.0)
                ms = sample_test_operators(d, 200, target2, b.matrix, rng)
                betas = 1.0 - np.real(np.einsum("ij,nji->n", a.matrix, ms))
                assert np.all(1.0 - betas >= best.beta - 1e-8)


@given(seed=st.integers(0, 2**32 - 1), p_a=st.floats(0.55, 0.99))
@settings(max_examples=30, deadline=None)
def test_generic_beta_matches_pure_closed_form(seed, p_a):
    rng = philox(seed)
    a, b = random_pure(2, rng), random_pure(2, rng)
    g2 = abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2
    p_b = 1.0 - p_a
    if g2 <= max(p_b, 1.0 - p_a) + 1e-3 or g2 > 0.999:
        return
    beta_a, beta_b = pure_beta_closed_form(g2, p_a, p_b)
    got_a = helstrom(b.density(), a.density(), 1.0 - p_a).beta
    got_b = helstrom(b.density(), a.density(), p_b).beta
    assert got_a == pytest.approx(beta_a, abs=1e-8)
    assert got_b == pytest.approx(beta_b, abs=1e-8)


# ---------------------------------------------------------------------------
# robustness condition


def test_condition_examples():
    assert certify_condition(SIGMA, RHO, 0.9, 0.1) is False
    closer = demo.adversarial_state(0.9).density()
    assert certify_condition(SIGMA, closer, 0.9, 0.1) is True
    assert certify_condition(SIGMA, SIGMA, 0.9, 0.1) is True


def test_condition_rejects_bad_order():
    with pytest.raises(InvalidProbabilityOrder):
        certify_condition(SIGMA, RHO, 0.4, 0.6)
    with pytest.raises(InvalidProbabilityOrder):
        certify_condition(SIGMA, RHO, 0.5, 0.5)
