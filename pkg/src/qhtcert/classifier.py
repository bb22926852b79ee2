"""Quantum classifiers: a channel followed by a multi-outcome measurement.

A classifier maps a state sigma to class probabilities
y_k = Tr[Pi_k E(sigma)] and predicts the argmax class.  The Heisenberg-picture
dual POVM F_k = E^dag(Pi_k) lets the classifier be read as a family of
hypothesis tests, which is what connects it to the certification machinery.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, OutOfRegime
from .helstrom import helstrom
from .states import Channel, DensityMatrix, Povm, apply_channel, identity_kraus


@dataclass(frozen=True, eq=False)
class Classifier:
    """A CPTP channel plus a POVM with one element per class label."""

    channel: Channel
    povm: Povm
    labels: tuple = None

    def __post_init__(self):
        labels = self.labels
        labels = self.povm.labels if labels is None else tuple(labels)
        if len(labels) != len(self.povm.elements):
            raise ValueError("one label per POVM element required")
        if len(labels) < 2:
            raise ValueError("a classifier needs at least two classes")
        if self.channel.dim_out != self.povm.dim:
            raise DimMismatch(
                f"channel output dim {self.channel.dim_out} != POVM dim {self.povm.dim}"
            )
        object.__setattr__(self, "labels", labels)

    @property
    def dim_in(self) -> int:
        return self.channel.dim_in

    @property
    def n_classes(self) -> int:
        return len(self.labels)


@dataclass(frozen=True, eq=False)
class Prediction:
    """Argmax prediction with the full probability vector and the runner-up."""

    label: object
    probabilities: np.ndarray
    runner_up: object


def class_probabilities(cl: Classifier, sigma: DensityMatrix) -> np.ndarray:
    """y_k = Tr[Pi_k E(sigma)], ordered like ``cl.labels``."""
    if cl.dim_in != sigma.dim:
        raise DimMismatch(f"classifier expects dim {cl.dim_in}, state has dim {sigma.dim}")
    evolved = apply_channel(cl.channel, sigma)
    probs = np.array(
        [np.real(np.trace(e @ evolved.matrix)) for e in cl.povm.elements], dtype=float
    )
    probs = np.clip(probs, 0.0, 1.0)
    total = probs.sum()
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"class probabilities sum to {total}, not 1")
    return probs


def predict(cl: Classifier, sigma: DensityMatrix) -> Prediction:
    """Most likely class; exact ties go to the lowest label index."""
    probs = class_probabilities(cl, sigma)
    order = np.lexsort((np.arange(len(probs)), -probs))
    return Prediction(
        label=cl.labels[order[0]],
        probabilities=probs,
        runner_up=cl.labels[order[1]],
    )


def heisenberg_povm(cl: Classifier) -> Povm:
    """Dual measurement F_k = sum_i K_i^dag Pi_k K_i acting on input states.

    Satisfies Tr[F_k sigma] = y_k(sigma) and sum_k F_k = 1.
    """
    duals = []
    for e in cl.povm.elements:
        f = sum(k.conj().T @ e @ k for k in cl.channel.kraus)
        duals.append((f + f.conj().T) / 2.0)
    return Povm(tuple(duals), cl.labels)


def worst_case_classifier(
    sigma: DensityMatrix,
    rho: DensityMatrix,
    p_a: float,
    k_a,
    k_b,
    labels: tuple = None,
) -> Classifier:
    """The classifier that saturates the robustness condition at p_b = 1 - p_a.

    With M the optimal test at type-I error 1 - p_a, the POVM assigns
    Pi_{k_a} = 1 - M and Pi_{k_b} = M (zero operators for any other class in
    ``labels``).  It reproduces (p_a, 1 - p_a) on sigma, and whenever the
    robustness condition fails for rho it predicts k_b there.
    """
    if not 0.5 < p_a <= 1.0:
        raise OutOfRegime(f"requires pA > 1/2, got {p_a}")
    if k_a == k_b:
        raise ValueError("k_a and k_b must differ")
    if labels is None:
        try:
            labels = tuple(sorted((k_a, k_b)))
        except TypeError:
            labels = (k_a, k_b)
    if k_a not in labels or k_b not in labels:
        raise ValueError("labels must contain both k_a and k_b")
    test = helstrom(rho, sigma, 1.0 - p_a)
    d = sigma.dim
    elements = []
    for lab in labels:
        if lab == k_a:
            elements.append(np.eye(d) - test.m)
        elif lab == k_b:
            elements.append(test.m)
        else:
            elements.append(np.zeros((d, d)))
    povm = Povm(tuple(elements), tuple(labels))
    return Classifier(identity_kraus(d), povm, tuple(labels))
