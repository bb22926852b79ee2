"""JSON file formats for states, channels, POVMs and classifiers.

Complex matrices are stored as separate real/imaginary double arrays in
row-major order, so dumps are bit-stable:

* matrix:     {"dim": d, "re": [[...]], "im": [[...]]}
              (rectangular matrices use {"rows": r, "cols": c, ...})
* pure state: {"amplitudes_re": [...], "amplitudes_im": [...]}
* channel:    {"kraus": [matrix, ...]}
* POVM:       {"labels": [...], "elements": [matrix, ...]}
* classifier: {"labels": [...], "channel": {...}, "povm": {...}}
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .classifier import Classifier
from .states import Channel, DensityMatrix, Povm, PureState, validate_density


def matrix_to_json(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=np.complex128)
    out: dict = {}
    if m.shape[0] == m.shape[1]:
        out["dim"] = int(m.shape[0])
    else:
        out["rows"] = int(m.shape[0])
        out["cols"] = int(m.shape[1])
    out["re"] = m.real.tolist()
    out["im"] = m.imag.tolist()
    return out


def matrix_from_json(obj: dict) -> np.ndarray:
    re = np.asarray(obj["re"], dtype=float)
    im = np.asarray(obj["im"], dtype=float)
    if re.shape != im.shape:
        raise ValueError("re and im parts have different shapes")
    if "dim" in obj:
        d = int(obj["dim"])
        if re.shape != (d, d):
            raise ValueError(f"declared dim {d} does not match data shape {re.shape}")
    else:
        if re.shape != (int(obj["rows"]), int(obj["cols"])):
            raise ValueError("declared rows/cols do not match data shape")
    return re + 1j * im


def density_to_json(dm: DensityMatrix) -> dict:
    return matrix_to_json(dm.matrix)


def density_from_json(obj: dict) -> DensityMatrix:
    return validate_density(matrix_from_json(obj))


def pure_to_json(psi: PureState) -> dict:
    return {
        "amplitudes_re": psi.amplitudes.real.tolist(),
        "amplitudes_im": psi.amplitudes.imag.tolist(),
    }


def pure_from_json(obj: dict) -> PureState:
    re = np.asarray(obj["amplitudes_re"], dtype=float)
    im = np.asarray(obj["amplitudes_im"], dtype=float)
    return PureState(re + 1j * im)


def state_from_json(obj: dict) -> DensityMatrix:
    """Accept either a density-matrix or a pure-state record."""
    if "amplitudes_re" in obj:
        return pure_from_json(obj).density()
    return density_from_json(obj)


def channel_to_json(ch: Channel) -> dict:
    return {"kraus": [matrix_to_json(k) for k in ch.kraus]}


def channel_from_json(obj: dict) -> Channel:
    return Channel(tuple(matrix_from_json(k) for k in obj["kraus"]))


def povm_to_json(povm: Povm) -> dict:
    return {
        "labels": list(povm.labels),
        "elements": [matrix_to_json(e) for e in povm.elements],
    }


def povm_from_json(obj: dict) -> Povm:
    elements = tuple(matrix_from_json(e) for e in obj["elements"])
    labels = tuple(obj["labels"]) if "labels" in obj else None
    return Povm(elements, labels)


def classifier_to_json(cl: Classifier) -> dict:
    return {
        "labels": list(cl.labels),
        "channel": channel_to_json(cl.channel),
        "povm": {"elements": [matrix_to_json(e) for e in cl.povm.elements]},
    }


def classifier_from_json(obj: dict) -> Classifier:
    channel = channel_from_json(obj["channel"])
    povm_obj = dict(obj["povm"])
    labels = tuple(obj.get("labels", povm_obj.get("labels", ())))
    elements = tuple(matrix_from_json(e) for e in povm_obj["elements"])
    povm = Povm(elements, labels if labels else None)
    return Classifier(channel, povm, labels if labels else None)


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def content_hash(obj) -> str:
    """sha256 of the canonical JSON encoding; used to fingerprint inputs."""
    return hashlib.sha256(canonical_dumps(obj).encode("utf-8")).hexdigest()


def load_json(path) -> dict:
    return json.loads(Path(path).read_text())


def save_json(obj: dict, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")
