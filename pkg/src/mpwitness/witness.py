"""Projector-based witnesses ``alpha * 1 - |psi><psi|`` and their verdicts."""

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import schmidt, states
from .config import DEFAULT, DataError
from .tensor import check_density


class Kind(enum.Enum):
    GENUINE_MULTIPARTITE = "GenuineMultipartite"
    GHZ_CLASS_DISCRIMINATOR = "GhzClassDiscriminator"


@dataclass(frozen=True)
class WitnessSpec:
    n: int
    alpha: float
    target: states.QubitState
    matrix: np.ndarray = field(repr=False)
    kind: Kind = Kind.GENUINE_MULTIPARTITE
    label: str = ""
    # value below which a state is certified to lie outside the W class
    w_class_threshold: float | None = None

    @classmethod
    def from_target(cls, target, alpha, **kwargs):
        matrix = alpha * np.eye(target.dim) - target.density()
        return cls(target.n, float(alpha), target, matrix, **kwargs)


@dataclass
class Verdict:
    witness: str
    value: float
    error: float
    claims: list

    @property
    def sigma(self):
        return significance(self.value, self.error)

    def to_dict(self):
        return {
            "witness": self.witness,
            "value": self.value,
            "error": self.error,
            "sigma": _json_float(self.sigma),
            "claims": [dict(c, sigma=_json_float(c["sigma"])) for c in self.claims],
        }


def _json_float(x):
    return x if math.isfinite(x) else ("inf" if x > 0 else "-inf")


def significance(margin, error):
    """How many standard errors ``margin`` lies below zero (inf for exact values)."""
    if error > 0:
        return abs(margin) / error
    return math.inf if margin != 0 else 0.0


def build_witness(target, label=None, w_class_threshold=None):
    """Witness for ``target`` with alpha from the full bipartition sweep."""
    if target.n < 3:
        raise ValueError("witness construction needs at least 3 qubits")
    a, _ = schmidt.alpha(target)
    return WitnessSpec.from_target(
        target, a, label=label or f"W[{target.label}]", w_class_threshold=w_class_threshold
    )


def build_ghz_witness():
    """``3/4 * 1 - |GHZbar><GHZbar|``: negative on some GHZ-class states,
    non-negative on the W class (3/4 is the known maximal W-class overlap)."""
    return WitnessSpec.from_target(
        states.make_ghz_bar(), 0.75, kind=Kind.GHZ_CLASS_DISCRIMINATOR, label="Wghz"
    )


def named_witness(name):
    if name == "Ww1":
        return build_witness(states.make_w(3), label="Ww1")
    if name == "Ww2":
        return build_witness(states.make_ghz_bar(), label="Ww2", w_class_threshold=-0.25)
    if name == "Wpsi4":
        return build_witness(states.make_psi4(), label="Wpsi4")
    if name == "Wghz":
        return build_ghz_witness()
    raise KeyError(f"unknown witness {name!r}; choose from {WITNESS_NAMES}")


WITNESS_NAMES = ("Ww1", "Ww2", "Wpsi4", "Wghz")


def expectation(w, rho, tol=DEFAULT):
    """``Tr(W rho)`` for a validated density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != w.matrix.shape:
        raise ValueError(f"density matrix shape {rho.shape} does not match witness {w.matrix.shape}")
    problems = check_density(rho, tol)
    if problems:
        raise DataError("rejected density matrix: " + "; ".join(problems))
    val = np.einsum("ij,ji->", w.matrix, rho)
    if abs(val.imag) >= tol.imag_residue:
        raise DataError(f"expectation has imaginary residue {val.imag:.3g}")
    return float(val.real)


def classify(value, error, w):
    """Conclusions supported by a witness value ``value +- error``.

    A non-negative value is reported as inconclusive: witnesses are
    sufficient tests only.
    """
    if error < 0:
        raise ValueError("error must be non-negative")
    claims = []
    if value < 0:
        if w.kind is Kind.GHZ_CLASS_DISCRIMINATOR:
            text = "outside W class"
        else:
            text = f"genuine {w.n}-partite entanglement"
        claims.append({"claim": text, "sigma": significance(value, error)})
    if w.w_class_threshold is not None and value < w.w_class_threshold:
        claims.append(
            {"claim": "outside W class", "sigma": significance(value - w.w_class_threshold, error)}
        )
    if not claims:
        claims.append({"claim": "inconclusive", "sigma": 0.0})
    return Verdict(w.label, float(value), float(error), claims)
