"""Numerical tolerances and exception types shared across the package."""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    normalization: float = 1e-12
    hermitian: float = 1e-12
    hermitian_input: float = 1e-10
    trace: float = 1e-12
    positivity: float = 1e-10
    eig_residual: float = 1e-8
    schmidt_sum: float = 1e-10
    tie: float = 1e-12
    imag_residue: float = 1e-10
    probability_sum: float = 1e-10
    decomposition: float = 1e-10
    pauli_drop: float = 1e-12
    axis_norm: float = 1e-12

    def with_overrides(self, **kwargs):
        return replace(self, **kwargs)


DEFAULT = Tolerances()

#: Largest supported Hilbert space dimension (10 qubits).
MAX_DIM = 2**10


class DataError(ValueError):
    """Input data (state file, counts table, density matrix) is malformed."""


class VerificationError(RuntimeError):
    """A decomposition failed its dense-matrix oracle check."""
