"""Dense complex linear algebra for small qubit registers.

Vectors and matrices are plain ``numpy`` arrays of ``complex128``. The
helpers here add the validation the rest of the package relies on.
"""

import numpy as np

from .config import DEFAULT, MAX_DIM

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)

PAULI = {"I": I2, "x": SX, "y": SY, "z": SZ}


def as_cmat(m):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def kron(*mats):
    """Kronecker product of one or more matrices (or vectors), left to right."""
    if not mats:
        raise ValueError("kron needs at least one operand")
    out = np.asarray(mats[0], dtype=complex)
    for m in mats[1:]:
        out = np.kron(out, np.asarray(m, dtype=complex))
    return out


def pauli_string(label):
    """Operator for a label such as ``"zIx"`` (qubit 0 first)."""
    return kron(*[PAULI[c] for c in label])


def dagger(m):
    return np.conj(np.transpose(m))


def is_hermitian(m, tol=DEFAULT.hermitian):
    m = np.asarray(m)
    return m.shape[0] == m.shape[1] and float(np.max(np.abs(m - dagger(m)))) <= tol


def is_normalized(v, tol=DEFAULT.normalization):
    return abs(float(np.vdot(v, v).real) - 1.0) <= tol


def check_density(rho, tol=DEFAULT):
    """Return a list of reasons ``rho`` is not a density matrix (empty if it is)."""
    rho = np.asarray(rho)
    problems = []
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        return [f"not square: shape {rho.shape}"]
    if not np.all(np.isfinite(rho)):
        return ["non-finite entries"]
    herm = float(np.max(np.abs(rho - dagger(rho))))
    if herm > tol.hermitian_input:
        problems.append(f"not Hermitian (max |rho - rho^dag| = {herm:.3g})")
        return problems
    tr = np.trace(rho).real
    if abs(tr - 1.0) > tol.trace:
        problems.append(f"trace {tr!r} != 1")
    lo = float(np.linalg.eigvalsh((rho + dagger(rho)) / 2)[0])
    if lo < -tol.positivity:
        problems.append(f"not positive (min eigenvalue {lo:.3g})")
    return problems


def singular_values(m):
    """Singular values of ``m`` in descending order.

    Computed from the eigenvalues of the smaller Gram matrix (``m m^dag`` or
    ``m^dag m``); only the values are needed, never the vectors.
    """
    m = as_cmat(m)
    rows, cols = m.shape
    if rows * cols > MAX_DIM:
        raise ValueError(f"matrix {rows}x{cols} exceeds {MAX_DIM} entries")
    gram = m @ dagger(m) if rows <= cols else dagger(m) @ m
    gram = (gram + dagger(gram)) / 2
    ev = np.linalg.eigvalsh(gram)[::-1]
    return np.sqrt(np.clip(ev, 0.0, None))


def hermitian_eig(m, tol=DEFAULT.hermitian_input):
    """Eigenvalues (descending) and orthonormal eigenvectors (as columns)."""
    m = as_cmat(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix must be square, got {m.shape}")
    dev = float(np.max(np.abs(m - dagger(m))))
    if dev > tol:
        raise ValueError(f"matrix is not Hermitian (deviation {dev:.3g})")
    vals, vecs = np.linalg.eigh((m + dagger(m)) / 2)
    return vals[::-1], vecs[:, ::-1]
