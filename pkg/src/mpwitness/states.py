"""Named target states, random product-state samplers and white-noise mixtures.

Basis convention: in a computational-basis index, the most significant bit
belongs to qubit 0. ``0`` is horizontal (H) and ``1`` vertical (V) polarization.
"""

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .config import DEFAULT, MAX_DIM, DataError
from .tensor import is_normalized, kron


@dataclass(frozen=True)
class QubitState:
    n: int
    vec: np.ndarray = field(repr=False)
    label: str = ""

    def __post_init__(self):
        vec = np.asarray(self.vec, dtype=complex).reshape(-1)
        if not 1 <= self.n <= 10 or vec.shape[0] != 2**self.n:
            raise ValueError(f"state of length {vec.shape[0]} does not match n={self.n}")
        if not np.all(np.isfinite(vec)):
            raise ValueError("state has non-finite amplitudes")
        if not is_normalized(vec):
            raise ValueError(f"state is not normalized (norm^2 = {np.vdot(vec, vec).real!r})")
        object.__setattr__(self, "vec", vec)

    @property
    def dim(self):
        return 2**self.n

    def density(self):
        return np.outer(self.vec, np.conj(self.vec))

    def overlap(self, other):
        """Squared overlap |<self|other>|^2."""
        return float(abs(np.vdot(self.vec, other.vec)) ** 2)


@dataclass(frozen=True)
class NoisyState:
    rho: np.ndarray = field(repr=False)
    p: float
    base: QubitState

    @property
    def n(self):
        return self.base.n


def make_w(n=3):
    """Equal superposition of all weight-one basis states on ``n`` qubits."""
    if n < 2 or 2**n > MAX_DIM:
        raise ValueError(f"W state needs 2 <= n <= 10, got n={n}")
    vec = np.zeros(2**n, dtype=complex)
    vec[[1 << k for k in range(n)]] = 1 / np.sqrt(n)
    return QubitState(n, vec, f"W{n}")


def make_psi4():
    vec = np.zeros(16, dtype=complex)
    vec[[0b0011, 0b1100]] = 1 / np.sqrt(3)
    vec[[0b0110, 0b1001, 0b0101, 0b1010]] = -1 / (2 * np.sqrt(3))
    return QubitState(4, vec, "Psi4")


BAR0 = np.array([1, 1j]) / np.sqrt(2)
BAR1 = -np.array([1, -1j]) / np.sqrt(2)


def make_ghz_bar():
    """GHZ state written in the barred basis |0bar> = (|0>+i|1>)/sqrt2,
    |1bar> = -(|0>-i|1>)/sqrt2.

    Expanded in the computational basis this is
    ``(i/2)(|001> + |010> + |100> - |111>)``; it is the rank-one projector
    that the four-setting W/GHZ discriminating witness subtracts from 1/2.
    """
    vec = (kron(BAR0, BAR0, BAR0) + kron(BAR1, BAR1, BAR1)) / np.sqrt(2)
    return QubitState(3, vec, "GHZbar")


def make_ghz_bar_printed():
    """The literal expanded form ``(|000>+|001>+|010>+|100>)/2``.

    Kept only so the discrepancy with :func:`make_ghz_bar` can be shown; it
    does not reproduce the witness expansion (its alpha is ~0.854, not 1/2).
    """
    vec = np.zeros(8, dtype=complex)
    vec[[0, 1, 2, 4]] = 0.5
    return QubitState(3, vec, "GHZbar-printed")


def make_ghz(n=3):
    if n < 2 or 2**n > MAX_DIM:
        raise ValueError(f"GHZ state needs 2 <= n <= 10, got n={n}")
    vec = np.zeros(2**n, dtype=complex)
    vec[[0, -1]] = 1 / np.sqrt(2)
    return QubitState(n, vec, f"GHZ{n}")


def mix_white_noise(psi, p):
    """``p |psi><psi| + (1 - p) 1 / 2^n``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"visibility p must lie in [0, 1], got {p}")
    rho = p * psi.density() + (1 - p) * np.eye(psi.dim) / psi.dim
    return NoisyState(rho, float(p), psi)


def haar_vector(dim, rng):
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)


def permute_qubits(vec, order):
    """Reorder tensor factors: axis ``j`` of the input holds qubit ``order[j]``."""
    n = len(order)
    t = np.asarray(vec).reshape((2,) * n)
    return np.transpose(t, np.argsort(order)).reshape(-1)


def product_over_blocks(blocks, factors):
    """Tensor together per-block vectors and put every qubit back in place."""
    order = [q for b in blocks for q in b]
    return permute_qubits(kron(*factors), order)


def sample_partitioned(blocks, seed):
    """Haar-random pure state on each block of a qubit partition, tensored together."""
    rng = np.random.default_rng(seed)
    n = sum(len(b) for b in blocks)
    factors = [haar_vector(2 ** len(b), rng) for b in blocks]
    vec = product_over_blocks(blocks, factors)
    vec = vec / np.linalg.norm(vec)
    label = "|".join("".join(map(str, b)) for b in blocks)
    return QubitState(n, vec, f"product[{label}]")


def sample_biseparable(n, seed):
    """Product of two Haar-random states across a uniformly chosen bipartition."""
    if n < 3 or 2**n > MAX_DIM:
        raise ValueError(f"biseparable sampling needs 3 <= n <= 10, got n={n}")
    rng = np.random.default_rng(seed)
    cuts = [a for r in range(1, n) for a in combinations(range(n), r) if 0 in a]
    side_a = cuts[rng.integers(len(cuts))]
    side_b = tuple(q for q in range(n) if q not in side_a)
    # fresh stream for the amplitudes so the cut choice never shifts them
    return sample_partitioned([side_a, side_b], rng.integers(2**63))


def sample_random_partition(n, k, seed):
    """Product state over a random partition of ``n`` qubits into ``k`` nonempty blocks."""
    rng = np.random.default_rng(seed)
    while True:
        labels = rng.integers(k, size=n)
        if len(set(labels.tolist())) == k:
            break
    blocks = [tuple(int(q) for q in np.flatnonzero(labels == j)) for j in range(k)]
    blocks.sort()
    return sample_partitioned(blocks, rng.integers(2**63))


NAMED_STATES = {
    "W3": lambda: make_w(3),
    "W4": lambda: make_w(4),
    "GHZbar": make_ghz_bar,
    "Psi4": make_psi4,
    "GHZ3": lambda: make_ghz(3),
    "GHZ4": lambda: make_ghz(4),
}


def named_state(name):
    try:
        return NAMED_STATES[name]()
    except KeyError:
        raise KeyError(f"unknown state {name!r}; choose from {sorted(NAMED_STATES)}") from None


def format_state(psi):
    lines = [f"n={psi.n}"]
    lines += [f"{a.real:.17g} {a.imag:.17g}" for a in psi.vec]
    return "\n".join(lines) + "\n"


def parse_state(text, label=""):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("n="):
        raise DataError("state file must start with a line 'n=<qubits>'")
    try:
        n = int(lines[0][2:])
    except ValueError:
        raise DataError(f"bad qubit count line {lines[0]!r}") from None
    if not 1 <= n <= 10:
        raise DataError(f"qubit count {n} out of range 1..10")
    body = lines[1:]
    if len(body) != 2**n:
        raise DataError(f"expected {2**n} amplitude lines for n={n}, found {len(body)}")
    amps = []
    for i, ln in enumerate(body):
        parts = ln.split()
        if len(parts) != 2:
            raise DataError(f"amplitude line {i + 2}: expected 're im', got {ln!r}")
        try:
            amps.append(complex(float(parts[0]), float(parts[1])))
        except ValueError:
            raise DataError(f"amplitude line {i + 2}: not a number pair: {ln!r}") from None
    vec = np.array(amps)
    if not is_normalized(vec, 1e-6):
        raise DataError(f"state is not normalized (norm^2 = {np.vdot(vec, vec).real!r})")
    if not is_normalized(vec, DEFAULT.normalization):
        # hand-written files with truncated decimals
        vec = vec / np.linalg.norm(vec)
    return QubitState(n, vec, label)


def write_state(path, psi):
    with open(path, "w") as f:
        f.write(format_state(psi))


def read_state(path):
    with open(path) as f:
        return parse_state(f.read(), label=str(path))
