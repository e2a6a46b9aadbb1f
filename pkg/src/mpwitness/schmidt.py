"""Maximal biseparable overlap via Schmidt coefficients.

For a fixed cut A|B the largest overlap of |psi> with a product vector
|a>|b> is the largest singular value of the amplitude matrix C reshaped
along that cut. Maximizing the square over every cut gives the bound
``alpha`` for pure biseparable states; mixed biseparable states are convex
combinations of those, so the bound carries over unchanged.
"""

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .config import DEFAULT
from .tensor import singular_values


@dataclass(frozen=True, order=True)
class Bipartition:
    n: int
    side_a: tuple
    side_b: tuple

    def __post_init__(self):
        a, b = tuple(sorted(self.side_a)), tuple(sorted(self.side_b))
        if not a or not b:
            raise ValueError("both sides of a bipartition must be nonempty")
        if set(a) & set(b) or set(a) | set(b) != set(range(self.n)):
            raise ValueError(f"{a}|{b} is not a partition of {self.n} qubits")
        if 0 not in a:
            a, b = b, a
        object.__setattr__(self, "side_a", a)
        object.__setattr__(self, "side_b", b)

    @classmethod
    def from_side(cls, n, side_a):
        side_a = tuple(sorted(side_a))
        return cls(n, side_a, tuple(q for q in range(n) if q not in side_a))

    def __str__(self):
        return "".join(map(str, self.side_a)) + "|" + "".join(map(str, self.side_b))


@dataclass(frozen=True)
class SchmidtReport:
    partition: Bipartition
    coefficients: np.ndarray

    @property
    def max_sq(self):
        return float(self.coefficients[0] ** 2)


def enumerate_bipartitions(n):
    """All ``2**(n-1) - 1`` unordered cuts, with qubit 0 always on side A,
    ordered lexicographically by side A."""
    if not 2 <= n <= 10:
        raise ValueError(f"bipartitions need 2 <= n <= 10, got n={n}")
    sides = [a for r in range(1, n) for a in combinations(range(n), r) if a[0] == 0]
    return [Bipartition.from_side(n, a) for a in sorted(sides)]


def coefficient_matrix(psi, part):
    """Amplitudes reshaped to rows indexed by side A, columns by side B.

    Within each side qubits keep ascending order, most significant first.
    """
    if psi.n != part.n:
        raise ValueError(f"state has {psi.n} qubits, partition has {part.n}")
    t = psi.vec.reshape((2,) * psi.n)
    t = np.transpose(t, part.side_a + part.side_b)
    return t.reshape(2 ** len(part.side_a), 2 ** len(part.side_b))


def schmidt_report(psi, part):
    return SchmidtReport(part, singular_values(coefficient_matrix(psi, part)))


def schmidt_sweep(psi):
    return [schmidt_report(psi, p) for p in enumerate_bipartitions(psi.n)]


def alpha(psi, tol=DEFAULT.tie):
    """Largest squared Schmidt coefficient over all bipartitions.

    Returns ``(value, argmax_partition)``. Values within ``tol`` of each other
    count as ties; the first cut in enumeration order wins.
    """
    return alpha_from_reports(schmidt_sweep(psi), tol)


def alpha_from_reports(reports, tol=DEFAULT.tie):
    best = reports[0]
    for r in reports[1:]:
        if r.max_sq > best.max_sq + tol:
            best = r
    return best.max_sq, best.partition


def alpha_report(psi, label=None):
    """JSON-ready dictionary: per-partition Schmidt spectra, argmax and alpha."""
    reports = schmidt_sweep(psi)
    value, arg = alpha_from_reports(reports)
    return {
        "state": label if label is not None else psi.label,
        "n": psi.n,
        "alpha": value,
        "argmax": str(arg),
        "partitions": [
            {
                "partition": str(r.partition),
                "side_a": list(r.partition.side_a),
                "side_b": list(r.partition.side_b),
                "schmidt": [float(x) for x in r.coefficients],
                "max_sq": r.max_sq,
            }
            for r in reports
        ],
    }
