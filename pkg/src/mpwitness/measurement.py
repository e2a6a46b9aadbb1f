"""Witnesses as sums of local projective measurement settings.

A setting fixes one measurement axis per qubit and assigns a real weight to
each of the ``2**n`` joint outcomes. Its operator is
``sum_l d_l  P_{l_1} (x) ... (x) P_{l_n}`` with ``P_{+-} = (1 +- n.sigma)/2``.

Outcome patterns are indexed like computational-basis states: bit ``m``
(most significant first) of the index is 1 when qubit ``m`` gave ``-1``.
As strings they read ``"+-+"`` with qubit 0 first.
"""

import csv
import io
import json
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import states
from .config import DEFAULT, DataError, VerificationError
from .tensor import PAULI, I2, as_cmat, hermitian_eig, is_hermitian, kron, SX, SY, SZ

_UNIT = {"x": np.array([1.0, 0, 0]), "y": np.array([0, 1.0, 0]), "z": np.array([0, 0, 1.0])}
_SQ2 = np.sqrt(2.0)


def axis_vector(token):
    """Bloch vector for ``x``, ``y``, ``z`` or a diagonal ``a+b`` / ``a-b``."""
    token = token.strip().replace("−", "-")
    if token in _UNIT:
        return _UNIT[token].copy()
    if len(token) == 3 and token[0] in _UNIT and token[2] in _UNIT and token[1] in "+-":
        if token[0] == token[2]:
            raise ValueError(f"degenerate axis token {token!r}")
        sign = 1.0 if token[1] == "+" else -1.0
        return (_UNIT[token[0]] + sign * _UNIT[token[2]]) / _SQ2
    raise ValueError(f"unknown axis token {token!r}")


def outcome_signs(n):
    """``(2**n, n)`` array of outcome signs, row ``i`` for pattern index ``i``."""
    idx = np.arange(2**n)[:, None]
    bits = (idx >> np.arange(n - 1, -1, -1)) & 1
    return 1 - 2 * bits


def pattern_string(index, n):
    return "".join("-" if (index >> (n - 1 - m)) & 1 else "+" for m in range(n))


def pattern_index(pattern):
    pattern = pattern.strip().replace("−", "-")
    if not pattern or set(pattern) - {"+", "-"}:
        raise ValueError(f"outcome pattern {pattern!r} must use only '+' and '-'")
    return int("".join("1" if c == "-" else "0" for c in pattern), 2)


@dataclass(frozen=True)
class LocalSetting:
    tokens: tuple
    weights: np.ndarray = field(repr=False)

    def __post_init__(self):
        tokens = tuple(t.strip().replace("−", "-") for t in self.tokens)
        for t in tokens:
            axis_vector(t)
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (2 ** len(tokens),):
            raise ValueError(f"{len(tokens)}-qubit setting needs {2 ** len(tokens)} weights, got {w.shape}")
        object.__setattr__(self, "tokens", tokens)
        object.__setattr__(self, "weights", w)

    @property
    def n(self):
        return len(self.tokens)

    @property
    def axes(self):
        return np.array([axis_vector(t) for t in self.tokens])

    @property
    def label(self):
        return "|".join(self.tokens)


@dataclass(frozen=True)
class LocalDecomposition:
    n: int
    settings: tuple
    constant: float = 0.0
    label: str = ""

    @property
    def K(self):
        return len(self.settings)


def axis_observable(v):
    return v[0] * SX + v[1] * SY + v[2] * SZ


def axis_projectors(v):
    obs = axis_observable(v)
    return (I2 + obs) / 2, (I2 - obs) / 2


def axis_basis(v):
    """Unitary whose rows are the +1 and -1 eigenvectors of ``v . sigma``."""
    _, vecs = hermitian_eig(axis_observable(v))
    return np.conj(vecs.T)


def setting_operator(s):
    projs = [axis_projectors(v) for v in s.axes]
    dim = 2**s.n
    out = np.zeros((dim, dim), dtype=complex)
    for i, signs in enumerate(outcome_signs(s.n)):
        if s.weights[i] != 0:
            out += s.weights[i] * kron(*[projs[m][0 if l > 0 else 1] for m, l in enumerate(signs)])
    return out


def expand(d):
    """Dense ``constant * 1 + sum_k M_k``."""
    out = d.constant * np.eye(2**d.n, dtype=complex)
    for s in d.settings:
        out += setting_operator(s)
    return out


# ---------------------------------------------------------------- weight builders


def weights_from_terms(n, terms):
    """Weights realizing ``sum c * prod_{m in support} (axis_m . sigma)``.

    ``terms`` is an iterable of ``(coefficient, support)`` with support a
    tuple of qubit indices; an empty support contributes ``c`` to every outcome.
    """
    signs = outcome_signs(n)
    w = np.zeros(2**n)
    for c, support in terms:
        w += c * np.prod(signs[:, list(support)], axis=1)
    return w


def weights_product(n, offset, slope, scale=1.0):
    """Weights of ``scale * (offset*1 + slope * axis.sigma)^(x)n``: per qubit ``offset + slope*l``."""
    return scale * np.prod(offset + slope * outcome_signs(n), axis=1)


def _pairs(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def decomposition_ww1():
    n = 3
    zterms = [(7 / 24, (0, 1, 2))] + [(3 / 24, (m,)) for m in range(n)] + [(5 / 24, p) for p in _pairs(n)]
    settings = [LocalSetting(("z",) * 3, weights_from_terms(n, zterms))]
    # (1 + sigma_z +- sigma_i) = 1 + sqrt2 * (axis . sigma) along (z +- i)/sqrt2
    for tok in ("z+x", "z-x", "z+y", "z-y"):
        settings.append(LocalSetting((tok,) * 3, weights_product(n, 1.0, _SQ2, -1 / 24)))
    return LocalDecomposition(n, tuple(settings), 17 / 24, "Ww1")


def decomposition_ww2():
    n = 3
    settings = [
        LocalSetting(("z",) * 3, weights_from_terms(n, [(4 / 16, (0, 1, 2))])),
        LocalSetting(("y",) * 3, weights_from_terms(n, [(-2 / 16, p) for p in _pairs(n)])),
    ]
    for tok in ("z+x", "z-x"):
        settings.append(LocalSetting((tok,) * 3, weights_product(n, 0.0, _SQ2, -1 / 16)))
    return LocalDecomposition(n, tuple(settings), 6 / 16, "Ww2")


def decomposition_wghz():
    """Same four settings as Ww2; the identity shifts by 3/4 - 1/2."""
    d = decomposition_ww2()
    return LocalDecomposition(d.n, d.settings, d.constant + 0.25, "Wghz")


PSI4_DIAGONALS = ("x+y", "x-y", "x+z", "x-z", "y+z", "y-z")
# the expansion as printed: (x+z) appears twice and (y+z) is missing
PSI4_DIAGONALS_PRINTED = ("x+y", "x-y", "x+z", "x-z", "x+z", "y-z")


def decomposition_wpsi4(diagonals=PSI4_DIAGONALS):
    n = 4
    settings = []
    for i in "xyz":
        terms = [(1 / 48, (0, 1, 2, 3)), (-1 / 48, (0, 1)), (-1 / 48, (2, 3))]
        terms += [(2 / 48, s) for s in [(0, 2), (0, 3), (1, 2), (1, 3)]]
        settings.append(LocalSetting((i,) * 4, weights_from_terms(n, terms)))
    for a, b in ("xy", "yx", "xz", "zx", "yz", "zy"):
        settings.append(LocalSetting((a, a, b, b), weights_from_terms(n, [(3 / 48, (0, 1, 2, 3))])))
    # (sigma_a +- sigma_b) = sqrt2 * (axis . sigma) along (a +- b)/sqrt2
    for tok in diagonals:
        settings.append(LocalSetting((tok,) * 4, weights_product(n, 0.0, _SQ2, -1 / 48)))
    return LocalDecomposition(n, tuple(settings), 33 / 48, "Wpsi4")


def builtin_decompositions():
    return {"Ww1": decomposition_ww1(), "Ww2": decomposition_ww2(), "Wpsi4": decomposition_wpsi4()}


def decomposition(name):
    table = {**builtin_decompositions(), "Wghz": decomposition_wghz()}
    try:
        return table[name]
    except KeyError:
        raise KeyError(f"no decomposition named {name!r}; choose from {sorted(table)}") from None


def max_deviation(d, matrix):
    return float(np.max(np.abs(expand(d) - matrix)))


def verify(d, matrix, tol=DEFAULT.decomposition):
    """Compare ``expand(d)`` with ``matrix``; raise :class:`VerificationError` on mismatch."""
    dev = max_deviation(d, matrix)
    if not dev <= tol:
        raise VerificationError(f"{d.label}: decomposition deviates from witness by {dev:.3g} (tol {tol:g})")
    return dev


# ---------------------------------------------------------------- Pauli grouping


def pauli_coefficients(matrix, tol=DEFAULT.pauli_drop):
    """``{label: Tr(M P) / 2**n}`` for every Pauli string with |coefficient| > tol."""
    m = as_cmat(matrix)
    n = int(round(np.log2(m.shape[0])))
    coeffs = {}
    for letters in product("Ixyz", repeat=n):
        label = "".join(letters)
        c = np.sum(m.T * kron(*[PAULI[a] for a in letters])) / 2**n
        if abs(c) > tol:
            coeffs[label] = float(c.real)
    return coeffs


def group_pauli_terms(matrix, tol=DEFAULT, label="greedy"):
    """Greedy qubit-wise grouping of the Pauli expansion into settings.

    Strings are visited from highest weight down; each joins the first
    setting whose axes agree with it on every qubit where both are
    non-identity. Not optimal: it is a baseline only.
    """
    m = as_cmat(matrix)
    dim = m.shape[0]
    n = int(round(np.log2(dim)))
    if 2**n != dim or m.shape[1] != dim:
        raise ValueError(f"matrix shape {m.shape} is not a qubit operator")
    if n > 6:
        raise ValueError("Pauli grouping is limited to n <= 6")
    if not is_hermitian(m, tol.hermitian_input):
        raise ValueError("Pauli grouping needs a Hermitian matrix")
    coeffs = pauli_coefficients(m, tol.pauli_drop)
    constant = coeffs.pop("I" * n, 0.0)
    order = sorted(coeffs, key=lambda s: (-sum(c != "I" for c in s), s))
    groups = []  # (axes dict, [labels])
    for s in order:
        for axes, members in groups:
            if all(c == "I" or axes.get(q, c) == c for q, c in enumerate(s)):
                axes.update({q: c for q, c in enumerate(s) if c != "I"})
                members.append(s)
                break
        else:
            groups.append(({q: c for q, c in enumerate(s) if c != "I"}, [s]))
    settings = []
    for axes, members in groups:
        tokens = tuple(axes.get(q, "z") for q in range(n))
        terms = [(coeffs[s], tuple(q for q, c in enumerate(s) if c != "I")) for s in members]
        settings.append(LocalSetting(tokens, weights_from_terms(n, terms)))
    return LocalDecomposition(n, tuple(settings), constant, label)


# ---------------------------------------------------------------- probabilities and counts


def probabilities(rho, s):
    """Joint outcome probabilities of setting ``s``, indexed by pattern index."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2**s.n, 2**s.n):
        raise ValueError(f"density matrix shape {rho.shape} does not match a {s.n}-qubit setting")
    u = kron(*[axis_basis(v) for v in s.axes])
    p = np.einsum("ij,jk,ik->i", u, rho, np.conj(u)).real
    return np.clip(p, 0.0, None)


def probability_map(rho, s):
    return {pattern_string(i, s.n): float(x) for i, x in enumerate(probabilities(rho, s))}


@dataclass
class SettingCounts:
    label: str
    counts: np.ndarray

    @property
    def shots(self):
        return int(self.counts.sum())

    @property
    def tokens(self):
        return tuple(self.label.split("|"))


@dataclass
class CountsTable:
    n: int
    settings: list

    def by_label(self):
        return {s.label: s for s in self.settings}


def simulate_counts(rho, d, shots_per_setting, seed):
    """One multinomial draw per setting; setting ``k`` uses the RNG stream ``(seed, k)``."""
    if shots_per_setting < 1:
        raise ValueError("shots_per_setting must be at least 1")
    rows = []
    for k, s in enumerate(d.settings):
        p = probabilities(rho, s)
        rng = np.random.default_rng([seed, k])
        rows.append(SettingCounts(s.label, rng.multinomial(shots_per_setting, p / p.sum())))
    return CountsTable(d.n, rows)


def estimate_from_probabilities(probs, d, shots=None):
    """Witness value from per-setting outcome distributions.

    With ``shots`` (a count per setting, or one number for all) the error is
    the multinomial standard error evaluated at ``probs``; without, it is 0.
    """
    if len(probs) != d.K:
        raise ValueError(f"got {len(probs)} distributions for {d.K} settings")
    if shots is not None and np.ndim(shots) == 0:
        shots = [shots] * d.K
    value = d.constant
    var = 0.0
    for k, (s, p) in enumerate(zip(d.settings, probs)):
        p = np.asarray(p, dtype=float)
        mean = float(s.weights @ p)
        value += mean
        if shots is not None:
            var += max(float((s.weights**2) @ p) - mean**2, 0.0) / shots[k]
    return value, float(np.sqrt(var))


def exact_probabilities(rho, d):
    return [probabilities(rho, s) for s in d.settings]


def match_settings(counts, d):
    """Counts rows in the order of ``d.settings``; extra rows are ignored."""
    if counts.n != d.n:
        raise DataError(f"counts are for {counts.n} qubits, decomposition {d.label} needs {d.n}")
    table = counts.by_label()
    missing = [s.label for s in d.settings if s.label not in table]
    if missing:
        raise DataError(f"counts missing setting(s) required by {d.label}: {', '.join(missing)}")
    return [table[s.label] for s in d.settings]


def estimate(counts, d):
    """``(value, error)`` from observed counts, error from the multinomial covariance."""
    rows = match_settings(counts, d)
    freqs = [r.counts / r.shots for r in rows]
    return estimate_from_probabilities(freqs, d, [r.shots for r in rows])


# ---------------------------------------------------------------- counts file format

CSV_FIELDS = ["setting", "axes", "outcome", "count", "shots"]


def format_counts_csv(counts):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for k, s in enumerate(counts.settings):
        for i, c in enumerate(s.counts):
            writer.writerow([k, s.label, pattern_string(i, counts.n), int(c), s.shots])
    return buf.getvalue()


def _rows_to_table(rows):
    """Validate dict rows (CSV or JSON) and assemble a :class:`CountsTable`.

    Every problem found is reported with its row number.
    """
    errors = []
    grouped = {}
    n = None
    for lineno, row in rows:
        missing = [f for f in CSV_FIELDS if row.get(f) in (None, "")]
        if missing:
            errors.append(f"row {lineno}: missing field(s) {', '.join(missing)}")
            continue
        try:
            key = str(row["setting"]).strip()
            tokens = [t.strip().replace("−", "-") for t in str(row["axes"]).split("|")]
            for t in tokens:
                axis_vector(t)
            idx = pattern_index(str(row["outcome"]))
            count = int(str(row["count"]).strip())
            shots = int(str(row["shots"]).strip())
        except ValueError as exc:
            errors.append(f"row {lineno}: {exc}")
            continue
        outcome = str(row["outcome"]).strip().replace("−", "-")
        if len(outcome) != len(tokens):
            errors.append(f"row {lineno}: outcome {outcome!r} has {len(outcome)} qubits, axes have {len(tokens)}")
            continue
        if count < 0 or shots < 1:
            errors.append(f"row {lineno}: count must be >= 0 and shots >= 1")
            continue
        if n is None:
            n = len(tokens)
        elif len(tokens) != n:
            errors.append(f"row {lineno}: {len(tokens)} qubits, earlier rows have {n}")
            continue
        label = "|".join(tokens)
        g = grouped.setdefault(key, {"label": label, "shots": shots, "counts": {}, "rows": []})
        g["rows"].append(lineno)
        if g["label"] != label:
            errors.append(f"row {lineno}: setting {key} has axes {label}, earlier rows say {g['label']}")
        elif g["shots"] != shots:
            errors.append(f"row {lineno}: setting {key} has shots {shots}, earlier rows say {g['shots']}")
        elif idx in g["counts"]:
            errors.append(f"row {lineno}: duplicate outcome {outcome} for setting {key}")
        else:
            g["counts"][idx] = count
    settings = []
    seen = {}
    for key, g in grouped.items():
        total = sum(g["counts"].values())
        if total != g["shots"]:
            rows_txt = ", ".join(map(str, g["rows"]))
            errors.append(f"rows {rows_txt}: setting {key} ({g['label']}) counts sum to {total}, shots = {g['shots']}")
            continue
        if g["label"] in seen:
            errors.append(f"setting {key}: axes {g['label']} already used by setting {seen[g['label']]}")
            continue
        seen[g["label"]] = key
        arr = np.zeros(2**n, dtype=np.int64)
        for idx, c in g["counts"].items():
            arr[idx] = c
        settings.append(SettingCounts(g["label"], arr))
    if not grouped and not errors:
        errors.append("no data rows")
    if errors:
        raise DataError("malformed counts:\n  " + "\n  ".join(errors))
    return CountsTable(n, settings)


def parse_counts_csv(text):
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != CSV_FIELDS:
        raise DataError(f"counts CSV header must be {','.join(CSV_FIELDS)}, got {reader.fieldnames}")
    # header is line 1
    return _rows_to_table((i + 2, row) for i, row in enumerate(reader))


def format_counts_json(counts):
    rows = [
        dict(zip(CSV_FIELDS, [k, s.label, pattern_string(i, counts.n), int(c), s.shots]))
        for k, s in enumerate(counts.settings)
        for i, c in enumerate(s.counts)
    ]
    return json.dumps(rows, indent=1) + "\n"


def parse_counts_json(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataError(f"counts JSON does not parse: {exc}") from None
    if isinstance(data, dict):
        data = data.get("rows")
    if not isinstance(data, list) or not all(isinstance(r, dict) for r in data):
        raise DataError("counts JSON must be a list of row objects (or {'rows': [...]})")
    return _rows_to_table((i + 1, r) for i, r in enumerate(data))


def read_counts(path):
    with open(path) as f:
        text = f.read()
    if str(path).endswith(".json"):
        return parse_counts_json(text)
    return parse_counts_csv(text)


def write_counts(path, counts):
    text = format_counts_json(counts) if str(path).endswith(".json") else format_counts_csv(counts)
    with open(path, "w") as f:
        f.write(text)


# ---------------------------------------------------------------- verification reports


def verification_report(name, tol=DEFAULT.decomposition):
    """Dense-oracle check of a named decomposition, with per-witness findings."""
    from .witness import named_witness

    w = named_witness(name)
    d = decomposition(name)
    dev = max_deviation(d, w.matrix)
    report = {
        "witness": name,
        "K": d.K,
        "settings": [s.label for s in d.settings],
        "constant": d.constant,
        "max_deviation": dev,
        "tolerance": tol,
        "pass": bool(dev <= tol),
    }
    if name in ("Ww2", "Wghz"):
        proj = w.alpha * np.eye(8) - expand(d)
        vals, vecs = hermitian_eig(proj)
        rank = int(np.sum(np.abs(vals) > 1e-8))
        report["recovered_projector"] = {
            "rank": rank,
            "trace": float(np.trace(proj).real),
            "eigenvalues": [float(v) for v in vals],
            "fidelity_with_ghz_bar": float(abs(np.vdot(vecs[:, 0], states.make_ghz_bar().vec)) ** 2),
            "fidelity_with_printed_expansion": float(
                abs(np.vdot(vecs[:, 0], states.make_ghz_bar_printed().vec)) ** 2
            ),
        }
    if name == "Wpsi4":
        printed = decomposition_wpsi4(PSI4_DIAGONALS_PRINTED)
        report["printed_variant"] = {
            "diagonal_settings": list(PSI4_DIAGONALS_PRINTED),
            "distinct_settings": len({s.label for s in printed.settings}),
            "max_deviation": max_deviation(printed, w.matrix),
            "pass": bool(max_deviation(printed, w.matrix) <= tol),
        }
        report["resolution"] = (
            "the printed list repeats (x+z)^4 and omits (y+z)^4; the symmetric "
            "completion with (y+z)^4 reproduces 3/4*1 - |Psi4><Psi4| and is shipped"
        )
    return report
