"""Construct, decompose and evaluate multipartite entanglement witnesses."""

from .measurement import (
    CountsTable,
    LocalDecomposition,
    LocalSetting,
    builtin_decompositions,
    decomposition,
    estimate,
    expand,
    group_pauli_terms,
    probabilities,
    simulate_counts,
)
from .schmidt import Bipartition, alpha, coefficient_matrix, enumerate_bipartitions
from .states import QubitState, make_ghz_bar, make_psi4, make_w, mix_white_noise, sample_biseparable
from .witness import Verdict, WitnessSpec, build_ghz_witness, build_witness, classify, expectation, named_witness

__version__ = "0.1.0"
