"""Certified GHZ fidelity from multipartite Bell violations.

The package builds n-party Svetlichny and MABK Bell operators, verifies the
positivity certificate behind the fidelity statement over all measurement
angles, converts observed Bell values into certified GHZ fidelity lower
bounds, and simulates finite-statistics experiments.
"""
from __future__ import annotations

from .bell import (MABK, SVETLICHNY, BellProtocol, build_mabk, build_operator,
                   build_svetlichny, coefficient_table, evaluate, local_bound,
                   observable, quantum_bound)
from .linalg import (eig2x2_hermitian, exchange_matrix, hermitian_eigenvalues,
                     is_persymmetric, kron, kron_all, pauli)
from .root2 import SQRT2, Root2
from .simulate import (RNG_ALGORITHM, ExperimentRecord, NoiseModel,
                       born_probabilities, certify, estimate_violation,
                       noisy_state, outcome_products, records_to_csv,
                       sample_outcomes)
from .states import (DephasingChannel, IdealState, apply_channel,
                     explicit_ghz_state, g_param, ghz_state, kraus_pair,
                     persymmetry_preserved, spectral_ghz_state)
from .tradeoff import (CurvePoint, TradeoffCurve, curve_to_csv, curve_to_json,
                       emit_curve, fidelity_lower_bound, format_float,
                       is_trivial_bound, relative_violation, threshold,
                       tightness_check, tradeoff_upper_bound,
                       upper_bound_reference)
from .verifier import (CertificateConstants, CertificationReport, GridSpec,
                       StructureViolation, block_decompose, block_unitary,
                       build_T, catalog_constants, closed_form_crosscheck,
                       min_eig_over_grid, parity_projector, projector_lambda,
                       sv3_block_functions, sv4_block_functions,
                       sv4_determinant)

__version__ = "0.1.0"

__all__ = [
    "BellProtocol", "CertificateConstants", "CertificationReport",
    "CurvePoint", "DephasingChannel", "ExperimentRecord", "GridSpec",
    "IdealState", "MABK", "NoiseModel", "RNG_ALGORITHM", "Root2", "SQRT2",
    "SVETLICHNY", "StructureViolation", "TradeoffCurve", "apply_channel",
    "block_decompose", "block_unitary", "born_probabilities", "build_T",
    "build_mabk", "build_operator", "build_svetlichny", "catalog_constants",
    "certify", "closed_form_crosscheck", "coefficient_table", "curve_to_csv",
    "curve_to_json", "eig2x2_hermitian", "emit_curve", "estimate_violation",
    "evaluate", "exchange_matrix", "explicit_ghz_state",
    "fidelity_lower_bound", "format_float", "g_param", "ghz_state",
    "hermitian_eigenvalues", "is_persymmetric", "is_trivial_bound", "kron",
    "kron_all", "kraus_pair", "local_bound", "min_eig_over_grid",
    "noisy_state", "observable", "outcome_products", "parity_projector",
    "pauli", "persymmetry_preserved", "projector_lambda", "quantum_bound",
    "records_to_csv", "relative_violation", "sample_outcomes",
    "spectral_ghz_state", "sv3_block_functions", "sv4_block_functions",
    "sv4_determinant", "threshold", "tightness_check", "tradeoff_upper_bound",
    "upper_bound_reference", "__version__",
]
