"""Entanglement measures, convex roofs, and split comparisons."""

from ._entmono import (
    DensityMatrix,
    NumericError,
    PureState,
    SignatureError,
    StateIOError,
    __version__,
    alpha_search,
    bell_pair,
    bell_with_spectator,
    biseparable_form_check,
    ckw_check,
    concavity_probe,
    disentangling_gap,
    e_g_roof,
    ensemble_state,
    entropy,
    ghz_state,
    is_product,
    load_state,
    make_product_family,
    measure_concavity_probe,
    negativity,
    partial_trace,
    partial_transpose,
    ppt_separable,
    pure_measure,
    purify,
    random_density,
    random_pure,
    random_unitary,
    reduced_density,
    roof_value,
    save_state,
    schmidt,
    w_state,
    witness_factorization,
    wootters_eof,
)

__all__ = [
    "DensityMatrix",
    "NumericError",
    "PureState",
    "SignatureError",
    "StateIOError",
    "__version__",
    "alpha_search",
    "bell_pair",
    "bell_with_spectator",
    "biseparable_form_check",
    "ckw_check",
    "concavity_probe",
    "disentangling_gap",
    "e_g_roof",
    "ensemble_state",
    "entropy",
    "ghz_state",
    "is_product",
    "load_state",
    "make_product_family",
    "measure_concavity_probe",
    "negativity",
    "partial_trace",
    "partial_transpose",
    "ppt_separable",
    "pure_measure",
    "purify",
    "random_density",
    "random_pure",
    "random_unitary",
    "reduced_density",
    "roof_value",
    "save_state",
    "schmidt",
    "w_state",
    "witness_factorization",
    "wootters_eof",
]
