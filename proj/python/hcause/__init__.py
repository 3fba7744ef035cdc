"""Noisy-OR hidden-cause inference with an Indian buffet process prior."""

import json

from ._hcause import (
    DataError,
    DegeneracyError,
    ExhaustionError,
    ModelParams,
    canonical_structure,
    exact_posterior,
    generate_dataset,
    harmonic,
    in_degree_error,
    log_likelihood,
    log_prior_Z_finite,
    log_prior_Z_ibp,
    new_cause_activation_prob,
    noisy_or_prob,
    read_matrix_csv,
    sample_ibp,
    structure_error,
)
from . import _hcause


def fit(X, **config):
    """Run a sampler on the 0/1 matrix X.

    Keyword arguments are the fit config keys: sampler, init, iterations,
    seed, burn_in, params (dict), infer_hypers, k_prior, ...
    """
    return _hcause._fit(X, json.dumps(config))


__all__ = [
    "DataError",
    "DegeneracyError",
    "ExhaustionError",
    "ModelParams",
    "canonical_structure",
    "exact_posterior",
    "fit",
    "generate_dataset",
    "harmonic",
    "in_degree_error",
    "log_likelihood",
    "log_prior_Z_finite",
    "log_prior_Z_ibp",
    "new_cause_activation_prob",
    "noisy_or_prob",
    "read_matrix_csv",
    "sample_ibp",
    "structure_error",
]
