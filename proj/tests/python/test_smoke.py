import math

import numpy as np
import pytest

import hcause


def test_likelihood_and_priors():
    X = np.array([[1, 0], [1, 1]], dtype=np.uint8)
    Z = np.array([[1], [1]], dtype=np.uint8)
    Y = np.array([[1, 0]], dtype=np.uint8)
    pr = hcause.ModelParams(epsilon=0.1, lambda_=0.9, p=0.2, alpha=1.0)
    # Row 0: 1 - 0.1*0.9 for the on entry, 0.9 for the leak-only off entry.
    p_on = 1 - (1 - 0.9) * (1 - 0.1)
    expected = 2 * math.log(p_on) + math.log(0.9) + math.log(0.1)
    assert hcause.log_likelihood(X, Z, Y, pr) == pytest.approx(expected)
    assert hcause.noisy_or_prob(1, pr) == pytest.approx(p_on)
    assert math.isfinite(hcause.log_prior_Z_ibp(Z, 2.0))
    assert math.isfinite(hcause.log_prior_Z_finite(Z, 1, 2.0))
    with pytest.raises(ValueError):
        hcause.log_prior_Z_finite(Z, 3, 2.0)
    with pytest.raises(ValueError):
        hcause.log_likelihood(np.array([[2]]), Z[:1], Y[:, :1], pr)


def test_generate_and_fit_are_deterministic():
    Z = hcause.canonical_structure("degree1")
    pr = hcause.ModelParams()
    X1, Y1 = hcause.generate_dataset(Z, 40, pr, 7)
    X2, _ = hcause.generate_dataset(Z, 40, pr, 7)
    assert X1.shape == (6, 40) and Y1.shape == (6, 40)
    assert np.array_equal(X1, X2)

    a = hcause.fit(X1, sampler="gibbs", iterations=20, seed=3)
    b = hcause.fit(X1, sampler="gibbs", iterations=20, seed=3)
    assert a["trace_jsonl"] == b["trace_jsonl"]
    assert len(a["trace"]) == 21
    assert a["mean_zzt"].shape == (6, 6)
    assert hcause.structure_error(a["mean_zzt"], Z) >= 0.0
    assert hcause.in_degree_error(a["mean_zzt"], Z) >= 0.0

    rj = hcause.fit(X1, sampler="rjmcmc", iterations=5, seed=3, infer_hypers=True)
    assert rj["Z"].shape[0] == 6


def test_ibp_and_exact_posterior():
    Z = hcause.sample_ibp(5, 2.0, 1)
    assert Z.shape[0] == 5
    assert (Z.sum(axis=0) > 0).all()
    X = np.array([[1, 0], [1, 1]], dtype=np.uint8)
    post = hcause.exact_posterior(X, 2, hcause.ModelParams(0.05, 0.8, 0.3, 1.0))
    assert post["probs"].sum() == pytest.approx(1.0)
    assert sum(post["k_plus_probs"]) == pytest.approx(1.0)


def test_bad_config_and_degeneracy():
    X = np.array([[1]], dtype=np.uint8)
    with pytest.raises(ValueError):
        hcause.fit(X, iters=3)
    with pytest.raises(hcause.DegeneracyError):
        hcause.fit(X, iterations=3, params={"epsilon": 0.0, "p": 0.0})
