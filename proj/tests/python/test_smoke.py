import numpy as np
import pytest

import contrastive_lens as cl


def test_alpha_zero_matches_pca():
    target, background, _ = cl.four_groups(0)
    model = cl.fit(target, background, "0", k=2)
    centered = target - target.mean(axis=0)
    cov = centered.T @ centered / len(target)
    values, vectors = np.linalg.eigh(cov)
    top = vectors[:, np.argsort(values)[::-1][:2]]
    assert cl.subspace_affinity(model.components, top) == pytest.approx(1.0, abs=1e-10)
    assert model.transform(target).shape == (400, 2)


def test_auto_select_returns_three_medoids_in_the_grid():
    target, background, _ = cl.four_groups(1)
    result = cl.auto_select(target, background, p=3, seed=1)
    assert len(result["alphas"]) == 40
    assert len(result["medoid_alphas"]) == 3
    assert all(a in result["alphas"] for a in result["medoid_alphas"])
    assert sorted(result["medoid_alphas"]) == result["medoid_alphas"]
    pairs = [m.variance_pairs[0] for m in result["models"]]
    for before, after in zip(pairs, pairs[1:]):
        assert after[0] <= before[0] + 1e-9
        assert after[1] <= before[1] + 1e-9


def test_feature_weights_and_denoise():
    target, background, _ = cl.four_groups(2)
    model = cl.fit(target, background, "3", k=2)
    weights = model.feature_weights(0)
    assert weights.max() == 1.0
    once = model.denoise(target)
    assert np.abs(model.denoise(once) - once).max() < 1e-10


def test_kernel_fit_on_kernel_toy():
    target, background, labels = cl.kernel_toy(0)
    model = cl.fit_kernel(target, background, "poly", alpha=1.0, k=2)
    emb = model.training_embedding[: len(target)]
    assert emb.shape == (400, 2)
    assert np.allclose(model.transform(target[:5]), emb[:5], atol=1e-8)
    assert set(labels) == {0, 1}


def test_certificate_and_errors():
    cx, cy = cl.random_pair(5, seed=3)
    report = cl.certify(cx, cy, samples=2000, seed=1)
    assert report["passed"]
    assert len(report["trace"]) == 40
    with pytest.raises(ValueError, match="target has 3 features, background has 2"):
        cl.fit(np.ones((4, 3)), np.ones((4, 2)), "1")
    with pytest.raises(ValueError):
        cl.log_grid(0.0, 1.0, 3)
