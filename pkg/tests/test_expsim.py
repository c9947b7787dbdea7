import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperprob import hyp8
from hyperprob.errors import InsufficientData
from hyperprob.expsim import (
    BLOCK_SIZE,
    convergence_report,
    detect_regime,
    estimate_stats,
    exact_counts,
    lambda_from_cells,
    sample,
    sample_shard,
    simulate,
)
from hyperprob.interference import lambda_coefficients
from hyperprob.kolmogorov import context_stats


@pytest.fixture(scope="module")
def big_run(space8):
    return sample(space8, "C", 1_000_000, 42)


def test_context_share(big_run):
    # P(C) = 0.2; binomial 5 sigma band at n = 1e6 is 0.002
    assert abs(big_run.n_context / big_run.n_total - 0.2) <= 0.002


def test_count_consistency(big_run):
    assert big_run.atom_counts.sum() == big_run.n_total == big_run.cells.sum()
    assert big_run.n_a_context.sum() == big_run.n_b_context.sum() == big_run.n_context
    assert big_run.joint_ab.sum() == big_run.n_total
    # w2 has zero weight
    assert big_run.atom_counts[big_run.atom_ids.index("w2")] == 0


def test_single_trial(space8):
    c = sample(space8, "C", 1, 0)
    assert c.atom_counts.sum() == 1 and c.cells.sum() == 1
    with pytest.raises(ValueError):
        sample(space8, "C", 0, 0)


def test_determinism(space8):
    a, b = sample(space8, "C", 50_000, 7), sample(space8, "C", 50_000, 7)
    assert np.array_equal(a.atom_counts, b.atom_counts)
    assert json.dumps(simulate(space8, "C", 50_000, 7), sort_keys=True) == json.dumps(
        simulate(space8, "C", 50_000, 7), sort_keys=True
    )
    assert not np.array_equal(a.atom_counts, sample(space8, "C", 50_000, 8).atom_counts)


def test_shard_count_does_not_matter(space8):
    n = 5 * BLOCK_SIZE + 123
    ref = sample(space8, "C", n, 3)
    for k in (2, 3, 6, 50):
        got = sample(space8, "C", n, 3, shards=k)
        assert np.array_equal(got.atom_counts, ref.atom_counts) and got.n_total == n


def test_merge_is_order_independent(space8):
    n = 4 * BLOCK_SIZE
    parts = [sample_shard(space8, "C", n, 11, s, 4) for s in range(4)]
    forward = parts[0].merge(parts[1]).merge(parts[2]).merge(parts[3])
    backward = parts[3].merge(parts[2]).merge(parts[1].merge(parts[0]))
    assert np.array_equal(forward.cells, backward.cells)
    with pytest.raises(ValueError):
        parts[0].merge(sample_shard(space8, "C", n, 12, 1, 4))


def test_estimates(big_run):
    s = estimate_stats(big_run)
    assert s.empirical
    assert abs(s.p_b[0] - 0.95) <= 0.01


def test_exact_mode_is_the_oracle(space8):
    for name in ("C", "D", "OMEGA", "B1"):
        est = estimate_stats(exact_counts(space8, name))
        ref = context_stats(space8, name)
        assert np.allclose(est.p_a, ref.p_a, atol=1e-15) and np.allclose(est.p_b, ref.p_b, atol=1e-15)
        assert np.allclose(est.transition, ref.transition, atol=1e-15)
        assert not est.empirical


def test_insufficient_data(space8):
    with pytest.raises(InsufficientData):
        estimate_stats(sample(space8, "C", 1, 0))
    rare = sum(1 for seed in range(20) if _fails(space8, seed))
    assert rare > 0


def _fails(space, seed):
    try:
        estimate_stats(sample(space, "C", 10, seed))
    except InsufficientData:
        return True
    return False


def test_vectorized_lambda_matches_scalar(big_run):
    lam = lambda_from_cells(big_run.cells)
    assert np.allclose(lam, lambda_coefficients(estimate_stats(big_run)), atol=1e-12)
    assert np.all(np.isnan(lambda_from_cells(np.zeros((2, 2, 2)))))


def test_regime_hyperbolic(big_run):
    rep = detect_regime(big_run)
    assert rep.verdict == "hyperbolic"
    assert abs(rep.lambdas[0] - 1.125) <= 0.03
    assert 0 < rep.stderr[0] < 0.03


def test_regime_whole_space(space8):
    rep = detect_regime(sample(space8, "OMEGA", 1_000_000, 42))
    assert rep.verdict == "classical"
    assert all(abs(l) <= 2 * s + 1e-9 for l, s in zip(rep.lambdas, rep.stderr))


def test_regime_small_sample_is_inconclusive(space8):
    verdicts = []
    for seed in range(20):
        try:
            verdicts.append(detect_regime(sample(space8, "C", 100, seed)).verdict)
        except InsufficientData:
            verdicts.append("insufficient")
    assert verdicts.count("inconclusive") >= 15
    assert "hyperbolic" not in verdicts


def test_exact_regime(space8):
    rep = detect_regime(exact_counts(space8, "C"))
    assert rep.method == "exact" and rep.stderr == (0.0, 0.0) and rep.verdict == "hyperbolic"
    assert detect_regime(exact_counts(space8, "D")).verdict == "trigonometric"
    assert detect_regime(exact_counts(space8, "OMEGA")).verdict == "classical"


def test_error_bars_agree_with_seed_spread(space8):
    n = 200_000
    lam = np.array([detect_regime(sample(space8, "C", n, s), "delta").lambdas for s in range(40)])
    se_delta = detect_regime(sample(space8, "C", n, 999), "delta").stderr
    se_boot = detect_regime(sample(space8, "C", n, 999), "bootstrap").stderr
    spread = lam.std(axis=0, ddof=1)
    for j in range(2):
        assert 0.6 < se_delta[j] / spread[j] < 1.6
        assert 0.6 < se_boot[j] / se_delta[j] < 1.6


def test_convergence_table_shapes(space8):
    rows = convergence_report(space8, "C", [10_000], [1])
    assert len(rows) == 1 and rows[0]["n_seeds"] == 1 and rows[0]["spread"] == [0.0, 0.0]
    exact = convergence_report(space8, "C", [None], [1, 2, 3])[0]
    assert exact["spread"] == [0.0, 0.0]
    assert np.allclose(exact["mean_lambda"], (1.125, -1.125), atol=1e-12)


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=1, max_value=3 * BLOCK_SIZE), st.integers(min_value=1, max_value=8), st.integers(0, 2**31))
def test_sharding_property(n, shards, seed):
    space = hyp8()
    assert np.array_equal(sample(space, "C", n, seed, shards).atom_counts, sample(space, "C", n, seed).atom_counts)
