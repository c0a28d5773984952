import math

import numpy as np
import pytest

from hdgp.embedding import SdrOptions
from hdgp.errors import InputError
from hdgp.experiments import (
    TrialSummary,
    ordinal_benchmark,
    ordinal_consistency_curve,
    solved_hdm,
    sparsity_success_curve,
    summaries_to_frame,
    tree_benchmark,
)
from hdgp.experiments.benchmarks import _trial_seeds
from hdgp.gramian import h_gramian, hdm_of_points


class TestTrialSummary:
    def test_record(self):
        summary = TrialSummary(
            "sparsity", {"n": 10, "s": 0.2}, trials=4, seed=1, mean=0.1, std=0.0, successes=3
        )
        record = summary.to_record()
        assert record["experiment"] == "sparsity"
        assert record["n"] == 10
        assert record["success_probability"] == 0.75

    def test_counts_bounded(self):
        with pytest.raises(InputError):
            TrialSummary("tree", {}, trials=2, seed=0, failures=3)

    def test_no_success_count(self):
        assert TrialSummary("tree", {}, trials=2, seed=0).success_probability is None

    def test_frame(self):
        frame = summaries_to_frame(
            [
                TrialSummary("tree", {"n": 5, "geometry": "hyperbolic"}, 2, 0, extra={"d0_mean": 1.0}),
                TrialSummary("tree", {"n": 5, "geometry": "euclidean"}, 2, 0, extra={"d0_mean": 3.0}),
            ]
        )
        assert len(frame) == 2
        assert {"n", "geometry", "mean", "failures", "nonconverged", "d0_mean"} <= set(frame.columns)

    def test_empty_frame(self):
        assert summaries_to_frame([]).empty


def test_trial_seeds_are_reproducible():
    assert _trial_seeds(3, 4) == _trial_seeds(3, 4)
    assert _trial_seeds(3, 4) != _trial_seeds(4, 4)
    assert _trial_seeds(3, 2) == _trial_seeds(3, 4)[:2]


def test_solved_hdm_tolerates_residual_level_infeasibility(compact_points):
    g = h_gramian(compact_points)
    g = g + 1e-6 * np.ones_like(g)
    np.fill_diagonal(g, -1.0)
    assert solved_hdm(g).n == len(compact_points)


class TestSparsity:
    def test_complete_data_succeeds(self):
        summaries = sparsity_success_curve(6, 2, [0.0], m_trials=2, seed=1)
        (summary,) = summaries
        assert summary.success_probability == 1.0
        assert summary.failures == 0
        assert summary.params["s"] == 0.0

    def test_reproducible(self):
        first = sparsity_success_curve(5, 2, [0.0], m_trials=1, seed=9)
        second = sparsity_success_curve(5, 2, [0.0], m_trials=1, seed=9)
        assert first[0].to_record() == second[0].to_record()

    def test_needs_trials(self):
        with pytest.raises(InputError):
            sparsity_success_curve(5, 2, [0.0], m_trials=0)

    @pytest.mark.slow
    def test_parallel_matches_serial(self):
        serial = sparsity_success_curve(5, 2, [0.0, 0.2], m_trials=2, seed=2)
        parallel = sparsity_success_curve(5, 2, [0.0, 0.2], m_trials=2, seed=2, n_jobs=2)
        assert [s.to_record() for s in serial] == [s.to_record() for s in parallel]

    @pytest.mark.slow
    def test_probability_decreases_with_missing_pairs(self):
        summaries = sparsity_success_curve(10, 2, [0.0, 0.2, 0.4], m_trials=20, seed=0)
        probs = [s.success_probability for s in summaries]
        assert probs[0] == 1.0
        assert probs[1] >= 0.8
        assert all(b <= a + 1.0 / 20 for a, b in zip(probs, probs[1:]))

    @pytest.mark.slow
    def test_planar_twelve_points_with_gaps(self):
        (summary,) = sparsity_success_curve(12, 2, [0.3], m_trials=5, seed=0)
        assert summary.failures == 0
        assert summary.successes >= 4


class TestTrees:
    def test_two_nodes(self):
        hyper, eucl = tree_benchmark([2], m_trials=1, seed=0)
        assert hyper.params["geometry"] == "hyperbolic"
        assert eucl.params["geometry"] == "euclidean"
        assert hyper.failures == 0 and eucl.failures == 0
        assert eucl.mean <= 1e-8
        assert hyper.extra["d0_mean"] == 1.0

    def test_two_nodes_tight_budget(self):
        # the tree fidelity budget is loose enough to shorten a single edge
        hyper, _ = tree_benchmark([2], m_trials=1, seed=0, options=SdrOptions())
        assert hyper.mean <= 1e-2

    @pytest.mark.slow
    def test_hyperbolic_beats_euclidean(self):
        summaries = tree_benchmark([9, 13, 17], m_trials=10, seed=0)
        for hyper, eucl in zip(summaries[::2], summaries[1::2]):
            assert hyper.params["n"] == eucl.params["n"]
            assert hyper.mean < eucl.mean
            assert hyper.extra["d0_mean"] <= eucl.extra["d0_mean"]


class TestOrdinal:
    def test_grid_layout(self):
        summaries = ordinal_benchmark(5, [1, 2], 1, [0.0, 10.0], seed=0)
        assert [(s.params["d"], s.params["zeta_pct"]) for s in summaries] == [
            (1, 0.0),
            (1, 10.0),
            (2, 0.0),
            (2, 10.0),
        ]
        for s in summaries:
            assert s.metric == "gamma"
            assert s.failures == 1 or 0.0 <= s.mean <= 1.0

    def test_empty_grid(self):
        with pytest.raises(InputError):
            ordinal_benchmark(5, [], 1, [0.0])

    def test_consistency(self):
        (summary,) = ordinal_consistency_curve(5, 2, [0.5], m_trials=2, k_realizations=1, seed=0)
        assert summary.experiment == "ordinal_consistency"
        assert summary.failures == 1 or summary.mean >= 0.0

    @pytest.mark.slow
    def test_accuracy_improves_with_dimension(self):
        summaries = ordinal_benchmark(20, [2, 4, 6], 4, [0.0], seed=0)
        gammas = [s.mean for s in summaries]
        assert all(not math.isnan(g) for g in gammas)
        assert all(s.failures == 0 for s in summaries)
        assert gammas[0] >= 0.85
        assert all(b >= a - 0.02 for a, b in zip(gammas, gammas[1:]))

    @pytest.mark.slow
    def test_slack_absorbs_corrupted_comparisons(self):
        strict, relaxed = ordinal_benchmark(20, [2], 4, [0.0, 1.0], seed=0, corruption=0.02)
        assert strict.params["zeta_pct"] == 0.0 and relaxed.params["zeta_pct"] == 1.0
        assert relaxed.failures == 0
        assert relaxed.mean >= strict.mean - 0.01


def test_reconstruction_matches_truth_at_full_rank(compact_points):
    truth = hdm_of_points(compact_points)
    assert solved_hdm(h_gramian(compact_points)).values == pytest.approx(truth.values, abs=1e-7)
