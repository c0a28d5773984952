import numpy as np
import pandas as pd
import pytest

from hdgp.errors import InputError
from hdgp.experiments.sampling import (
    complete_ordinal_set,
    concentration_correlations,
    corrupt_ordinal_set,
    ordinal_accuracy,
    ordinal_density_to_count,
    ordinal_set_from_similarity,
    sample_metric_mask,
    sample_ordinal_by_density,
    sample_ordinal_set,
)
from hdgp.gramian import hdm_of_points
from hdgp.lorentz import LoidPoint


def _holds(dist, ordinal):
    return all(dist[c.i1, c.i2] <= dist[c.i3, c.i4] for c in ordinal)


class TestMetricMask:
    def test_count_and_symmetry(self):
        mask = sample_metric_mask(10, 0.2, seed=1)
        assert mask.measured_pairs == 36
        assert np.array_equal(mask.entries, mask.entries.T)
        assert np.all(np.diag(mask.entries) == 0)

    def test_deterministic(self):
        a = sample_metric_mask(8, 0.5, seed=4)
        b = sample_metric_mask(8, 0.5, seed=4)
        assert np.array_equal(a.entries, b.entries)

    @pytest.mark.parametrize("s, pairs", [(0.0, 28), (1.0, 0)])
    def test_extremes(self, s, pairs):
        assert sample_metric_mask(8, s).measured_pairs == pairs

    @pytest.mark.parametrize("s", [-0.1, 1.5])
    def test_density_range(self, s):
        with pytest.raises(InputError):
            sample_metric_mask(5, s)


class TestOrdinalSets:
    def test_complete_set(self, planar_points):
        ordinal = complete_ordinal_set(planar_points)
        m = 8 * 7 // 2
        assert ordinal.shape == (m * (m - 1) // 2, 4)
        dist = hdm_of_points(planar_points).values
        assert np.all(
            dist[ordinal[:, 0], ordinal[:, 1]] <= dist[ordinal[:, 2], ordinal[:, 3]]
        )

    def test_generator_is_fully_accurate(self, planar_points):
        assert ordinal_accuracy(planar_points, complete_ordinal_set(planar_points)) == 1.0

    def test_ties_count_as_wrong(self):
        points = [LoidPoint.lift([0.0, 0.0])] * 3
        ordinal = complete_ordinal_set(hdm_of_points(points))
        assert ordinal_accuracy(points, ordinal) == 0.0

    def test_empty_set_scores_zero(self, planar_points):
        assert ordinal_accuracy(planar_points, []) == 0.0

    def test_sample_size(self, planar_points):
        ordinal = sample_ordinal_set(planar_points, 2, seed=3)
        assert len(ordinal) == 2 * 2 * 28
        assert len({c.as_tuple() for c in ordinal}) == len(ordinal)
        assert _holds(hdm_of_points(planar_points).values, ordinal)

    def test_sample_capped_at_complete(self, planar_points):
        small = planar_points[:4]
        assert len(sample_ordinal_set(small, 50)) == 15

    def test_density(self, planar_points):
        ordinal = sample_ordinal_by_density(planar_points, 0.9, seed=2)
        assert len(ordinal) == ordinal_density_to_count(8, 0.9)
        assert _holds(hdm_of_points(planar_points).values, ordinal)
        assert len(sample_ordinal_by_density(planar_points, 0.0, limit=10)) == 10

    def test_corruption_flips(self, planar_points):
        ordinal = sample_ordinal_set(planar_points, 1, seed=0)
        corrupted = corrupt_ordinal_set(ordinal, 0.25, seed=0)
        flipped = sum(a != b for a, b in zip(ordinal, corrupted))
        assert flipped == round(0.25 * len(ordinal))
        for a, b in zip(ordinal, corrupted):
            if a != b:
                assert b.as_tuple() == (a.i3, a.i4, a.i1, a.i2)


class TestSimilarity:
    def test_similar_pairs_are_closer(self):
        sim = np.array(
            [
                [1.0, 0.9, 0.1, 0.2],
                [0.9, 1.0, 0.3, 0.4],
                [0.1, 0.3, 1.0, 0.8],
                [0.2, 0.4, 0.8, 1.0],
            ]
        )
        ordinal = ordinal_set_from_similarity(sim, 10)
        assert ordinal
        for c in ordinal:
            assert sim[c.i1, c.i2] >= sim[c.i3, c.i4]

    def test_correlations_drop_text_columns(self):
        table = pd.DataFrame(
            {
                "a": [1.0, 2.0, 3.0, 4.0],
                "b": [2.0, 4.0, 6.0, 8.1],
                "label": ["x", "y", "z", "w"],
            }
        )
        corr = concentration_correlations(table)
        assert list(corr.columns) == ["a", "b"]
        assert corr.loc["a", "a"] == pytest.approx(1.0)
        assert corr.loc["a", "b"] > 0.99

    def test_empty_table(self):
        with pytest.raises(InputError):
            concentration_correlations(pd.DataFrame())
