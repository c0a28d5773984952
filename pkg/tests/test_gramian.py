import numpy as np
import pytest
from numpy.testing import assert_allclose

from hdgp.errors import InputError, ManifoldError
from hdgp.gramian import (
    HGramianSplit,
    Hdm,
    ObservationMask,
    certify_h_gramian,
    gramian_from_hdm,
    h_gramian,
    hdm_from_gramian,
    hdm_of_points,
    relative_error,
)
from hdgp.lorentz import loid_distance, random_loid_points


class TestHdm:
    def test_symmetrized_and_read_only(self):
        d = Hdm([[0.0, 1.0], [1.0, 0.0]])
        assert d.n == 2
        with pytest.raises(ValueError):
            d.values[0, 1] = 3.0

    @pytest.mark.parametrize(
        "values",
        [
            [[0.0, -1.0], [-1.0, 0.0]],
            [[1.0, 1.0], [1.0, 0.0]],
            [[0.0, 1.0], [2.0, 0.0]],
            [[0.0, np.inf], [np.inf, 0.0]],
        ],
    )
    def test_invalid(self, values):
        with pytest.raises(InputError):
            Hdm(values)


class TestObservationMask:
    def test_full_and_empty(self):
        assert ObservationMask.full(4).measured_pairs == 6
        assert ObservationMask.empty(4).measured_pairs == 0

    @pytest.mark.parametrize(
        "entries",
        [
            [[0.0, 0.5], [0.5, 0.0]],
            [[1.0, 1.0], [1.0, 0.0]],
            [[0.0, 1.0], [0.0, 0.0]],
        ],
    )
    def test_invalid(self, entries):
        with pytest.raises(InputError):
            ObservationMask(entries)


class TestGramianMaps:
    def test_h_gramian_entries(self, planar_points):
        g = h_gramian(planar_points)
        assert_allclose(np.diag(g), -1.0, atol=1e-9)
        off = g[~np.eye(len(planar_points), dtype=bool)]
        assert np.all(off <= -1.0 + 1e-9)

    def test_hdm_matches_pairwise_distances(self, planar_points):
        d = hdm_of_points(planar_points).values
        for i, p in enumerate(planar_points):
            for j, q in enumerate(planar_points):
                assert d[i, j] == pytest.approx(loid_distance(p, q), abs=1e-7)

    def test_gramian_from_hdm_inverts(self, planar_points):
        g = h_gramian(planar_points)
        back = gramian_from_hdm(hdm_from_gramian(g))
        assert_allclose(back, g, rtol=1e-9, atol=1e-9)

    def test_clamp_rejects_off_manifold(self):
        g = np.array([[-1.0, -0.5], [-0.5, -1.0]])
        with pytest.raises(ManifoldError):
            hdm_from_gramian(g)

    def test_clamp_tolerates_roundoff(self):
        g = np.array([[-1.0, -1.0 + 1e-12], [-1.0 + 1e-12, -1.0]])
        assert hdm_from_gramian(g).values[0, 1] == 0.0


class TestRelativeError:
    def test_identical(self, planar_points):
        d = hdm_of_points(planar_points)
        assert relative_error(d, d) == 0.0

    def test_masked_entries_ignored(self):
        ref = np.array([[0.0, 1.0, 2.0], [1.0, 0.0, 1.0], [2.0, 1.0, 0.0]])
        est = ref.copy()
        est[0, 2] = est[2, 0] = 5.0
        mask = ObservationMask.full(3).entries.copy()
        mask[0, 2] = mask[2, 0] = 0.0
        assert relative_error(ref, est, mask) == 0.0
        assert relative_error(ref, est) > 0.0

    def test_zero_reference(self):
        assert relative_error(np.zeros((2, 2)), np.zeros((2, 2))) == 0.0
        assert relative_error(np.zeros((2, 2)), np.ones((2, 2))) == float("inf")


class TestSplit:
    def test_jordan_split(self, planar_points):
        g = h_gramian(planar_points)
        split = HGramianSplit.from_gramian(g)
        assert_allclose(split.gramian, g, atol=1e-9)

    def test_non_psd_rejected(self):
        with pytest.raises(InputError):
            HGramianSplit(-np.eye(2), np.zeros((2, 2)))


class TestCertificate:
    @pytest.mark.parametrize("d", [2, 5])
    @pytest.mark.parametrize("seed", range(4))
    def test_points_certify(self, d, seed):
        points = random_loid_points(12, d, seed=seed)
        g = h_gramian(points)
        cert = certify_h_gramian(g, d)
        assert cert.valid
        assert cert.neg_eigs == 1
        assert cert.pos_eigs <= d
        assert np.trace(g) == pytest.approx(-12.0, abs=1e-6)

    def test_two_hundred_point_sets(self):
        rng = np.random.default_rng(32)
        for seed in range(200):
            n = int(rng.integers(3, 31))
            d = 2 if seed % 2 == 0 else 5
            g = h_gramian(random_loid_points(n, d, seed=seed))
            cert = certify_h_gramian(g, d)
            assert cert.valid
            assert cert.neg_eigs == 1
            assert cert.pos_eigs <= min(d, n - 1)
            assert np.trace(g) == pytest.approx(-n, abs=1e-6)

    def test_rank_too_high_for_dimension(self):
        g = h_gramian(random_loid_points(10, 5, seed=1))
        assert not certify_h_gramian(g, 2).valid

    def test_no_negative_eigenvalue(self):
        cert = certify_h_gramian(np.eye(3), 2)
        assert not cert.valid
        assert cert.neg_eigs == 0

    def test_negative_identity(self):
        cert = certify_h_gramian(-np.eye(3), 2)
        assert not cert.valid
        assert cert.neg_eigs == 3
