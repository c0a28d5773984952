import numpy as np
import pytest
from numpy.testing import assert_allclose

from hdgp.errors import InputError, ManifoldError
from hdgp.lorentz import (
    LoidPoint,
    MinkowskiForm,
    PoincarePoint,
    from_poincare,
    h_adjoint,
    is_h_unitary,
    loid_distance,
    lorentz_boost,
    lorentz_inner,
    poincare_distance,
    points_matrix,
    random_loid_points,
    to_poincare,
)


class TestLorentzInner:
    @pytest.mark.parametrize("seed", range(5))
    def test_symmetric_and_bilinear(self, seed):
        rng = np.random.default_rng(seed)
        x, y, z = rng.normal(size=(3, 4))
        a, b = rng.normal(size=2)
        assert lorentz_inner(x, y) == pytest.approx(lorentz_inner(y, x), abs=1e-12)
        assert lorentz_inner(a * x + b * y, z) == pytest.approx(
            a * lorentz_inner(x, z) + b * lorentz_inner(y, z), abs=1e-9
        )

    def test_signature(self):
        assert lorentz_inner([1.0, 0.0], [1.0, 0.0]) == -1.0
        assert lorentz_inner([0.0, 1.0], [0.0, 1.0]) == 1.0

    def test_dimension_mismatch(self):
        with pytest.raises(InputError):
            lorentz_inner([1.0, 0.0], [1.0, 0.0, 0.0])

    def test_minkowski_form_matches_inner(self, rng):
        x, y = rng.normal(size=(2, 3))
        form = MinkowskiForm(3)
        assert x @ form.apply(y) == pytest.approx(lorentz_inner(x, y))
        assert_allclose(form.matrix(), np.diag([-1.0, 1.0, 1.0]))


class TestPoints:
    def test_apex_is_on_manifold(self):
        p = LoidPoint([1.0, 0.0, 0.0])
        assert p.dim == 2
        assert_allclose(p.spatial, [0.0, 0.0])

    def test_off_manifold_rejected(self):
        with pytest.raises(ManifoldError):
            LoidPoint([2.0, 0.0])

    def test_lower_sheet_rejected(self):
        with pytest.raises(ManifoldError):
            LoidPoint([-1.0, 0.0])

    def test_coordinates_read_only(self):
        p = LoidPoint.lift([0.3, -0.2])
        with pytest.raises(ValueError):
            p.coords[0] = 5.0

    def test_poincare_outside_ball_rejected(self):
        with pytest.raises(ManifoldError):
            PoincarePoint([0.6, 0.8])

    def test_random_points_deterministic(self):
        a = random_loid_points(5, 3, seed=11)
        b = random_loid_points(5, 3, seed=11)
        assert all(np.array_equal(p.coords, q.coords) for p, q in zip(a, b))

    def test_points_matrix_mixed_dimensions(self):
        with pytest.raises(InputError):
            points_matrix([LoidPoint.lift([0.1]), LoidPoint.lift([0.1, 0.2])])


class TestDistances:
    def test_identical_points_have_zero_distance(self, planar_points):
        p = planar_points[0]
        assert loid_distance(p, p) == 0.0

    def test_known_distance(self):
        x = LoidPoint([np.cosh(1.0), np.sinh(1.0), 0.0])
        apex = LoidPoint([1.0, 0.0, 0.0])
        assert loid_distance(apex, x) == pytest.approx(1.0, abs=1e-12)

    def test_metric_axioms(self, planar_points):
        pts = planar_points
        for a in pts:
            for b in pts:
                assert loid_distance(a, b) >= 0.0
                assert loid_distance(a, b) == pytest.approx(loid_distance(b, a), abs=1e-12)
                for c in pts[:3]:
                    assert loid_distance(a, c) <= (
                        loid_distance(a, b) + loid_distance(b, c) + 1e-9
                    )

    def test_poincare_isometry(self, planar_points):
        for a in planar_points:
            for b in planar_points:
                expected = loid_distance(a, b)
                got = poincare_distance(to_poincare(a), to_poincare(b))
                assert got == pytest.approx(expected, rel=1e-9, abs=1e-9)

    def test_poincare_round_trip(self, planar_points):
        for p in planar_points:
            back = from_poincare(to_poincare(p))
            assert_allclose(back.coords, p.coords, rtol=1e-12, atol=1e-12)
        assert all(np.linalg.norm(to_poincare(p).coords) < 1 for p in planar_points)

    def test_poincare_distance_near_boundary(self):
        with pytest.raises(ManifoldError):
            poincare_distance([1.0 - 1e-14, 0.0], [0.0, 0.0])


class TestRigidMotions:
    def test_boost_is_h_unitary(self):
        r = lorentz_boost(0.7, dim=3, axis=2)
        assert is_h_unitary(r)
        assert_allclose(h_adjoint(r) @ r, np.eye(3), atol=1e-12)

    def test_non_unitary(self):
        assert not is_h_unitary(2.0 * np.eye(3))

    def test_boost_preserves_distances(self, planar_points):
        r = lorentz_boost(0.5, dim=3)
        moved = [LoidPoint(r @ p.coords) for p in planar_points]
        for i in range(len(planar_points)):
            for j in range(i):
                assert loid_distance(moved[i], moved[j]) == pytest.approx(
                    loid_distance(planar_points[i], planar_points[j]), rel=1e-9
                )

    def test_adjoint_inverts_composed_motions(self, rng):
        for _ in range(500):
            dim = int(rng.integers(2, 6))
            q, _ = np.linalg.qr(rng.normal(size=(dim - 1, dim - 1)))
            rotation = np.eye(dim)
            rotation[1:, 1:] = q
            r = rotation
            for _ in range(3):
                axis = int(rng.integers(1, dim))
                r = lorentz_boost(rng.uniform(-1.0, 1.0), dim=dim, axis=axis) @ r
            assert is_h_unitary(r)
            assert_allclose(h_adjoint(r) @ r, np.eye(dim), atol=1e-10)
            assert_allclose(h_adjoint(h_adjoint(r)), r)
            s = lorentz_boost(rng.uniform(-1.0, 1.0), dim=dim)
            assert_allclose(h_adjoint(r @ s), h_adjoint(s) @ h_adjoint(r), atol=1e-12)


class TestRandomizedGeometry:
    def test_hundred_thousand_checks(self):
        rng = np.random.default_rng(2024)
        checks = 0
        for _ in range(20000):
            d = int(rng.integers(1, 6))
            u, v, w = rng.normal(size=(3, d + 1))
            a, b = rng.normal(size=2)
            assert abs(lorentz_inner(u, v) - lorentz_inner(v, u)) <= 1e-12
            lhs = lorentz_inner(a * u + b * v, w)
            rhs = a * lorentz_inner(u, w) + b * lorentz_inner(v, w)
            assert abs(lhs - rhs) <= 1e-9 * (1.0 + abs(rhs))

            x, y, z = (LoidPoint.lift(rng.normal(scale=0.7, size=d)) for _ in range(3))
            dxy, dyx = loid_distance(x, y), loid_distance(y, x)
            assert dxy >= 0.0 and abs(dxy - dyx) <= 1e-9
            assert loid_distance(x, z) <= dxy + loid_distance(y, z) + 1e-9
            assert poincare_distance(to_poincare(x), to_poincare(y)) == pytest.approx(
                dxy, rel=1e-9, abs=1e-9
            )
            checks += 5
        assert checks == 100000
