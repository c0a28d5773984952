import numpy as np
import pytest
from numpy.testing import assert_allclose

from hdgp.config import EPS1_FACTOR
from hdgp.conic_solver import (
    OrdinalConstraint,
    SolverConfig,
    SolverReport,
    SplitSdpProblem,
    _project_box_ball,
    _project_ordinal,
    _repair_diagonal,
    audit_split,
    edm_operator,
    fidelity_budget,
    logdet_reweight,
    ordinal_margins,
    projection_reweight,
    psd_project,
    rank_tail,
    solve_psd_least_squares,
    solve_split_sdp,
)
from hdgp.errors import InputError
from hdgp.experiments.sampling import complete_ordinal_set
from hdgp.gramian import HGramianSplit, Hdm, ObservationMask, h_gramian


def _complete_problem(truth, mask, **kwargs):
    target = np.cosh(truth.values)
    eps1 = fidelity_budget(target, mask)
    return SplitSdpProblem(n=truth.n, mask=mask, target_cosh=target, epsilon1=eps1, **kwargs)


class TestOrdinalConstraint:
    def test_valid(self):
        c = OrdinalConstraint(0, 1, 1, 2)
        assert c.as_tuple() == (0, 1, 1, 2)

    @pytest.mark.parametrize(
        "idx", [(1, 0, 1, 2), (0, 1, 2, 2), (0, 1, 0, 1), (-1, 0, 1, 2)]
    )
    def test_invalid(self, idx):
        with pytest.raises(InputError):
            OrdinalConstraint(*idx)

    def test_normalized_orders_pairs(self):
        assert OrdinalConstraint.normalized(3, 1, 2, 0).as_tuple() == (1, 3, 0, 2)


class TestConfig:
    def test_delta_halves(self):
        cfg = SolverConfig(logdet_delta0=0.5)
        assert [cfg.delta(k) for k in range(3)] == [0.5, 0.25, 0.125]

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"max_iters": 0},
            {"rho": 0.0},
            {"tol_primal": -1.0},
            {"logdet_rounds": -1},
            {"reweighting": "nuclear"},
            {"relaxation": 0.0},
            {"relaxation": 2.0},
            {"rank_tail_tol": -1.0},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(InputError):
            SolverConfig(**kwargs)

    def test_report_summary(self):
        report = SolverReport(10, 1e-7, 2e-7, 3.0, True, slacks=np.array([0.1, 0.2]))
        summary = report.summary()
        assert summary["iterations"] == 10
        assert summary["converged"] is True
        assert summary["slack_total"] == pytest.approx(0.3)


class TestProjections:
    def test_psd_project_clips_negative_part(self):
        assert_allclose(psd_project(np.diag([3.0, -2.0])), np.diag([3.0, 0.0]))

    def test_psd_project_idempotent(self, rng):
        a = rng.normal(size=(5, 5))
        p = psd_project(a + a.T)
        assert np.linalg.eigvalsh(p)[0] >= -1e-12
        assert_allclose(psd_project(p), p, atol=1e-12)

    def test_psd_project_nonexpansive(self, rng):
        for _ in range(200):
            n = int(rng.integers(2, 8))
            a, b = rng.normal(size=(2, n, n))
            a, b = a + a.T, b + b.T
            gap = np.linalg.norm(psd_project(a) - psd_project(b))
            assert gap <= np.linalg.norm(a - b) + 1e-9

    def test_diagonal_repair(self, rng):
        for _ in range(50):
            x, y = rng.normal(size=(2, 5, 3))
            zp, zq = _repair_diagonal(x @ x.T, 0.5 * y @ y.T)
            assert_allclose(np.diag(zp - zq), -1.0, atol=1e-12)
            assert np.linalg.eigvalsh(zp)[0] >= -1e-10
            assert np.linalg.eigvalsh(zq)[0] >= -1e-10

    def test_box_ball_inside(self):
        m = np.array([-2.0, -3.0])
        out = _project_box_ball(m, -1.0, np.array([-2.0, -3.0]), 1.0)
        assert_allclose(out, m)

    def test_box_ball_onto_sphere(self):
        center = np.array([-5.0, -5.0])
        out = _project_box_ball(np.array([-1.0, -1.0]), -1.0, center, 1.0)
        assert np.sum((out - center) ** 2) == pytest.approx(1.0, rel=1e-9)
        assert np.all(out <= -1.0)

    def test_ordinal_without_budget(self):
        v = np.array([0.5, -1.0, 0.001])
        assert_allclose(_project_ordinal(v, 0.01, None), [0.5, 0.01, 0.01])

    def test_ordinal_budget_respected(self):
        v = np.array([-1.0, -0.5, 0.2, 0.0])
        eps2, budget = 0.1, 0.4
        t = _project_ordinal(v, eps2, budget)
        assert np.sum(np.maximum(eps2 - t, 0.0)) == pytest.approx(budget, abs=1e-12)
        assert t[2] == 0.2

    def test_ordinal_budget_not_binding(self):
        v = np.array([0.05, 0.5])
        assert_allclose(_project_ordinal(v, 0.1, 1.0), v)


class TestReweighting:
    def test_logdet_weights_are_inverses(self, compact_points):
        split = HGramianSplit.from_gramian(h_gramian(compact_points))
        wp, wm = logdet_reweight(split, 0.1)
        eye = np.eye(split.n)
        assert_allclose(wp @ (split.g_plus + 0.1 * eye), eye, atol=1e-8)
        assert_allclose(wm @ (split.g_minus + 0.1 * eye), eye, atol=1e-8)

    def test_logdet_needs_positive_delta(self, compact_points):
        split = HGramianSplit.from_gramian(h_gramian(compact_points))
        with pytest.raises(InputError):
            logdet_reweight(split, 0.0)

    def test_projection_weights_annihilate_top_space(self, compact_points):
        split = HGramianSplit.from_gramian(h_gramian(compact_points))
        wp, wm = projection_reweight(split, 2)
        assert np.trace(wp @ split.g_plus) == pytest.approx(0.0, abs=1e-8)
        assert np.trace(wm @ split.g_minus) == pytest.approx(0.0, abs=1e-8)

    def test_rank_tail_of_exact_gramian(self, compact_points):
        split = HGramianSplit.from_gramian(h_gramian(compact_points))
        assert rank_tail(split, 2) <= 1e-12
        assert rank_tail(split, 1) > 1e-3

    def test_rank_tail_share(self):
        split = HGramianSplit(np.diag([3.0, 1.0, 0.0]), np.diag([2.0, 0.0, 0.0]))
        assert rank_tail(split, 1) == pytest.approx(1.0 / 6.0)
        assert rank_tail(split, 2) == 0.0
        with pytest.raises(InputError):
            rank_tail(split, 0)


class TestProblem:
    def test_fidelity_budget_scale(self):
        mask = ObservationMask.full(2)
        target = np.array([[1.0, 2.0], [2.0, 1.0]])
        assert fidelity_budget(target, mask, 3.0) == pytest.approx(EPS1_FACTOR * 3.0 * 8.0)

    def test_empty_mask_budget(self):
        assert fidelity_budget(np.zeros((3, 3)), ObservationMask.empty(3)) == EPS1_FACTOR

    def test_ordinal_index_range(self, complete_measurements):
        truth, mask = complete_measurements
        with pytest.raises(InputError):
            _complete_problem(truth, mask, ordinal=[OrdinalConstraint(0, 1, 2, 9)])

    def test_offdiag_cap(self, complete_measurements):
        truth, mask = complete_measurements
        assert _complete_problem(truth, mask).offdiag_cap == -1.0
        capped = _complete_problem(truth, mask, min_distance=1.0)
        assert capped.offdiag_cap == pytest.approx(-np.cosh(1.0))


class TestSplitSolver:
    def test_complete_noise_free_recovery(self, complete_measurements):
        truth, mask = complete_measurements
        problem = _complete_problem(truth, mask)
        split, report = solve_split_sdp(problem)
        g = split.gramian
        scale = max(1.0, float(np.max(np.abs(g))))

        assert report.converged
        audit = audit_split(problem, split, report.slacks)
        assert audit["diag"] <= 1e-9
        assert audit["offdiag"] <= 1e-5 * scale
        assert audit["psd"] <= 1e-8 * scale
        residual = mask.entries * (problem.target_cosh + g)
        assert np.linalg.norm(residual) <= np.sqrt(problem.epsilon1) + 1e-4 * scale
        assert_allclose(-g, np.cosh(truth.values), rtol=1e-2)

    def test_warm_start_is_nearly_feasible(self, complete_measurements):
        truth, mask = complete_measurements
        problem = _complete_problem(truth, mask)
        split, _ = solve_split_sdp(problem)
        _, report = solve_split_sdp(problem, init=split)
        assert report.initial_primal_residual <= 1e-4

    def test_ordinal_margins_hold(self, compact_points):
        g_true = h_gramian(compact_points)
        candidates = [OrdinalConstraint(*row) for row in complete_ordinal_set(compact_points)]
        ordinal = [c for c in candidates if ordinal_margins(g_true, [c])[0] >= 0.1][:5]
        assert ordinal
        n = len(compact_points)
        mask = ObservationMask.full(n)
        problem = SplitSdpProblem(
            n=n,
            mask=mask,
            target_cosh=-g_true,
            epsilon1=1.0,
            ordinal=ordinal,
            epsilon2=0.05,
        )
        split, report = solve_split_sdp(problem)
        scale = max(1.0, float(np.max(np.abs(split.gramian))))
        margins = ordinal_margins(split.gramian, ordinal)
        assert np.all(margins >= 0.05 - 1e-5 * scale)

    def test_slack_budget_is_exact(self, compact_points):
        n = len(compact_points)
        ordinal = [OrdinalConstraint(0, 1, 2, 3), OrdinalConstraint(2, 3, 0, 1)]
        problem = SplitSdpProblem(
            n=n,
            mask=ObservationMask.empty(n),
            target_cosh=np.zeros((n, n)),
            epsilon1=1.0,
            ordinal=ordinal,
            epsilon2=0.5,
            slack_budget=0.5,
        )
        _, report = solve_split_sdp(problem, SolverConfig(max_iters=2000))
        assert report.slacks.shape == (2,)
        assert np.all(report.slacks >= 0.0)
        assert report.slacks.sum() <= 0.5 + 1e-9

    def test_logdet_rounds_recorded(self, complete_measurements):
        truth, mask = complete_measurements
        problem = _complete_problem(truth, mask)
        _, report = solve_split_sdp(problem, SolverConfig(logdet_rounds=2))
        assert report.rounds == 3
        assert len(report.logdet_values) == 3
        assert np.all(np.isfinite(report.logdet_values))

    def test_logdet_values_decrease(self, complete_measurements):
        truth, mask = complete_measurements
        problem = _complete_problem(truth, mask)
        _, report = solve_split_sdp(problem, SolverConfig(logdet_rounds=4))
        values = np.asarray(report.logdet_values)
        assert np.all(np.diff(values) <= 1e-6 * np.maximum(1.0, np.abs(values[:-1])))

    def test_projection_rounds_stop_at_rank(self, complete_measurements):
        truth, mask = complete_measurements
        problem = _complete_problem(truth, mask, target_rank=2)
        config = SolverConfig(logdet_rounds=20, reweighting="projection")
        split, report = solve_split_sdp(problem, config)
        assert report.rounds < 21
        assert rank_tail(split, 2) <= config.rank_tail_tol

    def test_projection_reweighting_needs_rank(self, complete_measurements):
        truth, mask = complete_measurements
        problem = _complete_problem(truth, mask)
        with pytest.raises(InputError):
            solve_split_sdp(problem, SolverConfig(logdet_rounds=1, reweighting="projection"))

    def test_single_point_split_is_exact(self):
        problem = _complete_problem(Hdm(np.zeros((1, 1))), ObservationMask.full(1))
        split, report = solve_split_sdp(problem)
        assert report.converged
        assert split.g_plus[0, 0] == 0.0
        assert split.g_minus[0, 0] == pytest.approx(1.0, abs=1e-12)

    def test_iteration_cap_reports_nonconvergence(self, complete_measurements):
        truth, mask = complete_measurements
        _, report = solve_split_sdp(_complete_problem(truth, mask), SolverConfig(max_iters=1))
        assert report.iterations == 1
        assert not report.converged


class TestPsdLeastSquares:
    def test_two_points(self):
        g, report = solve_psd_least_squares(np.array([[0.0, 1.0], [1.0, 0.0]]))
        assert report.converged
        assert_allclose(g, [[0.25, -0.25], [-0.25, 0.25]], atol=1e-10)

    def test_single_point(self):
        g, report = solve_psd_least_squares(np.zeros((1, 1)))
        assert report.converged
        assert g.shape == (1, 1)

    def test_euclidean_points_recovered(self, rng):
        x = rng.normal(size=(7, 2))
        dsq = np.sum((x[:, None, :] - x[None, :, :]) ** 2, axis=-1)
        g, report = solve_psd_least_squares(dsq)
        assert report.converged
        assert_allclose(edm_operator(g), dsq, atol=1e-8)
        assert_allclose(g.sum(axis=1), 0.0, atol=1e-10)

    def test_rejects_invalid(self):
        with pytest.raises(InputError):
            solve_psd_least_squares(np.array([[0.0, -1.0], [-1.0, 0.0]]))
