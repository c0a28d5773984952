from hdgp import config


def test_shipped_configuration_is_valid():
    result = config.validate_config()
    assert result["valid"], result["errors"]
    assert result["warnings"] == []


def test_bad_tolerance_reported(monkeypatch):
    monkeypatch.setattr(config, "TOL_PSD", 2.0)
    result = config.validate_config()
    assert not result["valid"]
    assert any("TOL_PSD" in e for e in result["errors"])


def test_large_distance_cap_warns(monkeypatch):
    monkeypatch.setattr(config, "MAX_DISTANCE", 40.0)
    result = config.validate_config()
    assert result["valid"]
    assert any("MAX_DISTANCE" in w for w in result["warnings"])


def test_run_config_keys_cover_solver_settings():
    for key in ("max_iters", "rho", "relaxation", "tol_primal", "tol_dual", "eps1", "eps2"):
        assert key in config.RUN_CONFIG_KEYS


def test_relaxation_range(monkeypatch):
    monkeypatch.setattr(config, "RELAXATION", 2.0)
    result = config.validate_config()
    assert not result["valid"]
    assert any("RELAXATION" in e for e in result["errors"])


def test_reweight_rounds_per_objective(monkeypatch):
    monkeypatch.setattr(config, "REWEIGHT_ROUNDS", {"projection": 0.5})
    result = config.validate_config()
    assert not result["valid"]


def test_loose_tree_budget_expected(monkeypatch):
    monkeypatch.setattr(config, "TREE_EPS1_FACTOR", 1e-12)
    result = config.validate_config()
    assert any("TREE_EPS1_FACTOR" in w for w in result["warnings"])
