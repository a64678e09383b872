from src.solvers.instance import SweepConfig
from src.utils.config import Settings, load_settings


def test_defaults_without_environment(monkeypatch):
    for name in ("SEED", "TOL", "EPS", "GRID", "MAX_ITERS", "STARTS", "LOG_LEVEL"):
        monkeypatch.delenv(f"HAMSANDWICH_{name}", raising=False)
    assert load_settings() == Settings()


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("HAMSANDWICH_SEED", "42")
    monkeypatch.setenv("HAMSANDWICH_EPS", "1e-6")
    monkeypatch.setenv("HAMSANDWICH_LOG_LEVEL", "debug")
    settings = load_settings()
    assert settings.seed == 42
    assert settings.eps == 1e-6
    assert settings.log_level == "DEBUG"


def test_sweep_config_from_env_keeps_explicit_values(monkeypatch):
    monkeypatch.setenv("HAMSANDWICH_GRID", "64")
    monkeypatch.setenv("HAMSANDWICH_STARTS", "3")
    cfg = SweepConfig.from_env(starts=5, x_bound=None)
    assert cfg.grid_points == 64
    assert cfg.starts == 5
    assert cfg.x_bound is None
