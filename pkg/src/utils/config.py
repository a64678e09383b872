"""Environment-backed defaults (``HAMSANDWICH_*``), read after ``load_dotenv()``."""

from __future__ import annotations

import os
from dataclasses import dataclass

ENV_PREFIX = "HAMSANDWICH_"


def _env(name: str, default: str) -> str:
    return os.getenv(ENV_PREFIX + name, default)


@dataclass(frozen=True)
class Settings:
    seed: int = 0
    tol: float = 1e-9
    eps: float = 1e-7
    grid: int = 512
    max_iters: int = 400
    starts: int = 8
    log_level: str = "WARNING"


def load_settings() -> Settings:
    base = Settings()
    return Settings(
        seed=int(_env("SEED", str(base.seed))),
        tol=float(_env("TOL", str(base.tol))),
        eps=float(_env("EPS", str(base.eps))),
        grid=int(_env("GRID", str(base.grid))),
        max_iters=int(_env("MAX_ITERS", str(base.max_iters))),
        starts=int(_env("STARTS", str(base.starts))),
        log_level=_env("LOG_LEVEL", base.log_level).upper(),
    )
