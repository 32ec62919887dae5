"""Application configuration."""

import os

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit settings, read from CURVE_EXTREMES_* environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="CURVE_EXTREMES_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    # Output
    output_dir: str = Field("./runs", description="Default directory for run artifacts")

    # Logging
    log_level: str = Field("INFO")
    log_format: str = Field("json", pattern="^(json|console)$")

    # Parallelism (never changes numerical output)
    threads: int = Field(1, ge=0, description="Worker threads, 0 = CPU count")
    block_size: int = Field(1024, ge=1, description="Replications per random substream")

    # Monte Carlo defaults
    default_step: float = Field(0.05, gt=0)
    default_reps: int = Field(100_000, ge=100)
    default_ladder_1d: list[float] = Field(default_factory=lambda: [2.0, 4.0, 8.0])
    default_ladder_strip: list[float] = Field(default_factory=lambda: [2.0, 4.0])
    convergence_rel_tol: float = Field(1e-3, gt=0)

    # Simulation
    cholesky_max_points: int = Field(2**14, ge=2)
    eigen_clamp_tol: float = Field(1e-10, gt=0)

    # Quadrature and caching
    quad_tol: float = Field(1e-8, gt=0)
    constant_cache_decimals: int = Field(12, ge=1)

    @property
    def worker_count(self) -> int:
        """Resolve the thread knob to a concrete worker count."""
        if self.threads == 0:
            return os.cpu_count() or 1
        return self.threads


# Global settings instance
_settings: Settings | None = None


def get_settings() -> Settings:
    """Get application settings."""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def reset_settings() -> None:
    """Drop the cached settings so the next call re-reads the environment."""
    global _settings
    _settings = None
