"""Runtime settings.

Values come from CLI flags first, then ``TIMEBOUND_*`` environment variables
(or a ``.env`` file), then the defaults below. The defaults are the
published choices: a 2σ limiter and a 120 s bootstrap threshold.
"""
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Process-wide defaults for estimation, detection and output."""

    model_config = SettingsConfigDict(
        env_prefix="TIMEBOUND_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    sigma_multiplier: float = Field(default=2.0, gt=0)
    bin_width: int = Field(default=10, ge=1)
    initial_threshold: int = Field(default=120, ge=1)
    refinement_passes: int = Field(default=2, ge=1)
    noise_gap: int = Field(default=120, ge=1)
    log_level: str = "WARNING"


# ── 单例：整个进程共用一份配置 ────────────────────────────────────────────
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get or create the global settings."""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def reset_settings() -> None:
    """Forget the cached settings (tests change the environment)."""
    global _settings
    _settings = None
