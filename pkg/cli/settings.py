"""
Environment settings for the command-line tools.
"""

from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Defaults read from FAST_MCS_* variables and an optional .env file."""

    model_config = SettingsConfigDict(env_prefix="FAST_MCS_", env_file=".env", extra="ignore")

    threads: int = Field(1, ge=1, description="Bench worker pool cap")
    timeout: float = Field(30.0, gt=0, description="Per-engine timeout in seconds")
    repetitions: int = Field(3, ge=1, description="Timed runs per measurement")
    verify_limit: int = Field(16, ge=0, description="Largest universe checked for completeness")
    log_level: str = Field("WARNING", description="Console log level without -v")
    log_dir: Optional[str] = Field(None, description="Directory for rotating log files")
    log_json: bool = Field(False, description="Write serialized JSON log records")
