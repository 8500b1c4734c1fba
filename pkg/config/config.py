"""
Configuration management for the doctrine toolkit
"""
import os
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings"""

    model_config = SettingsConfigDict(
        env_prefix="HERBRAND_",
        env_file=os.path.join(os.path.dirname(os.path.abspath(__file__)), ".env"),
        case_sensitive=False,
        extra="ignore",
    )

    # Witness search bounds, overridable per command
    witness_depth: int = Field(2, ge=0)  # maximal term depth of candidate morphisms
    max_conjuncts: int = Field(4, ge=0)  # n + n' of a witness
    model_bound: int = Field(3, ge=0)  # largest carrier tried by model search
    instantiation_depth: Optional[int] = Field(None, ge=0)  # None: follow witness_depth

    # Execution
    jobs: int = Field(1, ge=1)
    seed: int = 20240917
    ultrafilter_guard: int = Field(250_000, ge=1)

    # Logging
    log_level: str = "WARNING"
    log_to_file: bool = False
    log_dir: str = "logs"

    @property
    def grounding_depth(self) -> int:
        """Depth used to ground axioms in the syntactic doctrine"""
        if self.instantiation_depth is None:
            return self.witness_depth
        return self.instantiation_depth


# Global settings instance
settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get or create settings instance"""
    global settings
    if settings is None:
        settings = Settings()
    return settings
