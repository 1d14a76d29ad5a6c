from __future__ import annotations

from pydantic_settings import BaseSettings, SettingsConfigDict


class QuatBrandtSettings(BaseSettings):
    """Configuration for quatbrandt.

    Environment variables:
    - QUATBRANDT_CACHE_DIR: directory for class-set / Brandt JSON artifacts
    - QUATBRANDT_ENABLE_DISK_CACHE: read and write the artifact cache (default on)
    - QUATBRANDT_THETA_PREFIX_LENGTH: theta prefix length for ideal classes
    - QUATBRANDT_HERMITIAN_THETA_PREFIX_LENGTH: theta prefix length for hermitian classes
    - QUATBRANDT_CLASS_SEARCH_INITIAL_BOUND / QUATBRANDT_CLASS_SEARCH_MAX_BOUND
    - QUATBRANDT_VERIFY_SOLUTIONS: re-check every isometry found
    - QUATBRANDT_WORKERS: worker count for surveys (processes) and Brandt entries (threads)
    - QUATBRANDT_LOG_LEVEL
    """

    model_config = SettingsConfigDict(env_prefix="QUATBRANDT_", case_sensitive=False)

    # Artifact cache
    CACHE_DIR: str = "data/cache"
    ENABLE_DISK_CACHE: bool = True

    # Class enumeration
    # Number of theta coefficients (norms 1..T) used to separate ideal classes.
    THETA_PREFIX_LENGTH: int = 8
    # Rank 8/12 lattices: the isometry search separates what the prefix does not.
    HERMITIAN_THETA_PREFIX_LENGTH: int = 2
    # Diagonal bound B for g>=2 candidates; doubled until the mass is met.
    CLASS_SEARCH_INITIAL_BOUND: int = 2
    CLASS_SEARCH_MAX_BOUND: int = 64

    # Enumeration checks
    VERIFY_SOLUTIONS: bool = True
    # Moore-determinant cross-check of the Haupt norm runs up to this g.
    MOORE_CROSS_CHECK_MAX_G: int = 3

    # Spectral output
    # Width (decimal digits) of the certified enclosure of the second largest |eigenvalue|.
    SPECTRAL_INTERVAL_DIGITS: int = 12

    # Surveys
    WORKERS: int = 1

    LOG_LEVEL: str = "INFO"


def get_settings() -> QuatBrandtSettings:
    # Construct at call-time so tests (and scripts) can set env vars before use.
    return QuatBrandtSettings()
