#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Configuration Settings for NightFusion Servo

This module handles process-level settings with environment-specific
support for dev, test, and production environments. Experiment parameters
(fusion, servo, simulator) live in the JSON config loaded by
src.data.config_loader, not here.
"""

import os
from pathlib import Path
from typing import Dict, Any
from dotenv import load_dotenv

# Load environment variables from the root .env file
load_dotenv(dotenv_path=Path(__file__).parent.parent / ".env")


class Settings:
    """
    Configuration settings with environment support
    """

    # Environment
    ENVIRONMENT: str = os.getenv("ENVIRONMENT", "dev")
    DEBUG: bool = os.getenv("DEBUG", "False").lower() == "true"

    # File Paths
    PROJECT_ROOT: Path = Path(__file__).parent.parent
    LOGS_PATH: str = os.getenv("LOGS_PATH", str(PROJECT_ROOT / "logs"))
    DEFAULT_CONFIG_PATH: str = os.getenv(
        "DEFAULT_CONFIG_PATH", str(PROJECT_ROOT / "config" / "default_config.json")
    )

    # Logging Configuration
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
    LOG_FORMAT: str = os.getenv("LOG_FORMAT", "%(asctime)s - %(name)s - %(levelname)s - %(message)s")
    LOG_TO_FILE: bool = os.getenv("LOG_TO_FILE", "True").lower() == "true"
    LOG_MAX_BYTES: int = int(os.getenv("LOG_MAX_BYTES", "10485760"))  # 10MB
    LOG_BACKUP_COUNT: int = int(os.getenv("LOG_BACKUP_COUNT", "5"))

    # Performance Configuration
    ENABLE_PROFILING: bool = os.getenv("ENABLE_PROFILING", "False").lower() == "true"

    def __init__(self):
        """Initialize settings and validate values."""
        self._validate_settings()

    @property
    def NFS_THREADS(self) -> int:
        """Worker threads for output writes; read at call time so callers can cap it per run."""
        raw = os.getenv("NFS_THREADS", "").strip()
        if not raw:
            return os.cpu_count() or 1
        return int(raw)

    def _validate_settings(self) -> None:
        """Validate settings that would otherwise fail deep inside a run."""
        raw_threads = os.getenv("NFS_THREADS", "").strip()
        if raw_threads:
            try:
                threads = int(raw_threads)
            except ValueError:
                raise ValueError(f"NFS_THREADS must be an integer, got {raw_threads!r}")
            if threads < 1:
                raise ValueError(f"NFS_THREADS must be >= 1, got {threads}")

        if self.LOG_LEVEL.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"Unknown LOG_LEVEL: {self.LOG_LEVEL}")

    def is_production(self) -> bool:
        """Check if running in production environment."""
        return self.ENVIRONMENT.lower() == "prod"

    def is_development(self) -> bool:
        """Check if running in development environment."""
        return self.ENVIRONMENT.lower() == "dev"

    def get_all_settings(self) -> Dict[str, Any]:
        """Get all settings as dictionary."""
        settings_dict = {}
        for attr in dir(self):
            if not attr.startswith('_') and not callable(getattr(self, attr)):
                settings_dict[attr] = getattr(self, attr)
        return settings_dict


# Environment-specific configurations
class DevelopmentSettings(Settings):
    """Development environment specific settings."""
    DEBUG = True
    LOG_LEVEL = os.getenv("LOG_LEVEL", "DEBUG")


class TestSettings(Settings):
    """Test environment specific settings."""
    DEBUG = True
    LOG_LEVEL = "DEBUG"
    LOG_TO_FILE = False


class ProductionSettings(Settings):
    """Production environment specific settings."""
    DEBUG = False
    LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
    ENABLE_PROFILING = False


def get_settings() -> Settings:
    """Get settings based on environment."""
    environment = os.getenv("ENVIRONMENT", "dev").lower()

    if environment == "test":
        return TestSettings()
    elif environment == "prod":
        return ProductionSettings()
    else:
        return DevelopmentSettings()
