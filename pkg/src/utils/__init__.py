"""
Utilities Package for NightFusion Servo

Logging configuration and the shared error hierarchy.
"""

from .logging_config import setup_logging, get_logger, log_performance
from .errors import (
    NightFusionError,
    ConfigError,
    ImageFormatError,
    FramePairingError,
    TraceFormatError,
)

__all__ = [
    "setup_logging",
    "get_logger",
    "log_performance",
    "NightFusionError",
    "ConfigError",
    "ImageFormatError",
    "FramePairingError",
    "TraceFormatError",
]
