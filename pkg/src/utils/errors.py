#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Error types for NightFusion Servo.

Every error derives from ValueError so callers of the pure operators can
catch broadly; the CLI maps the specific types to exit codes.
"""

from typing import Optional


class NightFusionError(ValueError):
    """Base class for all domain errors."""


class ConfigError(NightFusionError):
    """Invalid experiment configuration; the message names the offending key."""


class ImageFormatError(NightFusionError):
    """An image file violates the Netpbm contract for its role."""


class FramePairingError(NightFusionError):
    """Frame directories cannot be paired or do not form a single stream."""


class TraceFormatError(NightFusionError):
    """Malformed trace or detections CSV."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
