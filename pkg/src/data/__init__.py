#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Data Package for NightFusion Servo

Configuration and record models plus the JSON config loader.
"""

from .models import (
    FusionConfig,
    PidGains,
    ServoLimits,
    CameraGeometry,
    SimConfig,
    TargetMotion,
    DetectorModel,
    AppConfig,
    TrackRecord,
)
from .config_loader import load_app_config, parse_app_config

__all__ = [
    'FusionConfig',
    'PidGains',
    'ServoLimits',
    'CameraGeometry',
    'SimConfig',
    'TargetMotion',
    'DetectorModel',
    'AppConfig',
    'TrackRecord',
    'load_app_config',
    'parse_app_config',
]
