#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Data Models for NightFusion Servo

Pydantic models for every section of the experiment configuration and for
the per-frame tracking record:
1. FusionConfig - thermal-visible fusion parameters
2. PidGains / ServoLimits - pan servo law
3. CameraGeometry / SimConfig / TargetMotion / DetectorModel - simulator
4. AppConfig - the whole JSON document
5. TrackRecord - one row of a tracking trace

All models reject unknown keys so a typo in an experiment config fails
loudly instead of silently falling back to a default.
"""

import math
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class _Section(BaseModel):
    """Base for config sections: frozen, no unknown keys."""

    model_config = ConfigDict(extra="forbid", frozen=True)


class FusionConfig(_Section):
    """Thermal-visible fusion parameters."""

    p_low: float = Field(2.0, ge=0.0, le=100.0, description="Lower stretch percentile")
    p_high: float = Field(98.0, ge=0.0, le=100.0, description="Upper stretch percentile")
    gamma: float = Field(0.7, gt=0.0, description="Illumination-proxy exponent")
    ema_a: float = Field(0.9, ge=0.0, le=0.98, description="EMA smoothing factor")
    gauss_k: int = Field(7, ge=1, description="Proxy Gaussian kernel width (odd)")
    alpha: float = Field(0.7, ge=0.0, description="Base gain")
    beta: float = Field(1.6, ge=0.0, description="Thermal-guidance strength")
    unsharp_strength: float = Field(0.5, ge=0.0, description="Unsharp-mask strength")
    unsharp_k: int = Field(5, ge=1, description="Unsharp Gaussian kernel width (odd)")
    clahe_enabled: bool = Field(True, description="Apply CLAHE on the Y channel")
    clahe_clip: float = Field(2.0, gt=0.0, description="CLAHE clip factor")
    clahe_grid: int = Field(8, ge=1, description="CLAHE tiles per axis")
    guided_radius: int = Field(8, ge=0, description="Guided-filter radius in pixels")
    guided_eps: float = Field(0.01, gt=0.0, description="Guided-filter regularizer")
    guided_fast_subsample: int = Field(4, ge=1, description="Fast guided-filter subsample factor")
    guided_mode: Literal["exact", "fast"] = Field("fast", description="Guided-filter variant")

    @model_validator(mode="after")
    def _check_ranges(self) -> "FusionConfig":
        if not self.p_low < self.p_high:
            raise ValueError(f"p_low ({self.p_low}) must be < p_high ({self.p_high})")
        for name in ("gauss_k", "unsharp_k"):
            if getattr(self, name) % 2 == 0:
                raise ValueError(f"{name} must be odd, got {getattr(self, name)}")
        return self


class PidGains(_Section):
    """PID gains and control period."""

    kp: float = Field(0.02, description="Degrees per pixel of error")
    ki: float = Field(0.002, description="Degrees per pixel-second of accumulated error")
    kd: float = Field(0.0005, description="Degrees per pixel/second of error rate")
    dt: float = Field(1.0 / 15.0, gt=0.0, description="Control period in seconds")


class ServoLimits(_Section):
    """Pan range and anti-windup bound."""

    theta_min_deg: float = -90.0
    theta_max_deg: float = 90.0
    theta_init_deg: float = 0.0
    e_sum_limit: Optional[float] = Field(
        None, gt=0.0, description="Integral clamp in pixel-seconds; default theta_max/ki"
    )

    @model_validator(mode="after")
    def _check_order(self) -> "ServoLimits":
        if not self.theta_min_deg <= self.theta_max_deg:
            raise ValueError("theta_min_deg must be <= theta_max_deg")
        if not self.theta_min_deg <= self.theta_init_deg <= self.theta_max_deg:
            raise ValueError("theta_init_deg must lie within [theta_min_deg, theta_max_deg]")
        return self

    def resolve_e_sum_limit(self, gains: PidGains) -> float:
        """The configured clamp, or the e_sum that alone would command theta_max."""
        if self.e_sum_limit is not None:
            return self.e_sum_limit
        if gains.ki == 0.0:
            return math.inf
        reach = max(abs(self.theta_max_deg), abs(self.theta_min_deg))
        return reach / abs(gains.ki) if reach > 0 else math.inf


class CameraGeometry(_Section):
    """Horizontal field of view and image width."""

    hfov_deg: float = Field(60.0, gt=0.0)
    width_px: int = Field(640, ge=2)

    @property
    def center_px(self) -> float:
        return self.width_px / 2.0


class SimConfig(_Section):
    """Closed-loop simulator timing and latency model."""

    geometry: CameraGeometry = Field(default_factory=CameraGeometry)
    frames: int = Field(300, ge=1)
    dt: float = Field(1.0 / 15.0, gt=0.0, description="Frame interval in seconds")
    latency_mean_ms: float = Field(69.0, ge=0.0)
    latency_sigma_ms: float = Field(8.0, ge=0.0)


class TargetMotion(_Section):
    """Target azimuth trajectory."""

    kind: Literal["static", "step", "linear", "sinusoid"] = "sinusoid"
    initial_deg: float = 0.0
    step_time_s: float = Field(0.0, ge=0.0)
    step_deg: float = 0.0
    rate_deg_s: float = 0.0
    amplitude_deg: float = 10.0
    period_s: float = Field(8.0, gt=0.0)


class DetectorModel(_Section):
    """Stochastic stand-in for the object detector."""

    p_detect: float = Field(0.8, ge=0.0, le=1.0)
    noise_sigma_px: float = Field(2.0, ge=0.0)
    seed: int = Field(42, ge=0, lt=2 ** 64)


class AppConfig(BaseModel):
    """Complete experiment configuration document."""

    model_config = ConfigDict(extra="forbid")

    fusion: FusionConfig = Field(default_factory=FusionConfig)
    gains: PidGains = Field(default_factory=PidGains)
    servo: ServoLimits = Field(default_factory=ServoLimits)
    sim: SimConfig = Field(default_factory=SimConfig)
    motion: TargetMotion = Field(default_factory=TargetMotion)
    detector: DetectorModel = Field(default_factory=DetectorModel)

    @model_validator(mode="after")
    def _default_control_period(self) -> "AppConfig":
        # Control period defaults to the frame interval.
        if "dt" not in self.gains.model_fields_set:
            self.gains = self.gains.model_copy(update={"dt": self.sim.dt})
        return self

    @property
    def geometry(self) -> CameraGeometry:
        return self.sim.geometry


class TrackRecord(BaseModel):
    """
    One frame of a tracking trace.

    e_px is None exactly when the frame had no valid detection; a missing
    error is never encoded as 0.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    frame: int = Field(..., ge=0, description="Frame index")
    t_ms: float = Field(..., description="Milliseconds since start")
    detected: bool = Field(..., description="Valid detection this frame")
    e_px: Optional[float] = Field(None, description="Horizontal pixel error, None when missed")
    theta_deg: float = Field(..., description="Commanded pan angle")
    latency_ms: float = Field(..., ge=0.0, description="Capture-to-servo latency")

    @model_validator(mode="after")
    def _error_iff_detected(self) -> "TrackRecord":
        if self.detected and self.e_px is None:
            raise ValueError("detected frame must carry e_px")
        if not self.detected and self.e_px is not None:
            raise ValueError("missed frame must not carry e_px")
        if self.e_px is not None and math.isnan(self.e_px):
            raise ValueError("e_px must not be NaN; leave it empty for a miss")
        return self
