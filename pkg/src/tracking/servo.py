#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
PID pan servo law and pixel/angle conversions.

The horizontal pixel error of the target centroid drives a positional
PID update of the pan angle:

    e_sum  <- clamp(e_sum + e * dt, -limit, +limit)
    e_diff <- (e - e_prev) / dt
    theta  <- clamp(theta + kp*e + ki*e_sum + kd*e_diff, theta_min, theta_max)

On a missed detection the angle is held and the PID memory frozen.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

from src.data.models import CameraGeometry, PidGains, ServoLimits

logger = logging.getLogger(__name__)


def pixel_error(x_target: float, x_center: float) -> float:
    """Signed horizontal error; positive when the target is right of center."""
    return x_target - x_center


def error_to_degrees(e: float, geom: CameraGeometry) -> float:
    """Angular deviation e * HFOV / W."""
    return e * geom.hfov_deg / geom.width_px


def _clamp(value: float, low: float, high: float) -> float:
    return min(max(value, low), high)


@dataclass
class ServoState:
    """Mutable controller memory; single owner, one per pan head."""

    theta: float = 0.0
    e_prev: float = 0.0
    e_sum: float = 0.0
    theta_min: float = -90.0
    theta_max: float = 90.0
    e_sum_limit: float = math.inf

    def __post_init__(self):
        if not self.theta_min <= self.theta_max:
            raise ValueError(f"theta_min ({self.theta_min}) must be <= theta_max ({self.theta_max})")
        if not self.e_sum_limit > 0:
            raise ValueError(f"e_sum_limit must be > 0, got {self.e_sum_limit}")
        self.theta = _clamp(self.theta, self.theta_min, self.theta_max)

    @classmethod
    def initial(cls, limits: Optional[ServoLimits] = None, gains: Optional[PidGains] = None) -> "ServoState":
        """Fresh state: e_prev = 0, e_sum = 0, theta at the configured start angle."""
        limits = limits or ServoLimits()
        gains = gains or PidGains()
        return cls(
            theta=limits.theta_init_deg,
            theta_min=limits.theta_min_deg,
            theta_max=limits.theta_max_deg,
            e_sum_limit=limits.resolve_e_sum_limit(gains),
        )


def pid_step(state: ServoState, gains: PidGains, e: float) -> float:
    """
    One control step for a valid detection.

    Args:
        state: Controller memory, updated in place
        gains: kp, ki, kd and the control period dt
        e: Pixel error of this frame

    Returns:
        The new (clamped) pan angle in degrees
    """
    state.e_sum = _clamp(state.e_sum + e * gains.dt, -state.e_sum_limit, state.e_sum_limit)
    e_diff = (e - state.e_prev) / gains.dt
    theta_new = state.theta + gains.kp * e + gains.ki * state.e_sum + gains.kd * e_diff
    state.theta = _clamp(theta_new, state.theta_min, state.theta_max)
    state.e_prev = e
    return state.theta


def hold_on_miss(state: ServoState) -> float:
    """Missed detection: keep the angle, leave e_prev and e_sum untouched."""
    return state.theta


class PanServo:
    """
    Pan controller bundling gains, geometry and state.

    update() takes the detected target x (or None for a miss) and returns
    the commanded angle together with the pixel error used, if any.
    """

    def __init__(self, gains: Optional[PidGains] = None, limits: Optional[ServoLimits] = None,
                 geometry: Optional[CameraGeometry] = None):
        self.gains = gains or PidGains()
        self.limits = limits or ServoLimits()
        self.geometry = geometry or CameraGeometry()
        self.state = ServoState.initial(self.limits, self.gains)

    def update(self, x_target: Optional[float]) -> Tuple[float, Optional[float]]:
        """
        Args:
            x_target: Detected centroid x in pixels, or None

        Returns:
            (theta_deg, e_px or None)
        """
        if x_target is None:
            return hold_on_miss(self.state), None
        e = pixel_error(x_target, self.geometry.center_px)
        return pid_step(self.state, self.gains, e), e

    def reset(self) -> None:
        self.state = ServoState.initial(self.limits, self.gains)
        logger.debug("Servo state reset")
