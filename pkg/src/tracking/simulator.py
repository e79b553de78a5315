#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Deterministic closed-loop pan tracking simulator.

Per frame: target azimuth -> linear projection into the image given the
current pan angle -> stochastic detection -> PID step (or hold on a miss)
-> modeled latency -> one TrackRecord.

Randomness comes from numpy generators keyed by (seed, stream, frame_index)
so every draw is reproducible regardless of evaluation order. Stream 0
drives detection and centroid noise, stream 1 drives latency.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np

from src.data.models import (
    CameraGeometry,
    DetectorModel,
    PidGains,
    ServoLimits,
    SimConfig,
    TargetMotion,
    TrackRecord,
)
from src.tracking.servo import ServoState, hold_on_miss, pid_step, pixel_error

logger = logging.getLogger(__name__)

DETECTION_STREAM = 0
LATENCY_STREAM = 1


@dataclass(frozen=True)
class TrackTrace:
    """Immutable sequence of per-frame records."""

    records: Tuple[TrackRecord, ...]

    def __post_init__(self):
        object.__setattr__(self, 'records', tuple(self.records))

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[TrackRecord]:
        return iter(self.records)

    def __getitem__(self, index: int) -> TrackRecord:
        return self.records[index]

    @classmethod
    def from_records(cls, records: Sequence[TrackRecord]) -> "TrackTrace":
        return cls(tuple(records))


def frame_generator(seed: int, stream: int, frame_index: int) -> np.random.Generator:
    """Independent generator for one (stream, frame) cell of a seeded run."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(stream, frame_index)))


def target_azimuth(motion: TargetMotion, t: float) -> float:
    """
    Target azimuth in degrees at time t (seconds).

    static: initial; step: initial, plus step_deg from step_time_s on;
    linear: initial + rate * t; sinusoid: initial + amplitude * sin(2 pi t / period).
    """
    if t < 0:
        raise ValueError(f"time must be >= 0, got {t}")
    if motion.kind == "static":
        return motion.initial_deg
    if motion.kind == "step":
        return motion.initial_deg + (motion.step_deg if t >= motion.step_time_s else 0.0)
    if motion.kind == "linear":
        return motion.initial_deg + motion.rate_deg_s * t
    return motion.initial_deg + motion.amplitude_deg * math.sin(2.0 * math.pi * t / motion.period_s)


def project_to_pixel(az_target: float, theta_pan: float, geom: CameraGeometry) -> float:
    """x = W/2 + (az - theta) * W / HFOV; may fall outside the frame."""
    return geom.center_px + (az_target - theta_pan) * geom.width_px / geom.hfov_deg


def detect(x_true: float, model: DetectorModel, frame_index: int, width_px: int) -> Optional[float]:
    """
    Simulated detector.

    Args:
        x_true: True target centroid in pixels
        model: Detection probability, centroid noise and seed
        frame_index: Frame number, keys the random draws
        width_px: Image width

    Returns:
        Measured centroid clamped to [0, W-1], or None for a miss
    """
    if not 0.0 <= x_true < width_px:
        return None
    rng = frame_generator(model.seed, DETECTION_STREAM, frame_index)
    if not rng.random() < model.p_detect:
        return None
    noise = rng.normal(0.0, model.noise_sigma_px) if model.noise_sigma_px > 0 else 0.0
    return min(max(x_true + noise, 0.0), width_px - 1.0)


def sample_latency(sim: SimConfig, seed: int, frame_index: int) -> float:
    """Modeled capture-to-servo latency in ms, Gaussian clamped at 0."""
    if sim.latency_sigma_ms == 0:
        return sim.latency_mean_ms
    rng = frame_generator(seed, LATENCY_STREAM, frame_index)
    return max(0.0, float(rng.normal(sim.latency_mean_ms, sim.latency_sigma_ms)))


def run_closed_loop(sim: SimConfig, gains: PidGains, motion: TargetMotion, model: DetectorModel,
                    limits: Optional[ServoLimits] = None) -> TrackTrace:
    """
    Run the full detection/servo loop.

    Args:
        sim: Geometry, frame count, frame interval and latency model
        gains: PID gains; gains.dt must equal sim.dt
        motion: Target trajectory
        model: Detector model (seed included)
        limits: Pan range and anti-windup bound

    Returns:
        One record per frame; bit-identical for identical inputs
    """
    if not math.isclose(sim.dt, gains.dt, rel_tol=1e-12, abs_tol=0.0):
        raise ValueError(f"control period {gains.dt} s differs from frame interval {sim.dt} s")

    geom = sim.geometry
    state = ServoState.initial(limits, gains)
    records = []

    for frame_index in range(sim.frames):
        t = frame_index * sim.dt
        x_true = project_to_pixel(target_azimuth(motion, t), state.theta, geom)
        x_measured = detect(x_true, model, frame_index, geom.width_px)

        if x_measured is None:
            theta = hold_on_miss(state)
            e_px = None
        else:
            e_px = pixel_error(x_measured, geom.center_px)
            theta = pid_step(state, gains, e_px)

        records.append(TrackRecord(
            frame=frame_index,
            t_ms=t * 1000.0,
            detected=e_px is not None,
            e_px=e_px,
            theta_deg=theta,
            latency_ms=sample_latency(sim, model.seed, frame_index),
        ))

    detected = sum(1 for record in records if record.detected)
    logger.info(f"Simulated {sim.frames} frames ({motion.kind} target), {detected} detections")
    return TrackTrace.from_records(records)
