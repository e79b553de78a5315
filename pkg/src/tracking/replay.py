#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Replay recorded detector output through the pan servo.

The detector itself runs elsewhere; its per-frame centroids arrive as a
detections CSV. When the matching frame directories are supplied, every
frame is fused before the servo update and the recorded latency is the
measured wall-clock time of fusion plus servo update.
"""

import logging
import time
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from src.data.models import CameraGeometry, FusionConfig, PidGains, ServoLimits, TrackRecord
from src.imaging.netpbm import read_rgb, read_thermal
from src.processing.fusion import NightFusion
from src.tracking.servo import PanServo
from src.tracking.simulator import TrackTrace
from src.tracking.trace_io import Detection
from src.utils.errors import FramePairingError

logger = logging.getLogger(__name__)


def replay_detections(detections: Sequence[Detection], gains: PidGains, limits: ServoLimits,
                      geometry: CameraGeometry,
                      frame_pairs: Optional[List[Tuple[Path, Path]]] = None,
                      fusion_config: Optional[FusionConfig] = None) -> TrackTrace:
    """
    Drive the servo with recorded detections.

    Args:
        detections: Rows of a detections CSV, in time order
        gains: PID gains
        limits: Pan range and anti-windup bound
        geometry: Camera geometry (image center)
        frame_pairs: Optional (rgb, thermal) paths, one pair per detection row
        fusion_config: Fusion parameters when frames are fused

    Returns:
        One TrackRecord per detection row
    """
    if frame_pairs is not None and len(frame_pairs) != len(detections):
        raise FramePairingError(
            f"{len(detections)} detection rows vs {len(frame_pairs)} frame pairs"
        )

    servo = PanServo(gains, limits, geometry)
    fusion = NightFusion(fusion_config) if frame_pairs is not None else None
    records = []

    for idx, detection in enumerate(detections):
        if fusion is not None:
            rgb_path, thermal_path = frame_pairs[idx]
            rgb = read_rgb(rgb_path)
            thermal = read_thermal(thermal_path)
            fusion.check_frame_size(rgb, rgb_path.name)
            start_time = time.perf_counter()
            fusion.process(rgb, thermal)
            theta, e_px = servo.update(detection.x_px)
            latency_ms = (time.perf_counter() - start_time) * 1000.0
        else:
            theta, e_px = servo.update(detection.x_px)
            latency_ms = detection.latency_ms if detection.latency_ms is not None else 0.0

        records.append(TrackRecord(
            frame=detection.frame,
            t_ms=detection.t_ms,
            detected=e_px is not None,
            e_px=e_px,
            theta_deg=theta,
            latency_ms=latency_ms,
        ))

    logger.info(f"Replayed {len(records)} detection rows"
                f"{' with fusion' if fusion is not None else ''}")
    return TrackTrace.from_records(records)
