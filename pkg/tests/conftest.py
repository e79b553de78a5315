#!/usr/bin/env python3
"""
Shared fixtures for the NightFusion Servo test suite.
"""

import os
import sys
from pathlib import Path

import numpy as np
import pytest

# Settings pick their environment at import time.
os.environ["ENVIRONMENT"] = "test"
os.environ.pop("NFS_THREADS", None)

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from src.data.models import TrackRecord  # noqa: E402
from src.imaging.core import RgbImage, ThermalFrame  # noqa: E402
from src.imaging.netpbm import write_rgb, write_thermal  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def make_record():
    """Build a TrackRecord; e_px=None means a miss."""
    def _make(frame, e_px=None, t_ms=None, theta_deg=0.0, latency_ms=69.0):
        return TrackRecord(
            frame=frame,
            t_ms=frame * 66.666 if t_ms is None else t_ms,
            detected=e_px is not None,
            e_px=e_px,
            theta_deg=theta_deg,
            latency_ms=latency_ms,
        )
    return _make


@pytest.fixture
def frame_dirs(tmp_path):
    """Two RGB/thermal pairs of small synthetic frames on disk."""
    rgb_dir = tmp_path / "rgb"
    thermal_dir = tmp_path / "thermal"
    rgb_dir.mkdir()
    thermal_dir.mkdir()

    yy, xx = np.mgrid[0:24, 0:32]
    for idx in range(2):
        rgb = np.stack([0.1 + 0.2 * xx / 31.0, 0.05 + 0.1 * yy / 23.0, np.full(xx.shape, 0.08)], axis=-1)
        write_rgb(rgb_dir / f"frame_{idx:03d}.ppm", RgbImage(rgb))

        hot = np.exp(-((xx[::2, ::2] - 8 - idx) ** 2 + (yy[::2, ::2] - 6) ** 2) / 10.0)
        counts = (29315 + 1500 * hot).astype(np.uint16)
        write_thermal(thermal_dir / f"frame_{idx:03d}.pgm", ThermalFrame(counts))

    return rgb_dir, thermal_dir
