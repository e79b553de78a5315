#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tracking statistics.

Frames without a valid detection carry no error sample: they are excluded
from every error statistic, never counted as zero error. Conventions:
- std is the population std (ddof = 0)
- median and quartiles use the interpolated order statistic of
  src.imaging.core.interpolated_percentile
- degree statistics convert each |e_px| first, then aggregate
"""

import logging
from dataclasses import asdict, dataclass
from typing import Any, Dict, Iterable, List, NamedTuple, Optional

import numpy as np
import pandas as pd

from src.data.models import CameraGeometry, TrackRecord
from src.imaging.core import interpolated_percentile
from src.tracking.servo import error_to_degrees

logger = logging.getLogger(__name__)


class ErrorStats(NamedTuple):
    mean: float
    std: float
    median: float
    iqr: float


class FpsStats(NamedTuple):
    mean: float
    std: float


class LatencyStats(NamedTuple):
    mean: float
    std: float
    median: float


@dataclass(frozen=True)
class TrackStats:
    """
    Summary of one trace. Error fields are None when nothing was detected;
    FPS fields are None for traces shorter than two records.
    """

    n_frames: int
    n_detected: int
    detection_rate: float
    latency_mean: float
    latency_std: float
    latency_median: float
    fps_mean: Optional[float] = None
    fps_std: Optional[float] = None
    mean_abs_e: Optional[float] = None
    std_abs_e: Optional[float] = None
    median_abs_e: Optional[float] = None
    iqr_abs_e: Optional[float] = None
    mean_abs_e_deg: Optional[float] = None
    std_abs_e_deg: Optional[float] = None
    median_abs_e_deg: Optional[float] = None
    iqr_abs_e_deg: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _records(trace: Iterable[TrackRecord]) -> List[TrackRecord]:
    records = list(trace)
    if not records:
        raise ValueError("empty trace")
    return records


def _distribution(samples: np.ndarray) -> ErrorStats:
    q25 = interpolated_percentile(samples, 25.0)
    q75 = interpolated_percentile(samples, 75.0)
    return ErrorStats(
        mean=float(np.mean(samples)),
        std=float(np.std(samples)),
        median=interpolated_percentile(samples, 50.0),
        iqr=q75 - q25,
    )


def detected_abs_errors(trace: Iterable[TrackRecord]) -> np.ndarray:
    """|e_px| of detected frames, in trace order."""
    return np.array([abs(r.e_px) for r in trace if r.detected], dtype=np.float64)


def abs_error_stats(trace: Iterable[TrackRecord]) -> Optional[ErrorStats]:
    """
    Mean, std, median and IQR of |e_px| over detected frames.

    Returns:
        ErrorStats, or None when no frame was detected
    """
    samples = detected_abs_errors(_records(trace))
    if samples.size == 0:
        return None
    return _distribution(samples)


def detection_rate(trace: Iterable[TrackRecord]) -> float:
    """Percentage of frames with a valid detection."""
    records = _records(trace)
    return 100.0 * sum(1 for r in records if r.detected) / len(records)


def fps_stats(trace: Iterable[TrackRecord]) -> FpsStats:
    """Mean and std of the instantaneous rate 1000 / (t_{i+1} - t_i)."""
    records = list(trace)
    if len(records) < 2:
        raise ValueError(f"FPS needs at least 2 records, got {len(records)}")
    gaps = np.diff(np.array([r.t_ms for r in records], dtype=np.float64))
    if np.any(gaps <= 0):
        raise ValueError("timestamps must be strictly increasing")
    rates = 1000.0 / gaps
    return FpsStats(mean=float(np.mean(rates)), std=float(np.std(rates)))


def latency_stats(trace: Iterable[TrackRecord]) -> LatencyStats:
    """Mean, std and median latency over all records."""
    samples = np.array([r.latency_ms for r in _records(trace)], dtype=np.float64)
    return LatencyStats(
        mean=float(np.mean(samples)),
        std=float(np.std(samples)),
        median=interpolated_percentile(samples, 50.0),
    )


def summarize(trace: Iterable[TrackRecord], geom: CameraGeometry) -> TrackStats:
    """
    Assemble every statistic of a trace.

    Args:
        trace: Records in frame order
        geom: Camera geometry for the degree conversion

    Returns:
        TrackStats
    """
    records = _records(trace)
    latency = latency_stats(records)
    fields: Dict[str, Any] = {
        'n_frames': len(records),
        'n_detected': sum(1 for r in records if r.detected),
        'detection_rate': detection_rate(records),
        'latency_mean': latency.mean,
        'latency_std': latency.std,
        'latency_median': latency.median,
    }

    if len(records) >= 2:
        fps = fps_stats(records)
        fields.update(fps_mean=fps.mean, fps_std=fps.std)

    px = detected_abs_errors(records)
    if px.size:
        px_stats = _distribution(px)
        deg_stats = _distribution(np.array([error_to_degrees(e, geom) for e in px]))
        fields.update(
            mean_abs_e=px_stats.mean,
            std_abs_e=px_stats.std,
            median_abs_e=px_stats.median,
            iqr_abs_e=px_stats.iqr,
            mean_abs_e_deg=deg_stats.mean,
            std_abs_e_deg=deg_stats.std,
            median_abs_e_deg=deg_stats.median,
            iqr_abs_e_deg=deg_stats.iqr,
        )
    else:
        logger.warning("Trace has no detections; error statistics are n/a")

    return TrackStats(**fields)


def derived_series(trace: Iterable[TrackRecord], geom: CameraGeometry) -> pd.DataFrame:
    """
    Per-frame series behind the error, command and latency panels.

    Missed frames keep NaN in e_px and e_deg.
    """
    rows = [
        {
            'frame': r.frame,
            't_ms': r.t_ms,
            'e_px': r.e_px if r.detected else np.nan,
            'e_deg': error_to_degrees(r.e_px, geom) if r.detected else np.nan,
            'theta_deg': r.theta_deg,
            'latency_ms': r.latency_ms,
        }
        for r in _records(trace)
    ]
    return pd.DataFrame(rows, columns=['frame', 't_ms', 'e_px', 'e_deg', 'theta_deg', 'latency_ms'])


def abs_error_histogram(trace: Iterable[TrackRecord], bin_px: float = 5.0) -> pd.DataFrame:
    """
    Histogram of |e_px| over detected frames with bins [k*bin, (k+1)*bin).

    The last bin is closed on the right. No detections gives an empty table.
    """
    if bin_px <= 0:
        raise ValueError(f"bin width must be > 0, got {bin_px}")
    samples = detected_abs_errors(_records(trace))
    columns = ['lo_px', 'hi_px', 'count']
    if samples.size == 0:
        return pd.DataFrame(columns=columns)

    n_bins = max(1, int(np.ceil(samples.max() / bin_px)))
    edges = np.arange(n_bins + 1, dtype=np.float64) * bin_px
    counts, _ = np.histogram(samples, bins=edges)
    return pd.DataFrame({'lo_px': edges[:-1], 'hi_px': edges[1:], 'count': counts}, columns=columns)
