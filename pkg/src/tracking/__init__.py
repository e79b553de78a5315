"""
Tracking Package for NightFusion Servo

Pan servo law, closed-loop simulator, trace codecs, detection replay,
statistics and report rendering.
"""

from .servo import PanServo, ServoState, pixel_error, error_to_degrees, pid_step, hold_on_miss
from .simulator import (
    TrackTrace,
    target_azimuth,
    project_to_pixel,
    detect,
    sample_latency,
    run_closed_loop,
)
from .metrics import (
    TrackStats,
    abs_error_stats,
    detection_rate,
    fps_stats,
    latency_stats,
    summarize,
    derived_series,
    abs_error_histogram,
)
from .trace_io import Detection, write_trace, read_trace, read_detections
from .replay import replay_detections
from .report import render_report, export_series

__all__ = [
    'PanServo',
    'ServoState',
    'pixel_error',
    'error_to_degrees',
    'pid_step',
    'hold_on_miss',
    'TrackTrace',
    'target_azimuth',
    'project_to_pixel',
    'detect',
    'sample_latency',
    'run_closed_loop',
    'TrackStats',
    'abs_error_stats',
    'detection_rate',
    'fps_stats',
    'latency_stats',
    'summarize',
    'derived_series',
    'abs_error_histogram',
    'Detection',
    'write_trace',
    'read_trace',
    'read_detections',
    'replay_detections',
    'render_report',
    'export_series',
]
