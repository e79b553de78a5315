"""
Processing Package for NightFusion Servo

Fusion pipeline, guided filter, CLAHE, radiometry and the frame-directory
batch processor.
"""

from .fusion import (
    FusionState,
    NightFusion,
    thermal_to_unit,
    illumination_proxy,
    refine_illumination,
    ema_update,
    gain_modulate,
    unsharp_mask,
    equalize_luma,
    fuse_frame,
)
from .guided_filter import guided_filter, fast_guided_filter
from .clahe import clahe
from .radiometry import raw_to_celsius, raw_to_celsius_exact, celsius_map, query_pixel, hotspot
from .batch_processor import BatchProcessor

__all__ = [
    'FusionState',
    'NightFusion',
    'thermal_to_unit',
    'illumination_proxy',
    'refine_illumination',
    'ema_update',
    'gain_modulate',
    'unsharp_mask',
    'equalize_luma',
    'fuse_frame',
    'guided_filter',
    'fast_guided_filter',
    'clahe',
    'raw_to_celsius',
    'raw_to_celsius_exact',
    'celsius_map',
    'query_pixel',
    'hotspot',
    'BatchProcessor',
]
