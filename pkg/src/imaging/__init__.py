"""
Imaging Package for NightFusion Servo

Raster types, low-level operators, Netpbm I/O and colormap rendering.
"""

from .core import (
    GrayImage,
    RgbImage,
    ThermalFrame,
    interpolated_percentile,
    percentile,
    stretch,
    resize_bilinear,
    gaussian_blur,
    box_filter,
    luminance,
    rgb_to_ycbcr,
    ycbcr_to_rgb,
)
from .netpbm import read_thermal, write_thermal, read_rgb, write_rgb, write_gray
from .colormap import render_inferno

__all__ = [
    "GrayImage",
    "RgbImage",
    "ThermalFrame",
    "interpolated_percentile",
    "percentile",
    "stretch",
    "resize_bilinear",
    "gaussian_blur",
    "box_filter",
    "luminance",
    "rgb_to_ycbcr",
    "ycbcr_to_rgb",
    "read_thermal",
    "write_thermal",
    "read_rgb",
    "write_rgb",
    "write_gray",
    "render_inferno",
]
