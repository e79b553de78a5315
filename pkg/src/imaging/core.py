#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Raster types and low-level operators for NightFusion.

GrayImage, RgbImage and ThermalFrame wrap read-only numpy arrays
(height x width [x 3]) so images behave as immutable values. Every
operator here is a pure function and returns a new image.

Conventions shared by all spatial filters:
- borders are replicated (OpenCV BORDER_REPLICATE for blur and box)
- float64 throughout
- percentiles interpolate linearly between order statistics
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

import cv2
import numpy as np


# BT.601 full-range luma and chroma scale factors
_KR, _KG, _KB = 0.299, 0.587, 0.114
_CB_SCALE = 0.564
_CR_SCALE = 0.713

DEGENERATE_RANGE = 1e-6
THERMAL_FULL_SCALE = 65535.0


def _freeze(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Single-channel float raster, nominal range [0, 1]."""

    data: np.ndarray

    def __post_init__(self):
        array = np.array(self.data, dtype=np.float64, order='C', copy=True)
        if array.ndim != 2:
            raise ValueError(f"GrayImage expects a 2-D array, got shape {array.shape}")
        if array.shape[0] < 1 or array.shape[1] < 1:
            raise ValueError("GrayImage must be at least 1x1")
        object.__setattr__(self, 'data', _freeze(array))

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @classmethod
    def full(cls, width: int, height: int, value: float) -> "GrayImage":
        return cls(np.full((height, width), value, dtype=np.float64))

    @classmethod
    def from_flat(cls, width: int, height: int, samples: Sequence[float]) -> "GrayImage":
        """Build from row-major samples; len(samples) must equal width * height."""
        flat = np.asarray(samples, dtype=np.float64)
        if flat.size != width * height:
            raise ValueError(f"expected {width * height} samples, got {flat.size}")
        return cls(flat.reshape(height, width))


@dataclass(frozen=True, eq=False)
class RgbImage:
    """Three-channel float raster (height x width x 3), nominal range [0, 1]."""

    data: np.ndarray

    def __post_init__(self):
        array = np.array(self.data, dtype=np.float64, order='C', copy=True)
        if array.ndim != 3 or array.shape[2] != 3:
            raise ValueError(f"RgbImage expects shape (h, w, 3), got {array.shape}")
        if array.shape[0] < 1 or array.shape[1] < 1:
            raise ValueError("RgbImage must be at least 1x1")
        object.__setattr__(self, 'data', _freeze(array))

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @classmethod
    def full(cls, width: int, height: int, value: Tuple[float, float, float]) -> "RgbImage":
        return cls(np.broadcast_to(np.asarray(value, dtype=np.float64), (height, width, 3)))

    @classmethod
    def from_flat(cls, width: int, height: int, samples: Sequence[float]) -> "RgbImage":
        """Build from row-major interleaved RGB triples."""
        flat = np.asarray(samples, dtype=np.float64)
        if flat.size != 3 * width * height:
            raise ValueError(f"expected {3 * width * height} samples, got {flat.size}")
        return cls(flat.reshape(height, width, 3))


@dataclass(frozen=True, eq=False)
class ThermalFrame:
    """Radiometric counts (uint16), centikelvin convention."""

    counts: np.ndarray

    def __post_init__(self):
        raw = np.asarray(self.counts)
        if raw.ndim != 2:
            raise ValueError(f"ThermalFrame expects a 2-D array, got shape {raw.shape}")
        if raw.shape[0] < 1 or raw.shape[1] < 1:
            raise ValueError("ThermalFrame must be at least 1x1")
        if raw.dtype != np.uint16:
            if np.any(raw < 0) or np.any(raw > 65535):
                raise ValueError("thermal counts must fit in 16 bits")
        array = np.array(raw, dtype=np.uint16, order='C', copy=True)
        object.__setattr__(self, 'counts', _freeze(array))

    @property
    def width(self) -> int:
        return self.counts.shape[1]

    @property
    def height(self) -> int:
        return self.counts.shape[0]

    @classmethod
    def full(cls, width: int, height: int, count: int) -> "ThermalFrame":
        return cls(np.full((height, width), count, dtype=np.uint16))


# ---------------------------------------------------------------------------
# Order statistics
# ---------------------------------------------------------------------------

def interpolated_percentile(values: np.ndarray, p: float) -> float:
    """
    Linearly interpolated order statistic.

    With sorted samples s[0..n-1] and rank r = p/100 * (n-1), returns
    s[floor(r)] + frac(r) * (s[floor(r)+1] - s[floor(r)]).

    Args:
        values: Samples of any shape
        p: Percentile in [0, 100]

    Returns:
        The interpolated value
    """
    samples = np.asarray(values, dtype=np.float64).ravel()
    if samples.size == 0:
        raise ValueError("empty input")
    if not 0.0 <= p <= 100.0:
        raise ValueError(f"percentile must be in [0, 100], got {p}")
    return float(np.percentile(samples, p, method="linear"))


def percentile(img: GrayImage, p: float) -> float:
    """Interpolated percentile of all samples of img."""
    return interpolated_percentile(img.data, p)


def stretch(img: GrayImage, p_low: float, p_high: float) -> GrayImage:
    """
    Robust percentile normalization to [0, 1].

    A range narrower than 1e-6 (flat frame) yields a constant 0.5 image.
    """
    if not 0.0 <= p_low < p_high <= 100.0:
        raise ValueError(f"need 0 <= p_low < p_high <= 100, got ({p_low}, {p_high})")
    if img.data.size == 0:
        raise ValueError("empty input")
    lo, hi = np.percentile(img.data, [p_low, p_high], method="linear")
    if hi - lo < DEGENERATE_RANGE:
        return GrayImage(np.full(img.data.shape, 0.5))
    return GrayImage(np.clip((img.data - lo) / (hi - lo), 0.0, 1.0))


# ---------------------------------------------------------------------------
# Resampling
# ---------------------------------------------------------------------------

def _resize_axis(array: np.ndarray, out_len: int, axis: int) -> np.ndarray:
    in_len = array.shape[axis]
    if in_len == out_len:
        return array
    coords = (np.arange(out_len, dtype=np.float64) + 0.5) * (in_len / out_len) - 0.5
    coords = np.clip(coords, 0.0, in_len - 1)
    lower = np.floor(coords).astype(np.intp)
    upper = np.minimum(lower + 1, in_len - 1)
    frac = coords - lower

    shape = [1] * array.ndim
    shape[axis] = out_len
    frac = frac.reshape(shape)
    a = np.take(array, lower, axis=axis)
    b = np.take(array, upper, axis=axis)
    return a + frac * (b - a)


def resize_array(array: np.ndarray, out_w: int, out_h: int) -> np.ndarray:
    """Bilinear resize with half-pixel-center alignment on the first two axes."""
    if out_w < 1 or out_h < 1:
        raise ValueError(f"target size must be at least 1x1, got {out_w}x{out_h}")
    resized = _resize_axis(array, out_w, axis=1)
    resized = _resize_axis(resized, out_h, axis=0)
    if resized is array:
        resized = array.copy()
    return resized


def resize_bilinear(img: GrayImage, out_w: int, out_h: int) -> GrayImage:
    """
    Bilinear resize; source coordinate = (i + 0.5) * in/out - 0.5, clamped.

    Resizing to the current size returns an identical copy.
    """
    return GrayImage(resize_array(img.data, out_w, out_h))


# ---------------------------------------------------------------------------
# Spatial filters (replicated borders)
# ---------------------------------------------------------------------------

def gaussian_sigma(k: int) -> float:
    """Sigma for an odd kernel width k: 0.3 * ((k - 1)/2 - 1) + 0.8."""
    if k < 1:
        raise ValueError(f"kernel width must be >= 1, got {k}")
    if k % 2 == 0:
        raise ValueError("kernel width must be odd")
    return 0.3 * ((k - 1) / 2.0 - 1.0) + 0.8


def gaussian_kernel(k: int) -> np.ndarray:
    """Normalized 1-D Gaussian taps for width k."""
    sigma = gaussian_sigma(k)
    offsets = np.arange(k, dtype=np.float64) - (k // 2)
    taps = np.exp(-(offsets ** 2) / (2.0 * sigma * sigma))
    return taps / taps.sum()


def _as_float(array: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(array, dtype=np.float64)


def blur_array(array: np.ndarray, k: int) -> np.ndarray:
    """Separable Gaussian blur on the first two axes (gray or 3-channel)."""
    sigma = gaussian_sigma(k)
    if k == 1:
        return np.array(array, dtype=np.float64, copy=True)
    # Explicit sigma: OpenCV's built-in small-kernel tables differ from the formula.
    return cv2.GaussianBlur(_as_float(array), (k, k), sigmaX=sigma, sigmaY=sigma,
                            borderType=cv2.BORDER_REPLICATE)


def gaussian_blur(img: GrayImage, k: int) -> GrayImage:
    """Separable Gaussian blur of odd width k."""
    return GrayImage(blur_array(img.data, k))


def box_mean(array: np.ndarray, r: int) -> np.ndarray:
    """Mean over (2r+1) x (2r+1) windows; cost independent of r."""
    if r < 0:
        raise ValueError(f"radius must be >= 0, got {r}")
    if r == 0:
        return np.array(array, dtype=np.float64, copy=True)
    size = 2 * r + 1
    return cv2.boxFilter(_as_float(array), -1, (size, size), normalize=True,
                         borderType=cv2.BORDER_REPLICATE)


def box_filter(img: GrayImage, r: int) -> GrayImage:
    """Box mean of radius r with replicated borders."""
    return GrayImage(box_mean(img.data, r))


# ---------------------------------------------------------------------------
# Color
# ---------------------------------------------------------------------------

def _luma(rgb: np.ndarray) -> np.ndarray:
    return _KR * rgb[..., 0] + _KG * rgb[..., 1] + _KB * rgb[..., 2]


def luminance(img: RgbImage) -> GrayImage:
    """BT.601 luma plane."""
    return GrayImage(_luma(img.data))


def rgb_to_ycbcr(img: RgbImage) -> Tuple[GrayImage, GrayImage, GrayImage]:
    """BT.601 full-range RGB -> (Y, Cb, Cr), chroma centred on 0.5."""
    rgb = img.data
    y = _luma(rgb)
    cb = 0.5 + (rgb[..., 2] - y) * _CB_SCALE
    cr = 0.5 + (rgb[..., 0] - y) * _CR_SCALE
    return GrayImage(y), GrayImage(cb), GrayImage(cr)


def ycbcr_to_rgb(y: GrayImage, cb: GrayImage, cr: GrayImage) -> RgbImage:
    """Algebraic inverse of rgb_to_ycbcr, clipped to [0, 1]."""
    if not (y.data.shape == cb.data.shape == cr.data.shape):
        raise ValueError("Y, Cb and Cr planes must share dimensions")
    r = y.data + (cr.data - 0.5) / _CR_SCALE
    b = y.data + (cb.data - 0.5) / _CB_SCALE
    g = (y.data - _KR * r - _KB * b) / _KG
    return RgbImage(np.clip(np.stack([r, g, b], axis=-1), 0.0, 1.0))
