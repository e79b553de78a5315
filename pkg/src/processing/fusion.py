#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
NightFusion: thermal-guided low-light enhancement of visible frames.

Pipeline per frame:
1. Thermal counts -> [0, 1] (divide by 65535)
2. Bilinear resize to the visible resolution
3. Illumination proxy L = blur(stretch(T; p_low, p_high) ** gamma)
4. Edge-aware refinement with a guided filter steered by visible luma
5. Temporal stabilization (EMA) of the refined map
6. Gain modulation I_f = clip(I * (alpha + beta * L_hat), 0, 1)
7. Unsharp mask
8. Optional CLAHE on the Y channel, recomposed through YCbCr

Only FusionState is mutated; keep one state per stream.
"""

import logging
import time
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from src.data.models import FusionConfig
from src.imaging.core import (
    THERMAL_FULL_SCALE,
    GrayImage,
    RgbImage,
    ThermalFrame,
    blur_array,
    gaussian_blur,
    luminance,
    resize_bilinear,
    rgb_to_ycbcr,
    stretch,
    ycbcr_to_rgb,
)
from src.processing.clahe import clahe
from src.processing.guided_filter import fast_guided_filter, guided_filter
from src.utils.logging_config import log_performance
from src.utils.errors import FramePairingError

logger = logging.getLogger(__name__)


@dataclass
class FusionState:
    """Per-stream memory: the stabilized illumination map and a frame counter."""

    l_hat: Optional[GrayImage] = None
    frame_index: int = 0

    def reset(self) -> None:
        self.l_hat = None
        self.frame_index = 0


def _check_dims(name: str, img, width: int, height: int) -> None:
    if img.width != width or img.height != height:
        raise ValueError(f"{name} is {img.width}x{img.height}, expected {width}x{height}")


def thermal_to_unit(thermal: ThermalFrame) -> GrayImage:
    """Raw counts scaled to [0, 1]."""
    return GrayImage(thermal.counts.astype(np.float64) / THERMAL_FULL_SCALE)


def illumination_proxy(thermal: GrayImage, cfg: FusionConfig) -> GrayImage:
    """
    Coarse illumination proxy from a resized, [0, 1]-scaled thermal frame.

    Args:
        thermal: Thermal plane at visible resolution
        cfg: Fusion parameters (p_low, p_high, gamma, gauss_k)

    Returns:
        gaussian_blur(stretch(thermal) ** gamma, gauss_k)
    """
    stretched = stretch(thermal, cfg.p_low, cfg.p_high)
    return gaussian_blur(GrayImage(np.power(stretched.data, cfg.gamma)), cfg.gauss_k)


def refine_illumination(proxy: GrayImage, rgb: RgbImage, cfg: FusionConfig) -> GrayImage:
    """Guided refinement of the proxy, guide = luma of the visible frame."""
    guide = luminance(rgb)
    if cfg.guided_mode == "exact":
        refined = guided_filter(proxy, guide, cfg.guided_radius, cfg.guided_eps)
    else:
        refined = fast_guided_filter(
            proxy, guide, cfg.guided_radius, cfg.guided_eps, cfg.guided_fast_subsample
        )
    # The linear model can overshoot slightly near strong guide edges.
    return GrayImage(np.clip(refined.data, 0.0, 1.0))


def ema_update(state: FusionState, l_tilde: GrayImage, a: float) -> GrayImage:
    """
    L_hat_t = a * L_hat_{t-1} + (1 - a) * L_tilde_t; the first frame initializes L_hat = L_tilde.

    Evaluated as L_tilde + a * (L_hat_{t-1} - L_tilde) so that a = 0 passes
    L_tilde through and repeated frames are an exact fixed point.
    """
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"EMA factor must be in [0, 1], got {a}")
    if state.l_hat is None:
        state.l_hat = GrayImage(l_tilde.data)
    else:
        _check_dims("l_tilde", l_tilde, state.l_hat.width, state.l_hat.height)
        state.l_hat = GrayImage(l_tilde.data + a * (state.l_hat.data - l_tilde.data))
    return state.l_hat


def gain_modulate(rgb: RgbImage, l_hat: GrayImage, alpha: float, beta: float) -> RgbImage:
    """Per-pixel gain G = alpha + beta * l_hat applied to every channel, then clipped."""
    _check_dims("l_hat", l_hat, rgb.width, rgb.height)
    gain = alpha + beta * l_hat.data
    out = np.multiply(rgb.data, gain[..., None])
    return RgbImage(np.clip(out, 0.0, 1.0, out=out))


def unsharp_mask(rgb: RgbImage, strength: float, k: int) -> RgbImage:
    """clip(I + strength * (I - blur(I, k)), 0, 1) per channel."""
    if strength < 0:
        raise ValueError(f"unsharp strength must be >= 0, got {strength}")
    out = blur_array(rgb.data, k)
    np.subtract(rgb.data, out, out=out)
    out *= strength
    out += rgb.data
    return RgbImage(np.clip(out, 0.0, 1.0, out=out))


def equalize_luma(rgb: RgbImage, clip_factor: float, grid: int) -> RgbImage:
    """CLAHE on Y, chroma untouched, recomposed to RGB."""
    y, cb, cr = rgb_to_ycbcr(rgb)
    return ycbcr_to_rgb(clahe(y, clip_factor, grid), cb, cr)


def fuse_frame(rgb: RgbImage, thermal: ThermalFrame, cfg: FusionConfig,
               state: FusionState) -> Tuple[RgbImage, GrayImage]:
    """
    Run the full pipeline on one frame pair.

    Args:
        rgb: Visible frame in [0, 1]
        thermal: Radiometric frame at any resolution
        cfg: Fusion parameters
        state: Stream state, updated in place

    Returns:
        (fused frame, stabilized illumination map used for the gain)
    """
    timings = {}

    start = time.perf_counter()
    thermal_unit = resize_bilinear(thermal_to_unit(thermal), rgb.width, rgb.height)
    proxy = illumination_proxy(thermal_unit, cfg)
    timings['proxy'] = time.perf_counter() - start

    start = time.perf_counter()
    refined = refine_illumination(proxy, rgb, cfg)
    timings['guided'] = time.perf_counter() - start

    l_hat = ema_update(state, refined, cfg.ema_a)

    start = time.perf_counter()
    fused = gain_modulate(rgb, l_hat, cfg.alpha, cfg.beta)
    fused = unsharp_mask(fused, cfg.unsharp_strength, cfg.unsharp_k)
    timings['enhance'] = time.perf_counter() - start

    if cfg.clahe_enabled:
        start = time.perf_counter()
        fused = equalize_luma(fused, cfg.clahe_clip, cfg.clahe_grid)
        timings['clahe'] = time.perf_counter() - start

    for stage, seconds in timings.items():
        log_performance('fusion', stage, seconds, frame=state.frame_index)
    state.frame_index += 1
    return fused, l_hat


class NightFusion:
    """
    Per-stream fusion processor.

    Owns a FusionConfig and the FusionState of a single stream; do not
    share an instance across concurrent streams.
    """

    def __init__(self, config: Optional[FusionConfig] = None):
        self.config = config or FusionConfig()
        self.state = FusionState()
        logger.debug(f"NightFusion initialized (guided_mode={self.config.guided_mode})")

    def process(self, rgb: RgbImage, thermal: ThermalFrame) -> Tuple[RgbImage, GrayImage]:
        """Fuse the next frame pair of the stream."""
        return fuse_frame(rgb, thermal, self.config, self.state)

    def reset(self) -> None:
        """Forget the illumination history (e.g. on a scene cut)."""
        self.state.reset()

    def check_frame_size(self, rgb: RgbImage, source: str) -> None:
        """
        Reject a visible frame whose size differs from the stream's.

        Raises:
            FramePairingError: naming `source` and both sizes
        """
        l_hat = self.state.l_hat
        if l_hat is not None and (rgb.width, rgb.height) != (l_hat.width, l_hat.height):
            raise FramePairingError(
                f"{source}: frame is {rgb.width}x{rgb.height}, stream is {l_hat.width}x{l_hat.height}"
            )
