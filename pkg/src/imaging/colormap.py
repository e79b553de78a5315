#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
False-color rendering of illumination maps.
"""

from functools import lru_cache

import numpy as np
from matplotlib import colormaps

from src.imaging.core import GrayImage, RgbImage


@lru_cache(maxsize=4)
def _lookup_table(name: str) -> np.ndarray:
    cmap = colormaps[name].resampled(256)
    table = cmap(np.arange(256))[:, :3].astype(np.float64)
    table.setflags(write=False)
    return table


def render_inferno(img: GrayImage, vmin: float = 0.0, vmax: float = 1.0) -> RgbImage:
    """
    Map [vmin, vmax] through the 256-entry Inferno table; out-of-range values saturate.

    Args:
        img: Map to render (typically the stabilized illumination map)
        vmin: Value drawn as the darkest color
        vmax: Value drawn as the brightest color

    Returns:
        RGB rendering with samples in [0, 1]
    """
    if not vmax > vmin:
        raise ValueError(f"display range must satisfy vmax > vmin, got [{vmin}, {vmax}]")
    scaled = np.clip((img.data - vmin) / (vmax - vmin), 0.0, 1.0)
    index = np.rint(scaled * 255.0).astype(np.intp)
    return RgbImage(_lookup_table("inferno")[index])
