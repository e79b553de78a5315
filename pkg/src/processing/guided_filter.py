#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Edge-aware guided filter (exact and subsampled variants).

The exact filter fits a local linear model q = a * guide + b in every
(2r+1)^2 window and averages the coefficients; the fast variant fits the
model on subsampled inputs and upsamples the coefficient maps.
"""

from typing import Tuple

import numpy as np

from src.imaging.core import GrayImage, box_mean, resize_array


def _check_same_shape(p: GrayImage, guide: GrayImage) -> None:
    if p.data.shape != guide.data.shape:
        raise ValueError(
            f"guided filter needs matching sizes: input {p.width}x{p.height}, "
            f"guide {guide.width}x{guide.height}"
        )


def guided_coefficients(p: np.ndarray, guide: np.ndarray, r: int, eps: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Window-averaged linear coefficients (mean_a, mean_b).

    Args:
        p: Input to filter
        guide: Guide image, same shape
        r: Window radius in pixels
        eps: Regularizer (> 0)

    Returns:
        (mean_a, mean_b) so that the filtered output is mean_a * guide + mean_b
    """
    if eps <= 0:
        raise ValueError(f"eps must be > 0, got {eps}")
    mean_i = box_mean(guide, r)
    mean_p = box_mean(p, r)
    cov_ip = box_mean(guide * p, r) - mean_i * mean_p
    var_i = box_mean(guide * guide, r) - mean_i * mean_i

    a = cov_ip / (var_i + eps)
    b = mean_p - a * mean_i
    return box_mean(a, r), box_mean(b, r)


def guided_filter(p: GrayImage, guide: GrayImage, r: int, eps: float) -> GrayImage:
    """Exact guided filter of p steered by guide."""
    _check_same_shape(p, guide)
    mean_a, mean_b = guided_coefficients(p.data, guide.data, r, eps)
    return GrayImage(mean_a * guide.data + mean_b)


def fast_guided_filter(p: GrayImage, guide: GrayImage, r: int, eps: float, s: int) -> GrayImage:
    """
    Subsampled guided filter.

    Inputs are downsampled by s, filtered with radius max(1, r // s), and the
    coefficient maps are upsampled bilinearly before composing with the
    full-resolution guide. s = 1 reproduces guided_filter bit for bit.
    """
    _check_same_shape(p, guide)
    if s < 1:
        raise ValueError(f"subsample factor must be >= 1, got {s}")
    if s == 1:
        return guided_filter(p, guide, r, eps)

    full_h, full_w = guide.data.shape
    low_w = max(1, full_w // s)
    low_h = max(1, full_h // s)
    p_low = resize_array(p.data, low_w, low_h)
    guide_low = resize_array(guide.data, low_w, low_h)

    mean_a, mean_b = guided_coefficients(p_low, guide_low, max(1, r // s), eps)
    a_up = resize_array(mean_a, full_w, full_h)
    b_up = resize_array(mean_b, full_w, full_h)
    return GrayImage(a_up * guide.data + b_up)
