#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Contrast-limited adaptive histogram equalization (CLAHE).

Per tile: 256-bin histogram, bins clipped at clip_factor x (tile pixels / 256),
excess spread uniformly over all bins in one pass, and a CDF mapping
(cdf(v) - cdf_min) / (n - cdf_min). A tile whose pixels all fall in one bin
has no contrast to stretch and keeps the identity mapping. Each pixel
bilinearly blends the mappings of the four nearest tile centres; pixels
beyond the outermost centres clamp to the edge tiles.
"""

from typing import List, Tuple

import numpy as np

from src.imaging.core import GrayImage

N_BINS = 256


def _tile_edges(length: int, tiles: int) -> np.ndarray:
    return (np.arange(tiles + 1) * length) // tiles


def _tile_index(length: int, edges: np.ndarray) -> np.ndarray:
    return np.searchsorted(edges, np.arange(length), side='right') - 1


def _blend_weights(length: int, edges: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """For every position: lower tile, upper tile, weight of the upper tile."""
    centers = (edges[:-1] + edges[1:] - 1) / 2.0
    positions = np.arange(length, dtype=np.float64)
    n_tiles = len(centers)
    lower = np.clip(np.searchsorted(centers, positions, side='right') - 1, 0, n_tiles - 1)
    upper = np.minimum(lower + 1, n_tiles - 1)
    span = centers[upper] - centers[lower]
    with np.errstate(divide='ignore', invalid='ignore'):
        weight = np.where(span > 0, (positions - centers[lower]) / np.where(span > 0, span, 1.0), 0.0)
    return lower, upper, np.clip(weight, 0.0, 1.0)


def _runs(tile: np.ndarray) -> List[slice]:
    """Contiguous spans sharing one tile pair; each blends from four 256-entry tables."""
    starts = np.concatenate(([0], np.flatnonzero(np.diff(tile)) + 1, [len(tile)]))
    return [slice(int(a), int(b)) for a, b in zip(starts[:-1], starts[1:])]


def tile_mappings(bins: np.ndarray, grid_y: int, grid_x: int, clip_factor: float) -> np.ndarray:
    """
    Build the per-tile gray-level mappings.

    Args:
        bins: Quantized image, integer levels 0..255
        grid_y: Tiles along the vertical axis
        grid_x: Tiles along the horizontal axis
        clip_factor: Clip limit as a multiple of the mean bin height

    Returns:
        Array (grid_y, grid_x, 256) of output levels in [0, 1]
    """
    height, width = bins.shape
    edges_y = _tile_edges(height, grid_y)
    edges_x = _tile_edges(width, grid_x)
    tile_y = _tile_index(height, edges_y)
    tile_x = _tile_index(width, edges_x)

    tile_id = tile_y[:, None] * grid_x + tile_x[None, :]
    flat = (tile_id * N_BINS + bins).ravel()
    hist = np.bincount(flat, minlength=grid_y * grid_x * N_BINS).astype(np.float64)
    hist = hist.reshape(grid_y, grid_x, N_BINS)

    area = (np.diff(edges_y)[:, None] * np.diff(edges_x)[None, :]).astype(np.float64)
    single_bin = np.count_nonzero(hist, axis=-1) == 1

    limit = clip_factor * area / N_BINS
    excess = np.maximum(hist - limit[..., None], 0.0).sum(axis=-1)
    clipped = np.minimum(hist, limit[..., None]) + (excess / N_BINS)[..., None]

    cdf = np.cumsum(clipped, axis=-1)
    cdf_min = np.where(cdf > 0, cdf, np.inf).min(axis=-1)
    denom = area - cdf_min
    with np.errstate(divide='ignore', invalid='ignore'):
        mapping = (cdf - cdf_min[..., None]) / np.where(denom > 0, denom, 1.0)[..., None]
    mapping = np.clip(mapping, 0.0, 1.0)

    identity = np.arange(N_BINS, dtype=np.float64) / (N_BINS - 1)
    mapping[single_bin | (denom <= 0)] = identity
    return mapping


def clahe(gray: GrayImage, clip_factor: float = 2.0, grid: int = 8) -> GrayImage:
    """
    CLAHE on a [0, 1] gray image.

    Args:
        gray: Input plane (typically luma)
        clip_factor: Clip limit as a multiple of the mean bin height (> 0)
        grid: Tiles per axis (>= 1); capped at the image size

    Returns:
        Equalized plane in [0, 1]
    """
    if grid < 1:
        raise ValueError(f"grid must be >= 1, got {grid}")
    if clip_factor <= 0:
        raise ValueError(f"clip factor must be > 0, got {clip_factor}")

    height, width = gray.data.shape
    grid_y = min(grid, height)
    grid_x = min(grid, width)

    bins = np.rint(np.clip(gray.data, 0.0, 1.0) * (N_BINS - 1)).astype(np.intp)
    mapping = tile_mappings(bins, grid_y, grid_x, clip_factor)

    y0, y1, wy = _blend_weights(height, _tile_edges(height, grid_y))
    x0, x1, wx = _blend_weights(width, _tile_edges(width, grid_x))

    out = np.empty((height, width), dtype=np.float64)
    for rows in _runs(y0):
        a0, a1 = y0[rows.start], y1[rows.start]
        wy_r = wy[rows, None]
        for cols in _runs(x0):
            b0, b1 = x0[cols.start], x1[cols.start]
            wx_r = wx[None, cols]
            region = bins[rows, cols]
            top = (1.0 - wx_r) * mapping[a0, b0].take(region) + wx_r * mapping[a0, b1].take(region)
            bottom = (1.0 - wx_r) * mapping[a1, b0].take(region) + wx_r * mapping[a1, b1].take(region)
            out[rows, cols] = (1.0 - wy_r) * top + wy_r * bottom
    return GrayImage(np.clip(out, 0.0, 1.0, out=out))
