#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Radiometric temperature readout.

Counts are read as hundredths of a kelvin (centikelvin). The camera SDK
defines the true convention; this one is an assumption, documented wherever
temperatures are reported. No emissivity correction is applied.
"""

from decimal import Decimal
from typing import Tuple

import numpy as np

from src.imaging.core import ThermalFrame

KELVIN_OFFSET = Decimal("273.15")
COUNTS_PER_KELVIN = Decimal(100)


def raw_to_celsius_exact(count: int) -> Decimal:
    """Exact decimal temperature for a centikelvin count."""
    if not 0 <= int(count) <= 65535:
        raise ValueError(f"count must be a 16-bit unsigned value, got {count}")
    return Decimal(int(count)) / COUNTS_PER_KELVIN - KELVIN_OFFSET


def raw_to_celsius(count: int) -> float:
    """T = count / 100 - 273.15 in degrees Celsius."""
    return float(raw_to_celsius_exact(count))


def celsius_map(frame: ThermalFrame) -> np.ndarray:
    """Per-pixel temperatures in degrees Celsius."""
    return frame.counts.astype(np.float64) / 100.0 - 273.15


def query_pixel(frame: ThermalFrame, x: int, y: int) -> float:
    """
    Temperature at pixel (x, y).

    Raises:
        ValueError: naming the offending axis when (x, y) is outside the frame
    """
    if not 0 <= x < frame.width:
        raise ValueError(f"x={x} out of bounds for frame {frame.width}x{frame.height}")
    if not 0 <= y < frame.height:
        raise ValueError(f"y={y} out of bounds for frame {frame.width}x{frame.height}")
    return raw_to_celsius(int(frame.counts[y, x]))


def hotspot(frame: ThermalFrame) -> Tuple[int, int, float]:
    """Hottest pixel as (x, y, celsius); ties resolve to the first in row-major order."""
    flat_index = int(np.argmax(frame.counts))
    y, x = divmod(flat_index, frame.width)
    return x, y, raw_to_celsius(int(frame.counts[y, x]))
