#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Netpbm codec for frame directories.

- Thermal frames: P5, maxval 65535, big-endian two-byte samples.
- Visible frames and rendered outputs: P6 (RGB) / P5 (gray), maxval 255,
  quantized as round(v * 255) after clipping to [0, 1].
"""

import logging
from pathlib import Path
from typing import Tuple, Union

import numpy as np

from src.imaging.core import GrayImage, RgbImage, ThermalFrame
from src.utils.errors import ImageFormatError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _read_header(data: bytes, path: PathLike) -> Tuple[bytes, int, int, int, int]:
    """
    Parse magic, width, height and maxval; comments start with '#'.

    Returns:
        (magic, width, height, maxval, offset of the first raster byte)
    """
    tokens = []
    pos = 0
    length = len(data)
    while len(tokens) < 4:
        while pos < length and data[pos:pos + 1].isspace():
            pos += 1
        if pos >= length:
            raise ImageFormatError(f"{path}: truncated header")
        if data[pos:pos + 1] == b'#':
            while pos < length and data[pos:pos + 1] not in (b'\n', b'\r'):
                pos += 1
            continue
        start = pos
        while pos < length and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b'#':
            pos += 1
        tokens.append(data[start:pos])
    # Exactly one whitespace byte separates maxval from the raster.
    if pos >= length or not data[pos:pos + 1].isspace():
        raise ImageFormatError(f"{path}: truncated header")
    pos += 1

    magic = tokens[0]
    if magic not in (b'P5', b'P6'):
        raise ImageFormatError(f"{path}: unsupported Netpbm magic {magic!r} (need P5 or P6)")
    try:
        width, height, maxval = (int(token) for token in tokens[1:])
    except ValueError:
        raise ImageFormatError(f"{path}: non-numeric header field")
    if width < 1 or height < 1:
        raise ImageFormatError(f"{path}: invalid dimensions {width}x{height}")
    if not 1 <= maxval <= 65535:
        raise ImageFormatError(f"{path}: invalid maxval {maxval}")
    return magic, width, height, maxval, pos


def _read_raster(path: PathLike) -> Tuple[bytes, np.ndarray, int]:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise ImageFormatError(f"{path}: unreadable ({e.strerror or e})")
    magic, width, height, maxval, offset = _read_header(data, path)
    channels = 3 if magic == b'P6' else 1
    dtype = np.dtype('>u2') if maxval > 255 else np.dtype('u1')
    expected = width * height * channels * dtype.itemsize
    raster = data[offset:offset + expected]
    if len(raster) < expected:
        raise ImageFormatError(f"{path}: expected {expected} raster bytes, found {len(raster)}")
    samples = np.frombuffer(raster, dtype=dtype)
    shape = (height, width, 3) if channels == 3 else (height, width)
    return magic, samples.reshape(shape), maxval


def read_thermal(path: PathLike) -> ThermalFrame:
    """Read a 16-bit radiometric P5 frame."""
    magic, samples, maxval = _read_raster(path)
    if magic != b'P5' or maxval != 65535:
        raise ImageFormatError(f"{path}: expected 16-bit thermal (P5, maxval 65535)")
    return ThermalFrame(samples.astype(np.uint16))


def write_thermal(path: PathLike, frame: ThermalFrame) -> None:
    """Write a 16-bit radiometric P5 frame (bit-exact inverse of read_thermal)."""
    header = f"P5\n{frame.width} {frame.height}\n65535\n".encode('ascii')
    Path(path).write_bytes(header + frame.counts.astype('>u2').tobytes())


def read_rgb(path: PathLike) -> RgbImage:
    """Read an 8-bit P6 frame as floats in [0, 1]."""
    magic, samples, maxval = _read_raster(path)
    if magic != b'P6' or maxval != 255:
        raise ImageFormatError(f"{path}: expected 8-bit RGB (P6, maxval 255)")
    return RgbImage(samples.astype(np.float64) / 255.0)


def quantize(array: np.ndarray) -> np.ndarray:
    """round(v * 255) after clipping to [0, 1], as uint8."""
    return np.rint(np.clip(array, 0.0, 1.0) * 255.0).astype(np.uint8)


def write_rgb(path: PathLike, img: RgbImage) -> None:
    """Write an RGB image as P6, maxval 255."""
    header = f"P6\n{img.width} {img.height}\n255\n".encode('ascii')
    Path(path).write_bytes(header + quantize(img.data).tobytes())


def write_gray(path: PathLike, img: GrayImage) -> None:
    """Write a gray image as P5, maxval 255."""
    header = f"P5\n{img.width} {img.height}\n255\n".encode('ascii')
    Path(path).write_bytes(header + quantize(img.data).tobytes())
