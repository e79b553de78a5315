#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Fusion throughput benchmark.

Fuses a synthetic 640x480 RGB / 160x120 thermal stream single-threaded
with the default configuration (fast guided filter, CLAHE on) and reports
per-frame time and frames per second. The real-time target is 15 FPS,
i.e. 66.7 ms per frame.

Usage:
    python scripts/05_diagnostics/benchmark_fusion.py [--frames 200] [--mode fast|exact]
"""

import argparse
import sys
import time
from pathlib import Path
from typing import Dict

import numpy as np
from tabulate import tabulate
from tqdm import tqdm

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from src.data.models import FusionConfig  # noqa: E402
from src.imaging.core import RgbImage, ThermalFrame  # noqa: E402
from src.processing.fusion import NightFusion  # noqa: E402

TARGET_FPS = 15.0


def make_stream(width: int, height: int, seed: int = 3):
    """Static RGB frame and a thermal frame at quarter resolution."""
    rng = np.random.default_rng(seed)
    rgb = RgbImage(np.clip(0.08 + 0.05 * rng.random((height, width, 3)), 0.0, 1.0))
    counts = rng.integers(28000, 31000, size=(max(1, height // 4), max(1, width // 4)), dtype=np.uint16)
    return rgb, ThermalFrame(counts)


def run_benchmark(frames: int = 200, width: int = 640, height: int = 480,
                  mode: str = "fast", show_progress: bool = False) -> Dict[str, float]:
    """
    Time `frames` fusion steps on one stream.

    Returns:
        Dict with frames, mean_ms, median_ms, max_ms and fps
    """
    rgb, thermal = make_stream(width, height)
    fusion = NightFusion(FusionConfig(guided_mode=mode))

    timings = []
    for _ in tqdm(range(frames), desc="Fusing", unit="frame", disable=not show_progress):
        start_time = time.perf_counter()
        fusion.process(rgb, thermal)
        timings.append((time.perf_counter() - start_time) * 1000.0)

    samples = np.array(timings)
    mean_ms = float(samples.mean())
    return {
        'frames': frames,
        'mean_ms': mean_ms,
        'median_ms': float(np.median(samples)),
        'max_ms': float(samples.max()),
        'fps': 1000.0 / mean_ms if mean_ms > 0 else float('inf'),
    }


def main():
    parser = argparse.ArgumentParser(description="NightFusion throughput benchmark")
    parser.add_argument("--frames", type=int, default=200)
    parser.add_argument("--width", type=int, default=640)
    parser.add_argument("--height", type=int, default=480)
    parser.add_argument("--mode", choices=["fast", "exact"], default="fast")
    args = parser.parse_args()

    print(f"⏱️  Fusing {args.frames} frames at {args.width}x{args.height} ({args.mode} guided filter)")
    result = run_benchmark(args.frames, args.width, args.height, args.mode, show_progress=True)

    rows = [[key, f"{value:.2f}" if isinstance(value, float) else value] for key, value in result.items()]
    print(tabulate(rows, headers=["metric", "value"], tablefmt="simple", disable_numparse=True))

    if result['fps'] >= TARGET_FPS:
        print(f"✅ Real-time target met ({result['fps']:.1f} >= {TARGET_FPS:.0f} FPS)")
        return 0
    print(f"⚠️  Below real-time target ({result['fps']:.1f} < {TARGET_FPS:.0f} FPS)")
    return 1


if __name__ == "__main__":
    sys.exit(main())
