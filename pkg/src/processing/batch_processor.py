#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Batch Processor for NightFusion frame directories

Orchestrates the fusion workflow behind `main.py fuse`:
1. Find RGB (*.ppm) and thermal (*.pgm) frames
2. Pair them by sorted filename order
3. Fuse each pair in index order (EMA state forces sequential processing)
4. Write fused frame, illumination map and its Inferno rendering
5. Write the per-frame timing CSV

Rules:
- A count mismatch is an error, never a silent truncation
- The three output writes of a frame run on a thread pool capped by NFS_THREADS
- Inputs are never modified
"""

import time
import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import pandas as pd
from tqdm import tqdm

from config.settings import get_settings
from src.data.models import FusionConfig
from src.imaging.colormap import render_inferno
from src.imaging.netpbm import read_rgb, read_thermal, write_gray, write_rgb
from src.processing.fusion import NightFusion
from src.utils.errors import FramePairingError
from src.utils.logging_config import get_logger, log_performance

# Configure logger
logger = logging.getLogger(__name__)

RGB_SUFFIX = '.ppm'
THERMAL_SUFFIX = '.pgm'
TIMING_FILENAME = 'timing.csv'

PathLike = Union[str, Path]


class BatchProcessor:
    """
    Frame-directory fusion pipeline

    Features:
    - Deterministic pairing by sorted filename
    - Sequential fusion with one NightFusion stream
    - Concurrent output writes
    - Progress tracking and timing export
    """

    def __init__(self, fusion_config: Optional[FusionConfig] = None, show_progress: bool = False):
        """Initialize batch processor with a fresh fusion stream."""
        self.settings = get_settings()
        self.fusion = NightFusion(fusion_config)
        self.show_progress = show_progress

        # Processing statistics
        self.stats = {
            'total_frames': 0,
            'processed_successfully': 0,
            'start_time': None,
            'end_time': None
        }

        logger.debug("BatchProcessor initialized")

    def find_frames(self, directory: PathLike, suffix: str) -> List[Path]:
        """
        Find all frames with the given suffix, sorted by filename.

        Args:
            directory: Directory to search
            suffix: File suffix, case-insensitive

        Returns:
            Sorted list of frame paths
        """
        directory = Path(directory)
        if not directory.is_dir():
            raise FramePairingError(f"directory not found: {directory}")

        frames = sorted(
            (path for path in directory.iterdir() if path.is_file() and path.suffix.lower() == suffix),
            key=lambda path: path.name,
        )
        logger.info(f"Found {len(frames)} {suffix} frames in {directory}")
        return frames

    def pair_frames(self, rgb_dir: PathLike, thermal_dir: PathLike) -> List[Tuple[Path, Path]]:
        """
        Pair RGB and thermal frames by sorted filename order.

        Raises:
            FramePairingError: no frames at all, or unequal counts
        """
        rgb_frames = self.find_frames(rgb_dir, RGB_SUFFIX)
        thermal_frames = self.find_frames(thermal_dir, THERMAL_SUFFIX)

        if not rgb_frames and not thermal_frames:
            raise FramePairingError("no frames")
        if len(rgb_frames) != len(thermal_frames):
            raise FramePairingError(
                f"unpaired frames: {len(rgb_frames)} RGB vs {len(thermal_frames)} thermal"
            )
        return list(zip(rgb_frames, thermal_frames))

    @staticmethod
    def output_paths(out_dir: Path, stem: str) -> Dict[str, Path]:
        """Output file names for one frame."""
        return {
            'fused': out_dir / f"{stem}_fused.ppm",
            'lhat': out_dir / f"{stem}_lhat.pgm",
            'lhat_inferno': out_dir / f"{stem}_lhat_inferno.ppm",
        }

    def process_pair(self, rgb_path: Path, thermal_path: Path, out_dir: Path,
                     executor: ThreadPoolExecutor) -> float:
        """
        Fuse one frame pair and write its three outputs.

        Args:
            rgb_path: Visible frame
            thermal_path: Thermal frame
            out_dir: Output directory
            executor: Pool for the output writes

        Returns:
            Fusion wall-clock time in milliseconds (reads and writes excluded)
        """
        rgb = read_rgb(rgb_path)
        thermal = read_thermal(thermal_path)
        self.fusion.check_frame_size(rgb, rgb_path.name)

        start_time = time.perf_counter()
        fused, l_hat = self.fusion.process(rgb, thermal)
        fuse_seconds = time.perf_counter() - start_time

        paths = self.output_paths(out_dir, rgb_path.stem)
        futures = [
            executor.submit(write_rgb, paths['fused'], fused),
            executor.submit(write_gray, paths['lhat'], l_hat),
            executor.submit(lambda: write_rgb(paths['lhat_inferno'], render_inferno(l_hat, 0.0, 1.0))),
        ]
        for future in futures:
            future.result()

        log_performance('batch_processor', 'fuse_frame', fuse_seconds, file=rgb_path.name)
        frame_logger = get_logger(__name__, component="batch_processor", frame=rgb_path.stem)
        frame_logger.debug(f"Fused with {thermal_path.name}", extra={"processing_time": fuse_seconds})
        return fuse_seconds * 1000.0

    def process_directories(self, rgb_dir: PathLike, thermal_dir: PathLike,
                            out_dir: PathLike) -> Dict[str, Any]:
        """
        Fuse every frame pair of two directories.

        Args:
            rgb_dir: Directory of P6 visible frames
            thermal_dir: Directory of 16-bit P5 thermal frames
            out_dir: Output directory (created if missing)

        Returns:
            Processing statistics
        """
        pairs = self.pair_frames(rgb_dir, thermal_dir)
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)

        self.stats['total_frames'] = len(pairs)
        self.stats['start_time'] = time.time()
        self.fusion.reset()

        workers = self.settings.NFS_THREADS
        logger.info(f"[START] Fusing {len(pairs)} frame pairs with {workers} writer threads")

        timings = []
        with ThreadPoolExecutor(max_workers=workers) as executor:
            iterator = tqdm(pairs, desc="Fusing", unit="frame", disable=not self.show_progress)
            for idx, (rgb_path, thermal_path) in enumerate(iterator):
                fuse_ms = self.process_pair(rgb_path, thermal_path, out_dir, executor)
                timings.append({'frame': idx, 'fuse_ms': fuse_ms})
                self.stats['processed_successfully'] += 1

        self.write_timing(out_dir / TIMING_FILENAME, timings)

        self.stats['end_time'] = time.time()
        total_time = self.stats['end_time'] - self.stats['start_time']

        # Final summary
        logger.info(f"Total frames: {self.stats['total_frames']}")
        logger.info(f"Total processing time: {total_time:.2f}s")
        if timings:
            mean_ms = sum(row['fuse_ms'] for row in timings) / len(timings)
            logger.info(f"Average fusion time per frame: {mean_ms:.1f}ms")

        return self.stats

    @staticmethod
    def write_timing(path: Path, timings: List[Dict[str, Any]]) -> None:
        """Write the `frame,fuse_ms` timing CSV."""
        frame = pd.DataFrame(timings, columns=['frame', 'fuse_ms'])
        frame.to_csv(path, index=False, float_format='%.6g', lineterminator='\n')
        logger.info(f"Timing written to {path}")
