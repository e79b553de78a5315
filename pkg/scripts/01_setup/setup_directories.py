#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Directory Setup Script for NightFusion Servo

Creates the working directories, a sample .env file and a short synthetic
RGB/thermal sequence so `main.py fuse` can be tried right away.
"""

import sys
from pathlib import Path
from typing import List

import numpy as np

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from src.imaging.core import RgbImage, ThermalFrame  # noqa: E402
from src.imaging.netpbm import write_rgb, write_thermal  # noqa: E402

SAMPLE_FRAMES = 8
RGB_SIZE = (160, 120)
THERMAL_SIZE = (80, 60)


def create_directory_structure() -> None:
    """Create all required directories for NightFusion Servo."""

    print("📁 Setting up NightFusion Servo Directory Structure")
    print("=" * 65)

    directories: List[str] = [
        "data/rgb",             # Visible frames (P6)
        "data/thermal",         # Radiometric frames (16-bit P5)
        "data/fused",           # Fusion outputs
        "data/traces",          # Simulator and replay traces
        "logs",                 # Application logs
    ]

    created_dirs = []
    existing_dirs = []

    for directory in directories:
        dir_path = Path(directory)

        if dir_path.exists():
            existing_dirs.append(directory)
            print(f"   ✅ Already exists: {directory}")
        else:
            try:
                dir_path.mkdir(parents=True, exist_ok=True)
                created_dirs.append(directory)
                print(f"   🆕 Created: {directory}")
            except OSError as e:
                print(f"   ❌ Failed to create {directory}: {e}")

    print(f"\n" + "=" * 65)
    print(f"📊 DIRECTORY SETUP SUMMARY")
    print(f"   🆕 Created: {len(created_dirs)} directories")
    print(f"   ✅ Existing: {len(existing_dirs)} directories")
    print(f"   📁 Total: {len(directories)} directories")


def create_sample_env_file() -> None:
    """Create a sample .env file if it doesn't exist."""
    env_path = Path(".env")

    if env_path.exists():
        print(f"\n⚙️  Environment file already exists: {env_path}")
        return

    print(f"\n⚙️  Creating sample environment file...")

    env_content = """# NightFusion Servo - Environment Configuration

# Environment (dev, test, prod)
ENVIRONMENT=dev
DEBUG=True

# Experiment config used when --config is not given
DEFAULT_CONFIG_PATH=config/default_config.json

# Worker threads for output writes (default: CPU count)
# NFS_THREADS=4

# Logging Configuration
LOGS_PATH=logs
LOG_LEVEL=INFO
LOG_TO_FILE=True
LOG_MAX_BYTES=10485760
LOG_BACKUP_COUNT=5

# Per-stage fusion timings in logs/nightfusion_performance.log
ENABLE_PROFILING=False
"""

    try:
        with open(env_path, 'w', encoding='utf-8') as f:
            f.write(env_content)
        print(f"   ✅ Created: {env_path}")
    except OSError as e:
        print(f"   ❌ Failed to create {env_path}: {e}")


def synthetic_pair(index: int, rng: np.random.Generator):
    """
    One dark RGB frame and a thermal frame with a warm blob drifting right.

    Returns:
        (RgbImage, ThermalFrame)
    """
    width, height = RGB_SIZE
    yy, xx = np.mgrid[0:height, 0:width].astype(np.float64)
    base = 0.04 + 0.06 * (yy / (height - 1))
    rgb = np.stack([base * 0.9, base, base * 1.2], axis=-1)
    rgb += rng.normal(0.0, 0.01, size=rgb.shape)

    t_width, t_height = THERMAL_SIZE
    ty, tx = np.mgrid[0:t_height, 0:t_width].astype(np.float64)
    cx = 20.0 + 4.0 * index
    blob = np.exp(-((tx - cx) ** 2 + (ty - 30.0) ** 2) / 60.0)
    # ambient 15 C, blob peak about 34 C
    counts = 28815 + 1900 * blob + rng.normal(0.0, 5.0, size=blob.shape)
    return RgbImage(np.clip(rgb, 0.0, 1.0)), ThermalFrame(np.clip(np.rint(counts), 0, 65535).astype(np.uint16))


def create_sample_frames(seed: int = 7) -> None:
    """Write SAMPLE_FRAMES synthetic pairs into data/rgb and data/thermal."""
    rgb_dir = Path("data/rgb")
    thermal_dir = Path("data/thermal")

    if any(rgb_dir.glob("*.ppm")) or any(thermal_dir.glob("*.pgm")):
        print(f"\n🖼️  Sample frames already present in {rgb_dir} / {thermal_dir}")
        return

    print(f"\n🖼️  Creating {SAMPLE_FRAMES} synthetic frame pairs...")
    rng = np.random.default_rng(seed)
    for index in range(SAMPLE_FRAMES):
        rgb, thermal = synthetic_pair(index, rng)
        write_rgb(rgb_dir / f"frame_{index:03d}.ppm", rgb)
        write_thermal(thermal_dir / f"frame_{index:03d}.pgm", thermal)
    print(f"   ✅ Frames written (RGB {RGB_SIZE[0]}x{RGB_SIZE[1]}, thermal {THERMAL_SIZE[0]}x{THERMAL_SIZE[1]})")


def main():
    """Main setup function."""
    print("🚀 NightFusion Servo - Initial Setup")
    print("=" * 60)

    create_directory_structure()
    create_sample_env_file()
    create_sample_frames()

    print(f"\n" + "=" * 60)
    print(f"✅ SETUP COMPLETED SUCCESSFULLY!")
    print(f"\n📋 NEXT STEPS:")
    print(f"   1. python main.py fuse --rgb-dir data/rgb --thermal-dir data/thermal --out-dir data/fused")
    print(f"   2. python main.py simulate --trace-out data/traces/sim.csv")
    print(f"   3. python main.py metrics data/traces/sim.csv")


if __name__ == "__main__":
    main()
