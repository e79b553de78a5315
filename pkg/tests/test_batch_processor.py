#!/usr/bin/env python3
"""
Tests for frame pairing and the directory fusion workflow.
"""

import pytest

from src.processing import batch_processor as batch_module
from src.processing.batch_processor import TIMING_FILENAME, BatchProcessor
from src.utils.errors import FramePairingError


class TestPairing:

    def test_pairs_by_sorted_name(self, frame_dirs):
        rgb_dir, thermal_dir = frame_dirs
        pairs = BatchProcessor().pair_frames(rgb_dir, thermal_dir)
        assert [(r.name, t.name) for r, t in pairs] == [
            ("frame_000.ppm", "frame_000.pgm"),
            ("frame_001.ppm", "frame_001.pgm"),
        ]

    def test_ignores_other_files(self, frame_dirs):
        rgb_dir, thermal_dir = frame_dirs
        (rgb_dir / "notes.txt").write_text("x")
        assert len(BatchProcessor().pair_frames(rgb_dir, thermal_dir)) == 2

    def test_missing_directory(self, tmp_path):
        with pytest.raises(FramePairingError, match="directory not found"):
            BatchProcessor().find_frames(tmp_path / "nope", ".ppm")

    def test_mismatch_is_an_error(self, frame_dirs):
        rgb_dir, thermal_dir = frame_dirs
        (rgb_dir / "frame_000.ppm").unlink()
        with pytest.raises(FramePairingError, match="1 RGB vs 2 thermal"):
            BatchProcessor().pair_frames(rgb_dir, thermal_dir)


class TestProcessDirectories:

    def test_stats_and_outputs(self, frame_dirs, tmp_path):
        rgb_dir, thermal_dir = frame_dirs
        processor = BatchProcessor()
        stats = processor.process_directories(rgb_dir, thermal_dir, tmp_path / "out")
        assert stats['total_frames'] == 2 and stats['processed_successfully'] == 2
        for stem in ("frame_000", "frame_001"):
            for path in BatchProcessor.output_paths(tmp_path / "out", stem).values():
                assert path.is_file()
        assert (tmp_path / "out" / TIMING_FILENAME).is_file()

    def test_thread_cap_from_settings(self, frame_dirs, tmp_path, monkeypatch, mocker):
        rgb_dir, thermal_dir = frame_dirs
        monkeypatch.setenv("NFS_THREADS", "1")
        spy = mocker.spy(batch_module, "ThreadPoolExecutor")
        BatchProcessor().process_directories(rgb_dir, thermal_dir, tmp_path / "out")
        assert spy.call_args.kwargs["max_workers"] == 1

    def test_stream_state_reset_between_runs(self, frame_dirs, tmp_path):
        rgb_dir, thermal_dir = frame_dirs
        processor = BatchProcessor()
        processor.process_directories(rgb_dir, thermal_dir, tmp_path / "a")
        processor.process_directories(rgb_dir, thermal_dir, tmp_path / "b")
        for name in ("frame_000_fused.ppm", "frame_001_lhat.pgm"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_fusion_called_in_index_order(self, frame_dirs, tmp_path, mocker):
        rgb_dir, thermal_dir = frame_dirs
        processor = BatchProcessor()
        spy = mocker.spy(processor.fusion, "process")
        processor.process_directories(rgb_dir, thermal_dir, tmp_path / "out")
        assert spy.call_count == 2
        assert processor.fusion.state.frame_index == 2
