#!/usr/bin/env python3
"""
Tests for the JSON experiment config, process settings and logging setup.
"""

import json
import logging

import pytest

from config import settings as settings_module
from config.settings import get_settings
from src.data.config_loader import load_app_config, parse_app_config
from src.data.models import AppConfig, FusionConfig, ServoLimits
from src.utils.errors import ConfigError
from src.utils.logging_config import (
    PERFORMANCE_LOGGER,
    NightFusionFormatter,
    get_logger,
    log_performance,
    setup_logging,
)


class TestAppConfig:

    def test_defaults(self):
        config = load_app_config(None)
        assert config.fusion.gamma == 0.7
        assert config.fusion.ema_a == 0.9
        assert config.geometry.width_px == 640
        assert config.gains.dt == config.sim.dt

    def test_shipped_default_file_matches_defaults(self):
        settings = get_settings()
        assert load_app_config(settings.DEFAULT_CONFIG_PATH) == AppConfig()

    def test_partial_sections(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"fusion": {"beta": 1.2}, "detector": {"seed": 7}}))
        config = load_app_config(path)
        assert config.fusion.beta == 1.2 and config.fusion.alpha == 0.7
        assert config.detector.seed == 7

    def test_control_period_follows_frame_interval(self):
        config = parse_app_config({"sim": {"dt": 0.05}})
        assert config.gains.dt == 0.05
        explicit = parse_app_config({"sim": {"dt": 0.05}, "gains": {"dt": 0.1}})
        assert explicit.gains.dt == 0.1

    @pytest.mark.parametrize("document, key", [
        ({"fusion": {"gama": 0.5}}, "fusion.gama"),
        ({"telemetry": {}}, "telemetry"),
        ({"sim": {"geometry": {"hfov": 60}}}, "sim.geometry.hfov"),
    ])
    def test_unknown_key_is_named(self, document, key):
        with pytest.raises(ConfigError, match=f"unknown key '{key}'"):
            parse_app_config(document)

    @pytest.mark.parametrize("document, key", [
        ({"fusion": {"ema_a": 0.99}}, "fusion.ema_a"),
        ({"detector": {"p_detect": 1.5}}, "detector.p_detect"),
        ({"sim": {"frames": 0}}, "sim.frames"),
        ({"fusion": {"gauss_k": 4}}, "gauss_k"),
        ({"fusion": {"p_low": 60, "p_high": 40}}, "p_low"),
    ])
    def test_invalid_values_name_the_key(self, document, key):
        with pytest.raises(ConfigError, match=key):
            parse_app_config(document)

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{\"fusion\": ")
        with pytest.raises(ConfigError, match="invalid JSON"):
            load_app_config(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="not found"):
            load_app_config(tmp_path / "none.json")

    def test_non_object_root(self):
        with pytest.raises(ConfigError):
            parse_app_config([1, 2])

    def test_sections_are_frozen(self):
        config = FusionConfig()
        with pytest.raises(Exception):
            config.gamma = 1.0

    def test_servo_limits_order(self):
        with pytest.raises(ValueError):
            ServoLimits(theta_min_deg=10.0, theta_max_deg=-10.0)
        with pytest.raises(ValueError):
            ServoLimits(theta_init_deg=120.0)


class TestProcessSettings:

    def test_environment_selection(self, monkeypatch):
        monkeypatch.setenv("ENVIRONMENT", "test")
        assert isinstance(get_settings(), settings_module.TestSettings)
        monkeypatch.setenv("ENVIRONMENT", "dev")
        assert isinstance(get_settings(), settings_module.DevelopmentSettings)

    def test_threads_default_to_cpu_count(self, monkeypatch):
        monkeypatch.delenv("NFS_THREADS", raising=False)
        assert settings_module.TestSettings().NFS_THREADS >= 1

    def test_threads_from_environment(self, monkeypatch):
        monkeypatch.setenv("NFS_THREADS", "3")
        assert settings_module.TestSettings().NFS_THREADS == 3

    @pytest.mark.parametrize("value", ["0", "-2", "many"])
    def test_invalid_threads_rejected(self, monkeypatch, value):
        monkeypatch.setenv("NFS_THREADS", value)
        with pytest.raises(ValueError, match="NFS_THREADS"):
            settings_module.TestSettings()


class TestLogging:

    def test_setup_respects_explicit_level(self):
        setup_logging(settings_module.TestSettings(), level="WARNING")
        root = logging.getLogger()
        assert root.level == logging.WARNING
        assert len(root.handlers) == 1
        setup_logging(settings_module.TestSettings())
        assert logging.getLogger().level == logging.DEBUG

    def test_formatter_prefixes_context(self):
        record = logging.LogRecord("src.x", logging.INFO, __file__, 1, "fused", None, None)
        record.component = "batch_processor"
        record.frame = "frame_000"
        record.processing_time = 0.0125
        text = NightFusionFormatter("%(levelname)s %(message)s").format(record)
        assert text == "INFO [batch_processor] frame=frame_000 time=12.5ms - fused"

    def test_prefix_lands_on_message_matching_level_name(self):
        record = logging.LogRecord("src.x", logging.INFO, __file__, 1, "%s", ("INFO",), None)
        record.component = "fusion"
        text = NightFusionFormatter("%(levelname)s %(name)s %(message)s").format(record)
        assert text == "INFO src.x [fusion] - INFO"
        assert record.getMessage() == "INFO"

    def test_adapter_carries_context(self):
        adapter = get_logger("src.processing.fusion", frame=3)
        _, kwargs = adapter.process("msg", {})
        assert kwargs["extra"] == {"component": "fusion", "frame": 3}

    def test_performance_logging_off_without_profiling(self, mocker):
        setup_logging(settings_module.TestSettings())
        info = mocker.patch.object(logging.getLogger(PERFORMANCE_LOGGER), "info")
        log_performance("fusion", "guided", 0.004, frame=1)
        info.assert_not_called()

    def test_performance_record_carries_timing(self, mocker):
        perf_logger = logging.getLogger(PERFORMANCE_LOGGER)
        handler = logging.NullHandler()
        perf_logger.addHandler(handler)
        try:
            info = mocker.patch.object(perf_logger, "info")
            log_performance("fusion", "guided", 0.004, frame=1)
        finally:
            perf_logger.removeHandler(handler)
        message = info.call_args.args[0]
        extra = info.call_args.kwargs["extra"]
        assert message == "frame=1"
        assert extra == {'component': 'fusion', 'operation': 'guided', 'processing_time': 0.004}
