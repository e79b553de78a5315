#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Logging Configuration for NightFusion Servo

Logging setup with:
- Environment-specific configurations
- File rotation and size limits
- Context prefixes (component, operation, frame, timing)
- Optional performance log for per-stage timings

Console output goes to stderr: stdout carries command results (reports,
temperature readouts) and must stay parseable.
"""

import os
import sys
import logging
import logging.handlers
from pathlib import Path
from typing import Any, Optional

from config.settings import get_settings


PERFORMANCE_LOGGER = 'nightfusion.performance'


class NightFusionFormatter(logging.Formatter):
    """
    Formatter that prefixes processing context carried on the record.
    """

    def __init__(self, fmt: Optional[str] = None):
        super().__init__(fmt or "%(asctime)s - %(name)s - %(levelname)s - %(message)s")

    def format(self, record: logging.LogRecord) -> str:
        """Format log record with context."""
        context_parts = []

        if hasattr(record, 'component'):
            context_parts.append(f"[{record.component}]")

        if hasattr(record, 'operation'):
            context_parts.append(f"({record.operation})")

        if hasattr(record, 'frame'):
            context_parts.append(f"frame={record.frame}")

        if hasattr(record, 'processing_time'):
            context_parts.append(f"time={record.processing_time * 1000.0:.1f}ms")

        if not context_parts:
            return super().format(record)

        # The record is shared by every handler; prefix a copy.
        prefixed = logging.makeLogRecord(record.__dict__)
        prefixed.msg = f"{' '.join(context_parts)} - {record.getMessage()}"
        prefixed.args = None
        return super().format(prefixed)


class LoggerAdapter(logging.LoggerAdapter):
    """
    Logger adapter that merges adapter context into each call's extra.
    """

    def process(self, msg, kwargs):
        """Add context to log messages."""
        if 'extra' not in kwargs:
            kwargs['extra'] = {}

        kwargs['extra'].update(self.extra)

        return msg, kwargs


def setup_logging(settings: Optional[Any] = None, level: Optional[str] = None) -> None:
    """
    Setup logging configuration based on environment.

    Args:
        settings: Settings object, if None will load from get_settings()
        level: Explicit level overriding settings.LOG_LEVEL (CLI --log-level)
    """
    if settings is None:
        settings = get_settings()

    log_level = getattr(logging, (level or settings.LOG_LEVEL).upper())

    # Clear existing handlers
    root_logger = logging.getLogger()
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    root_logger.setLevel(log_level)

    formatter = NightFusionFormatter(settings.LOG_FORMAT)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(log_level)
    console_handler.setFormatter(formatter)
    root_logger.addHandler(console_handler)

    if settings.LOG_TO_FILE:
        Path(settings.LOGS_PATH).mkdir(parents=True, exist_ok=True)

        log_file = os.path.join(settings.LOGS_PATH, 'nightfusion.log')
        file_handler = logging.handlers.RotatingFileHandler(
            log_file,
            maxBytes=settings.LOG_MAX_BYTES,
            backupCount=settings.LOG_BACKUP_COUNT,
            encoding='utf-8'
        )
        file_handler.setLevel(logging.INFO)  # File always at INFO or above
        file_handler.setFormatter(formatter)
        root_logger.addHandler(file_handler)

        # Error file handler (ERROR and CRITICAL only)
        error_log_file = os.path.join(settings.LOGS_PATH, 'nightfusion_errors.log')
        error_handler = logging.handlers.RotatingFileHandler(
            error_log_file,
            maxBytes=settings.LOG_MAX_BYTES // 2,
            backupCount=settings.LOG_BACKUP_COUNT,
            encoding='utf-8'
        )
        error_handler.setLevel(logging.ERROR)
        error_handler.setFormatter(formatter)
        root_logger.addHandler(error_handler)

    perf_logger = logging.getLogger(PERFORMANCE_LOGGER)
    for handler in perf_logger.handlers[:]:
        perf_logger.removeHandler(handler)
    if settings.ENABLE_PROFILING:
        if settings.LOG_TO_FILE:
            perf_handler: logging.Handler = logging.handlers.RotatingFileHandler(
                os.path.join(settings.LOGS_PATH, 'nightfusion_performance.log'),
                maxBytes=settings.LOG_MAX_BYTES // 4,
                backupCount=3,
                encoding='utf-8'
            )
        else:
            perf_handler = logging.StreamHandler(sys.stderr)
        perf_handler.setLevel(logging.INFO)
        perf_handler.setFormatter(logging.Formatter(
            '%(asctime)s - PERF - %(component)s - %(operation)s - %(processing_time).4fs - %(message)s'
        ))
        perf_logger.addHandler(perf_handler)
        perf_logger.setLevel(logging.INFO)
        perf_logger.propagate = False

    _configure_logger_levels(log_level)

    logger = logging.getLogger(__name__)
    logger.debug(f"Logging configured for environment: {settings.ENVIRONMENT}")


def _configure_logger_levels(log_level: int) -> None:
    """Configure specific logger levels."""
    # Third-party loggers
    logging.getLogger('matplotlib').setLevel(logging.WARNING)
    logging.getLogger('PIL').setLevel(logging.WARNING)

    # Our loggers
    logging.getLogger('src.processing').setLevel(log_level)
    logging.getLogger('src.tracking').setLevel(log_level)
    logging.getLogger('src.imaging').setLevel(log_level)


def get_logger(name: str, component: Optional[str] = None, **context) -> LoggerAdapter:
    """
    Get logger with processing context.

    Args:
        name: Logger name
        component: Component name for context
        **context: Additional context fields

    Returns:
        Logger adapter
    """
    logger = logging.getLogger(name)

    extra = {'component': component or name.split('.')[-1]}
    extra.update(context)

    return LoggerAdapter(logger, extra)


def log_performance(component: str, operation: str, processing_time: float, **kwargs) -> None:
    """
    Log a timing to the performance logger (no-op unless ENABLE_PROFILING).

    Args:
        component: Component name
        operation: Operation name
        processing_time: Processing time in seconds
        **kwargs: Additional metrics
    """
    perf_logger = logging.getLogger(PERFORMANCE_LOGGER)
    if not perf_logger.handlers:
        return

    message = " | ".join(f"{key}={value}" for key, value in kwargs.items()) or "Performance metric"

    perf_logger.info(
        message,
        extra={
            'component': component,
            'operation': operation,
            'processing_time': processing_time
        }
    )
