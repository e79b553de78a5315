#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
JSON experiment-config loader.

One JSON object with one object per section (fusion, gains, servo, sim,
motion, detector). Absent keys take defaults; unknown keys are errors.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

from pydantic import ValidationError

from src.data.models import AppConfig
from src.utils.errors import ConfigError

logger = logging.getLogger(__name__)


def _describe_validation_error(exc: ValidationError) -> str:
    """Render pydantic errors as 'section.key: message' lines."""
    parts = []
    for error in exc.errors():
        location = ".".join(str(item) for item in error.get("loc", ())) or "<root>"
        if error.get("type") == "extra_forbidden":
            parts.append(f"unknown key '{location}'")
        else:
            parts.append(f"{location}: {error.get('msg')}")
    return "; ".join(parts)


def parse_app_config(document: Dict[str, Any]) -> AppConfig:
    """
    Validate a decoded config document.

    Args:
        document: Decoded JSON object

    Returns:
        Validated AppConfig

    Raises:
        ConfigError: naming every offending key
    """
    if not isinstance(document, dict):
        raise ConfigError("config root must be a JSON object")
    try:
        return AppConfig.model_validate(document)
    except ValidationError as e:
        raise ConfigError(_describe_validation_error(e)) from e


def load_app_config(config_path: Optional[Union[str, Path]] = None) -> AppConfig:
    """
    Load the experiment config; None yields the all-defaults config.

    Args:
        config_path: Path to a JSON config file

    Returns:
        Validated AppConfig
    """
    if config_path is None:
        logger.debug("No config file given, using defaults")
        return AppConfig()

    path = Path(config_path)
    try:
        with open(path, 'r', encoding='utf-8') as f:
            document = json.load(f)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except json.JSONDecodeError as e:
        raise ConfigError(f"invalid JSON in {path}: line {e.lineno}: {e.msg}")

    config = parse_app_config(document)
    logger.info(f"Loaded config from {path}")
    return config
