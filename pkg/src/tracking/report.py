#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tracking report rendering and series export.

The human table has one row per metric and one column per trial:

    Metric              run_a
    FPS                 15.0 ± 0.0
    Latency [ms]        69.0 ± 8.1 (67.1)
    Detection rate [%]  25.5
    |e_t| [px]          70.0 ± 3.0 (15.5)
    |e_t| [deg]         6.56 ± 0.28 (1.45)

Missing statistics print as "n/a", never 0. Below the table, each trial
gets a `trial=<name>` line followed by `key=value` lines.
"""

import logging
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from tabulate import tabulate

from src.data.models import CameraGeometry, TrackRecord
from src.tracking.metrics import TrackStats, abs_error_histogram, derived_series

logger = logging.getLogger(__name__)

NOT_AVAILABLE = 'n/a'

# key=value names, in output order, mapped to TrackStats fields
REPORT_KEYS: List[Tuple[str, str]] = [
    ('n_frames', 'n_frames'),
    ('n_detected', 'n_detected'),
    ('detection_rate_pct', 'detection_rate'),
    ('fps_mean', 'fps_mean'),
    ('fps_std', 'fps_std'),
    ('latency_mean_ms', 'latency_mean'),
    ('latency_std_ms', 'latency_std'),
    ('latency_median_ms', 'latency_median'),
    ('mean_abs_e_px', 'mean_abs_e'),
    ('std_abs_e_px', 'std_abs_e'),
    ('median_abs_e_px', 'median_abs_e'),
    ('iqr_abs_e_px', 'iqr_abs_e'),
    ('mean_abs_e_deg', 'mean_abs_e_deg'),
    ('std_abs_e_deg', 'std_abs_e_deg'),
    ('median_abs_e_deg', 'median_abs_e_deg'),
    ('iqr_abs_e_deg', 'iqr_abs_e_deg'),
]

PathLike = Union[str, Path]


def _spread(mean: Optional[float], std: Optional[float], median: Optional[float] = None,
            decimals: int = 1) -> str:
    """'mean ± std (median)', or n/a when the statistic is missing."""
    if mean is None or std is None:
        return NOT_AVAILABLE
    text = f"{mean:.{decimals}f} ± {std:.{decimals}f}"
    if median is not None:
        text += f" ({median:.{decimals}f})"
    return text


def table_column(stats: TrackStats) -> List[str]:
    """One trial's cells, in table row order."""
    return [
        _spread(stats.fps_mean, stats.fps_std),
        _spread(stats.latency_mean, stats.latency_std, stats.latency_median),
        f"{stats.detection_rate:.1f}",
        _spread(stats.mean_abs_e, stats.std_abs_e, stats.median_abs_e),
        _spread(stats.mean_abs_e_deg, stats.std_abs_e_deg, stats.median_abs_e_deg, decimals=2),
    ]


def key_value_lines(stats: TrackStats) -> List[str]:
    """Machine-readable `key=value` lines; numbers use 6 significant digits."""
    values = stats.to_dict()
    lines = []
    for key, field in REPORT_KEYS:
        value = values[field]
        if value is None:
            text = NOT_AVAILABLE
        elif isinstance(value, int):
            text = str(value)
        else:
            text = f"{value:.6g}"
        lines.append(f"{key}={text}")
    return lines


def render_report(named_stats: Sequence[Tuple[str, TrackStats]]) -> str:
    """
    Render the report for one or more trials.

    Args:
        named_stats: (trial name, stats) pairs, in column order

    Returns:
        Report text ending with a newline
    """
    if not named_stats:
        raise ValueError("no trials to report")

    metric_names = ['FPS', 'Latency [ms]', 'Detection rate [%]', '|e_t| [px]', '|e_t| [deg]']
    columns = [table_column(stats) for _, stats in named_stats]
    rows = [[metric] + [column[idx] for column in columns] for idx, metric in enumerate(metric_names)]
    table = tabulate(
        rows,
        headers=['Metric'] + [name for name, _ in named_stats],
        tablefmt='plain',
        disable_numparse=True,
    )

    blocks = [table]
    for name, stats in named_stats:
        blocks.append('\n'.join([f"trial={name}"] + key_value_lines(stats)))
    return '\n\n'.join(blocks) + '\n'


def export_series(out_dir: PathLike, name: str, trace: Iterable[TrackRecord], geom: CameraGeometry,
                  bin_px: float = 5.0) -> Dict[str, Path]:
    """
    Write `<name>_series.csv` and `<name>_hist.csv`; missing samples are empty fields.

    Returns:
        Paths written, keyed by 'series' and 'histogram'
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    records = list(trace)

    paths = {
        'series': out_dir / f"{name}_series.csv",
        'histogram': out_dir / f"{name}_hist.csv",
    }
    derived_series(records, geom).to_csv(
        paths['series'], index=False, na_rep='', float_format='%.6g', lineterminator='\n'
    )
    abs_error_histogram(records, bin_px).to_csv(
        paths['histogram'], index=False, float_format='%.6g', lineterminator='\n'
    )
    logger.info(f"Derived series for {name} written to {out_dir}")
    return paths
