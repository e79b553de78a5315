#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Trace and detections CSV codecs.

Trace CSV:
    frame,t_ms,detected,e_px,theta_deg,latency_ms
detected is 0/1, e_px is an empty field on a miss, floats use 6
significant digits, LF line endings, no trailing comma.

Detections CSV (external detector output replayed through the servo):
    frame,t_ms,x_px[,latency_ms]
An empty x_px marks a miss.

Parse errors raise TraceFormatError carrying the 1-based line number.
"""

import csv
import logging
import math
from pathlib import Path
from typing import Iterable, List, NamedTuple, Optional, Union

from pydantic import ValidationError

from src.data.models import TrackRecord
from src.tracking.simulator import TrackTrace
from src.utils.errors import TraceFormatError

logger = logging.getLogger(__name__)

TRACE_HEADER = ['frame', 't_ms', 'detected', 'e_px', 'theta_deg', 'latency_ms']
DETECTIONS_HEADER = ['frame', 't_ms', 'x_px']
DETECTIONS_LATENCY_COLUMN = 'latency_ms'

PathLike = Union[str, Path]


class Detection(NamedTuple):
    """One row of a detections CSV."""
    frame: int
    t_ms: float
    x_px: Optional[float]
    latency_ms: Optional[float]


def format_float(value: float) -> str:
    """Six significant digits, as written in every CSV field."""
    return f"{value:.6g}"


def format_trace_row(record: TrackRecord) -> str:
    fields = [
        str(record.frame),
        format_float(record.t_ms),
        '1' if record.detected else '0',
        format_float(record.e_px) if record.detected else '',
        format_float(record.theta_deg),
        format_float(record.latency_ms),
    ]
    return ','.join(fields)


def write_trace(path: PathLike, trace: Iterable[TrackRecord]) -> int:
    """
    Write a trace CSV.

    Returns:
        Number of records written
    """
    lines = [','.join(TRACE_HEADER)]
    lines.extend(format_trace_row(record) for record in trace)
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write('\n'.join(lines) + '\n')
    logger.info(f"Wrote {len(lines) - 1} trace records to {path}")
    return len(lines) - 1


def _parse_int(text: str, name: str, line: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise TraceFormatError(f"{name} must be an integer, got {text!r}", line)


def _parse_float(text: str, name: str, line: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise TraceFormatError(f"{name} must be a number, got {text!r}", line)
    if not math.isfinite(value):
        raise TraceFormatError(f"{name} must be finite, got {text!r}", line)
    return value


def _rows(path: PathLike):
    """Yield (line number, fields), skipping blank lines."""
    try:
        with open(path, 'r', encoding='utf-8', newline='') as f:
            reader = csv.reader(f)
            for fields in reader:
                if not fields or (len(fields) == 1 and not fields[0].strip()):
                    continue
                yield reader.line_num, fields
    except OSError as e:
        raise TraceFormatError(f"cannot read {path}: {e.strerror or e}")


def read_trace(path: PathLike) -> TrackTrace:
    """
    Read a trace CSV written by write_trace.

    Raises:
        TraceFormatError: bad header, field count, value, or a timestamp
            that does not increase
    """
    rows = _rows(path)
    first = next(rows, None)
    if first is None:
        raise TraceFormatError("empty file", 1)
    line, header = first
    if header != TRACE_HEADER:
        raise TraceFormatError(f"expected header {','.join(TRACE_HEADER)}", line)

    records: List[TrackRecord] = []
    for line, fields in rows:
        if len(fields) != len(TRACE_HEADER):
            raise TraceFormatError(f"expected {len(TRACE_HEADER)} fields, got {len(fields)}", line)
        frame_text, t_text, detected_text, e_text, theta_text, latency_text = fields
        if detected_text not in ('0', '1'):
            raise TraceFormatError(f"detected must be 0 or 1, got {detected_text!r}", line)
        detected = detected_text == '1'
        if detected and e_text == '':
            raise TraceFormatError("detected frame has an empty e_px", line)
        if not detected and e_text != '':
            raise TraceFormatError("missed frame must leave e_px empty", line)

        try:
            record = TrackRecord(
                frame=_parse_int(frame_text, 'frame', line),
                t_ms=_parse_float(t_text, 't_ms', line),
                detected=detected,
                e_px=_parse_float(e_text, 'e_px', line) if detected else None,
                theta_deg=_parse_float(theta_text, 'theta_deg', line),
                latency_ms=_parse_float(latency_text, 'latency_ms', line),
            )
        except ValidationError as e:
            message = "; ".join(f"{'.'.join(map(str, err['loc'])) or 'record'}: {err['msg']}" for err in e.errors())
            raise TraceFormatError(message, line) from e

        if records and record.t_ms <= records[-1].t_ms:
            raise TraceFormatError("t_ms must be strictly increasing", line)
        records.append(record)

    if not records:
        raise TraceFormatError("trace has no records", line)
    logger.debug(f"Read {len(records)} trace records from {path}")
    return TrackTrace.from_records(records)


def read_detections(path: PathLike) -> List[Detection]:
    """
    Read a detections CSV.

    Raises:
        TraceFormatError: bad header, field count or value
    """
    rows = _rows(path)
    first = next(rows, None)
    if first is None:
        raise TraceFormatError("empty file", 1)
    line, header = first
    has_latency = header == DETECTIONS_HEADER + [DETECTIONS_LATENCY_COLUMN]
    if header != DETECTIONS_HEADER and not has_latency:
        raise TraceFormatError(
            f"expected header {','.join(DETECTIONS_HEADER)}[,{DETECTIONS_LATENCY_COLUMN}]", line
        )

    detections: List[Detection] = []
    for line, fields in rows:
        if len(fields) != len(header):
            raise TraceFormatError(f"expected {len(header)} fields, got {len(fields)}", line)
        frame = _parse_int(fields[0], 'frame', line)
        if frame < 0:
            raise TraceFormatError(f"frame must be >= 0, got {frame}", line)
        t_ms = _parse_float(fields[1], 't_ms', line)
        if detections and t_ms <= detections[-1].t_ms:
            raise TraceFormatError("t_ms must be strictly increasing", line)
        x_px = _parse_float(fields[2], 'x_px', line) if fields[2] != '' else None
        latency = None
        if has_latency:
            latency = _parse_float(fields[3], 'latency_ms', line)
            if latency < 0:
                raise TraceFormatError(f"latency_ms must be >= 0, got {fields[3]}", line)
        detections.append(Detection(frame, t_ms, x_px, latency))

    if not detections:
        raise TraceFormatError("no detection rows", line)
    return detections
