"""Trace rows and their fixed CSV schema.

One row per control step, 23 columns, 6-decimal fixed formatting, '\\n' line
endings. Identical rows serialize to byte-identical files.
"""

from __future__ import annotations

import os
from dataclasses import astuple, dataclass, fields
from typing import IO, Iterable

CSV_COLUMNS = (
    "t",
    "true_roll",
    "true_pitch",
    "true_yaw",
    "gyro_x",
    "gyro_y",
    "gyro_z",
    "acc_roll",
    "acc_pitch",
    "acc_yaw",
    "est_roll",
    "est_pitch",
    "est_yaw",
    "err_roll",
    "err_pitch",
    "err_yaw",
    "pid_roll",
    "pid_pitch",
    "pid_yaw",
    "pwm_fl",
    "pwm_fr",
    "pwm_tail",
    "servo_deg",
)

CSV_HEADER = ",".join(CSV_COLUMNS)


@dataclass(frozen=True)
class TraceRow:
    t: float
    true_roll: float
    true_pitch: float
    true_yaw: float
    gyro_x: float
    gyro_y: float
    gyro_z: float
    acc_roll: float
    acc_pitch: float
    acc_yaw: float
    est_roll: float
    est_pitch: float
    est_yaw: float
    err_roll: float
    err_pitch: float
    err_yaw: float
    pid_roll: float
    pid_pitch: float
    pid_yaw: float
    pwm_fl: float
    pwm_fr: float
    pwm_tail: float
    servo_deg: float


assert tuple(f.name for f in fields(TraceRow)) == CSV_COLUMNS


def format_row(row: TraceRow) -> str:
    return ",".join(f"{value:.6f}" for value in astuple(row))


def emit_csv(rows: Iterable[TraceRow], destination: str | os.PathLike | IO[bytes]) -> int:
    """Write header plus one line per row; returns the byte count written."""
    lines = [CSV_HEADER]
    lines.extend(format_row(row) for row in rows)
    data = ("\n".join(lines) + "\n").encode("ascii")
    if hasattr(destination, "write"):
        destination.write(data)
    else:
        with open(destination, "wb") as handle:
            handle.write(data)
    return len(data)


def read_csv(source: str | os.PathLike) -> list[TraceRow]:
    """Load a trace written by :func:`emit_csv`."""
    with open(source, "r", encoding="ascii", newline="") as handle:
        header = handle.readline().strip()
        if header != CSV_HEADER:
            raise ValueError(f"unexpected trace header: {header!r}")
        rows = []
        for line_no, line in enumerate(handle, start=2):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != len(CSV_COLUMNS):
                raise ValueError(
                    f"line {line_no}: expected {len(CSV_COLUMNS)} columns, got {len(parts)}"
                )
            rows.append(TraceRow(*(float(p) for p in parts)))
    return rows
