"""Discrete per-axis PID controller with anti-windup and output clamping.

P acts on the present error, I on the rectangular-rule error accumulation,
D on the backward difference of the error (not the measurement, so setpoint
steps do kick the derivative; the very first sample after a reset defines
the derivative as zero to avoid an unbounded e/dt spike at startup).

Output units are PWM microsecond offsets applied by the mixer, so the
default clamps (integral authority 250, total 400) keep the controller
inside the 1000-2000 us actuator range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .angles import wrap_angle


@dataclass(frozen=True)
class PidGains:
    """kp [units/deg], ki [units/(deg s)], kd [units/(deg/s)]."""

    kp: float = 1.41
    ki: float = 0.91
    kd: float = 1.31

    def __post_init__(self) -> None:
        for name in ("kp", "ki", "kd"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0.0):
                raise ValueError(f"{name} must be finite and >= 0, got {value}")


@dataclass(frozen=True)
class PidState:
    """Controller memory plus its clamping limits.

    i_limit bounds |ki * integral|; out_limit bounds the total output.
    """

    integral: float = 0.0
    prev_error: float = 0.0
    initialized: bool = False
    i_limit: float = 250.0
    out_limit: float = 400.0

    def __post_init__(self) -> None:
        if not self.i_limit >= 0.0:
            raise ValueError(f"i_limit must be >= 0, got {self.i_limit}")
        if not self.out_limit > 0.0:
            raise ValueError(f"out_limit must be > 0, got {self.out_limit}")


@dataclass(frozen=True)
class Setpoint:
    """Commanded attitude per axis in degrees, each in (-180, 180]."""

    roll: float = 0.0
    pitch: float = 0.0
    yaw: float = 0.0

    def __post_init__(self) -> None:
        for name in ("roll", "pitch", "yaw"):
            value = getattr(self, name)
            if not (math.isfinite(value) and -180.0 < value <= 180.0):
                raise ValueError(f"setpoint {name} must be finite in (-180, 180], got {value}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.roll, self.pitch, self.yaw)


def compute_error(setpoint: float, measured: float) -> float:
    """Shortest signed angular error setpoint - measured, in (-180, 180]."""
    if not (math.isfinite(setpoint) and math.isfinite(measured)):
        raise ValueError(f"invalid error input: setpoint={setpoint}, measured={measured}")
    return wrap_angle(setpoint - measured)


def pid_step(
    state: PidState, gains: PidGains, error: float, dt: float
) -> tuple[float, PidState]:
    """One controller update; returns (output, new state).

    The integral accumulates error * dt and is clamped so |ki * integral|
    never exceeds i_limit; the summed output is clamped to +/- out_limit.
    """
    if not math.isfinite(error):
        raise ValueError(f"invalid error input: {error}")
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")

    p = gains.kp * error

    integral = state.integral + error * dt
    if gains.ki > 0.0:
        bound = state.i_limit / gains.ki
        integral = min(max(integral, -bound), bound)
    i = gains.ki * integral

    if state.initialized:
        d = gains.kd * (error - state.prev_error) / dt
    else:
        d = 0.0  # prev_error is effectively seeded with the current error

    output = min(max(p + i + d, -state.out_limit), state.out_limit)
    new_state = replace(state, integral=integral, prev_error=error, initialized=True)
    return output, new_state


def pid_reset(state: PidState) -> PidState:
    """Zero the accumulators, keeping the configured limits."""
    return replace(state, integral=0.0, prev_error=0.0, initialized=False)
