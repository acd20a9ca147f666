"""Throttle + PID outputs -> actuator commands for a Y-frame tricopter.

Two fixed front rotors take the roll differential and half of the pitch
correction each; the tail rotor takes the other half of pitch (keeping total
thrust neutral) and its servo tilt carries all of yaw. PWM channels saturate
to the configured range and the servo to its mechanical limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

PWM_MIN = 1000.0
PWM_MAX = 2000.0


@dataclass(frozen=True)
class MixerConfig:
    pitch_gain_front: float = 0.5
    pitch_gain_tail: float = 1.0
    servo_gain: float = 0.1  # degrees of tail tilt per output unit
    pwm_min: float = PWM_MIN
    pwm_max: float = PWM_MAX
    servo_limit: float = 45.0

    def __post_init__(self) -> None:
        for name in ("pitch_gain_front", "pitch_gain_tail", "servo_gain"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if not self.pwm_min < self.pwm_max:
            raise ValueError(
                f"pwm_min must be < pwm_max, got {self.pwm_min} >= {self.pwm_max}"
            )
        if not (math.isfinite(self.servo_limit) and self.servo_limit >= 0.0):
            raise ValueError(f"servo_limit must be >= 0, got {self.servo_limit}")


@dataclass(frozen=True)
class ActuatorCommand:
    """PWM pulse widths [us] for the three rotors plus tail-servo angle [deg]."""

    pwm_front_left: float
    pwm_front_right: float
    pwm_tail: float
    servo_angle: float


def _clamp(value: float, lo: float, hi: float) -> float:
    return min(max(value, lo), hi)


def saturate_command(cmd: ActuatorCommand, cfg: MixerConfig) -> ActuatorCommand:
    """Clamp PWM channels to [pwm_min, pwm_max] and the servo to its limit."""
    return ActuatorCommand(
        pwm_front_left=_clamp(cmd.pwm_front_left, cfg.pwm_min, cfg.pwm_max),
        pwm_front_right=_clamp(cmd.pwm_front_right, cfg.pwm_min, cfg.pwm_max),
        pwm_tail=_clamp(cmd.pwm_tail, cfg.pwm_min, cfg.pwm_max),
        servo_angle=_clamp(cmd.servo_angle, -cfg.servo_limit, cfg.servo_limit),
    )


def mix(
    throttle: float,
    roll_out: float,
    pitch_out: float,
    yaw_out: float,
    cfg: MixerConfig = MixerConfig(),
) -> ActuatorCommand:
    """Combine throttle with per-axis corrections and saturate.

    front_left  = throttle + roll_out - pitch_gain_front * pitch_out
    front_right = throttle - roll_out - pitch_gain_front * pitch_out
    tail        = throttle + pitch_gain_tail * pitch_out
    servo       = servo_gain * yaw_out
    """
    if not (cfg.pwm_min <= throttle <= cfg.pwm_max):
        raise ValueError(
            f"invalid throttle: {throttle} outside [{cfg.pwm_min}, {cfg.pwm_max}]"
        )
    raw = ActuatorCommand(
        pwm_front_left=throttle + roll_out - cfg.pitch_gain_front * pitch_out,
        pwm_front_right=throttle - roll_out - cfg.pitch_gain_front * pitch_out,
        pwm_tail=throttle + cfg.pitch_gain_tail * pitch_out,
        servo_angle=cfg.servo_gain * yaw_out,
    )
    return saturate_command(raw, cfg)


def pwm_encode(normalized: float) -> float:
    """Map a normalized command in [0, 1] to a pulse width in [1000, 2000] us."""
    if not 0.0 <= normalized <= 1.0:
        raise ValueError(f"normalized command must be within [0, 1], got {normalized}")
    return PWM_MIN + normalized * (PWM_MAX - PWM_MIN)
