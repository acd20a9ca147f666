"""Single-coefficient complementary attitude filter.

Each axis follows the recursion

    angle <- alpha * (angle + gyro_rate * dt) + (1 - alpha) * acc_angle

run at a fixed sample period. The gyro path integrates short-term dynamics
(high-pass behavior), the accelerometer path corrects long-term drift
(low-pass behavior). Defaults are alpha = 0.93 at 100 Hz (dt = 0.01 s).

The update is implemented as the composition of :func:`integrate_gyro` and
:func:`lowpass_blend`, so the high-pass/low-pass decomposition holds exactly,
not just to rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .angles import axis_index, wrap_angle
from .imu import ImuSample, accel_to_angle


@dataclass(frozen=True)
class FilterConfig:
    """Blend coefficient and sample period for the filter."""

    alpha: float = 0.93
    dt: float = 0.01

    def __post_init__(self) -> None:
        if not (math.isfinite(self.alpha) and 0.0 <= self.alpha <= 1.0):
            raise ValueError(f"alpha must be within [0, 1], got {self.alpha}")
        if not (math.isfinite(self.dt) and self.dt > 0.0):
            raise ValueError(f"dt must be positive, got {self.dt}")


@dataclass(frozen=True)
class AttitudeEstimate:
    """Fused angles in degrees, (roll, pitch, yaw), plus the estimate time."""

    angles: tuple[float, float, float] = (0.0, 0.0, 0.0)
    t: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "angles", tuple(float(a) for a in self.angles))
        if len(self.angles) != 3 or not all(math.isfinite(a) for a in self.angles):
            raise ValueError("angles must be three finite values")

    @property
    def roll(self) -> float:
        return self.angles[0]

    @property
    def pitch(self) -> float:
        return self.angles[1]

    @property
    def yaw(self) -> float:
        return self.angles[2]


def integrate_gyro(angle: float, rate: float, dt: float) -> float:
    """One rectangular integration step: angle + rate * dt, wrapped."""
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    return wrap_angle(angle + rate * dt)


def lowpass_blend(angle: float, acc_angle: float, beta: float) -> float:
    """Convex blend (1 - beta) * angle + beta * acc_angle.

    This is the accelerometer low-pass leg of the filter exposed standalone;
    beta is the accelerometer weight (1 - alpha in the full recursion).
    """
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must be within [0, 1], got {beta}")
    return (1.0 - beta) * angle + beta * acc_angle


def _update_axis(angle: float, gyro_rate: float, acc_angle: float, cfg: FilterConfig) -> float:
    return wrap_angle(
        lowpass_blend(integrate_gyro(angle, gyro_rate, cfg.dt), acc_angle, 1.0 - cfg.alpha)
    )


def complementary_update(
    est: AttitudeEstimate,
    gyro_rate: float,
    acc_angle: float,
    cfg: FilterConfig,
    axis: int | str,
) -> AttitudeEstimate:
    """Advance one axis of the estimate by one sample period.

    The selected axis becomes alpha * (angle + gyro_rate * dt) +
    (1 - alpha) * acc_angle, wrapped to (-180, 180]; other axes are
    untouched and t advances by dt.
    """
    if not (math.isfinite(gyro_rate) and math.isfinite(acc_angle)):
        raise ValueError(f"invalid sample: gyro_rate={gyro_rate}, acc_angle={acc_angle}")
    i = axis_index(axis)
    updated = _update_axis(est.angles[i], gyro_rate, acc_angle, cfg)
    angles = est.angles[:i] + (updated,) + est.angles[i + 1 :]
    return AttitudeEstimate(angles=angles, t=est.t + cfg.dt)


def complementary_update_all(
    est: AttitudeEstimate,
    gyro_rates: Sequence[float],
    acc_angles: Sequence[float],
    cfg: FilterConfig,
) -> AttitudeEstimate:
    """Advance all three axes with one sample period (t advances by dt once)."""
    if not all(math.isfinite(v) for v in (*gyro_rates, *acc_angles)):
        raise ValueError("invalid sample: non-finite gyro rate or accel angle")
    angles = tuple(
        _update_axis(est.angles[i], gyro_rates[i], acc_angles[i], cfg) for i in range(3)
    )
    return AttitudeEstimate(angles=angles, t=est.t + cfg.dt)


def batch_estimate(
    samples: Iterable[ImuSample],
    cfg: FilterConfig,
    initial: AttitudeEstimate,
) -> list[AttitudeEstimate]:
    """Run the filter over a uniformly sampled IMU sequence.

    Roll and pitch blend the gyro with accelerometer tilt angles; yaw has no
    accelerometer observation here and integrates the gyro only. Samples must
    be time-ordered with spacing within 10% of cfg.dt. Output element k is
    the estimate after consuming sample k.
    """
    estimates: list[AttitudeEstimate] = []
    est = initial
    prev_t: float | None = None
    for sample in samples:
        if prev_t is not None:
            spacing = sample.t - prev_t
            if spacing <= 0.0 or abs(spacing - cfg.dt) > 0.1 * cfg.dt:
                raise ValueError(
                    f"non-monotonic input: spacing {spacing} at t={sample.t} "
                    f"(expected {cfg.dt} within 10%)"
                )
        prev_t = sample.t
        acc_roll = accel_to_angle(sample.accel, "roll")
        acc_pitch = accel_to_angle(sample.accel, "pitch")
        angles = (
            _update_axis(est.angles[0], sample.gyro[0], acc_roll, cfg),
            _update_axis(est.angles[1], sample.gyro[1], acc_pitch, cfg),
            integrate_gyro(est.angles[2], sample.gyro[2], cfg.dt),
        )
        est = AttitudeEstimate(angles=angles, t=est.t + cfg.dt)
        estimates.append(est)
    return estimates
