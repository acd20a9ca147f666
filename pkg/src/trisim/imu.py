"""Behavioral gyroscope and accelerometer models sampled from true state.

The gyroscope reports body angular rate plus a constant per-axis bias and
seeded Gaussian white noise; integrating a biased gyro drifts without bound,
which is what the fusion filter has to fix. The accelerometer reports gravity
resolved into body axes plus a sinusoidal motor-vibration term and white
noise, so its tilt angles are exact at rest and noisy under vibration.

All noise is drawn from a single PCG64 stream (``numpy.random.default_rng``)
owned by :class:`ImuSimulator`; the draw order per step is fixed (gyro, then
accel, then any reference-angle channel), so a given seed reproduces the
exact sample sequence bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .angles import wrap_angle

# Fraction of the vibration amplitude coupled into the lateral (x, y) axes;
# the thrust axis (z) sees the full amplitude.
LATERAL_VIBRATION_FACTOR = 0.3

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ImuSample:
    """One IMU reading: angular rates in deg/s, specific force in g-units."""

    t: float
    gyro: tuple[float, float, float]
    accel: tuple[float, float, float]


@dataclass(frozen=True)
class SensorNoiseConfig:
    """Noise parameterization for the simulated IMU.

    gyro_bias          constant rate offset per axis [deg/s]
    gyro_white_sigma   white noise on each rate axis [deg/s, 1 sigma]
    vibration_amp      motor-vibration amplitude on the accelerometer [g]
    vibration_freq     vibration frequency [Hz]
    accel_white_sigma  white noise on each accel axis [g, 1 sigma]
    seed               PRNG seed (PCG64); same seed + config => same stream
    gyro_polarity      mounting sign per axis, +1 or -1
    """

    gyro_bias: tuple[float, float, float] = (0.5, 0.5, 0.5)
    gyro_white_sigma: float = 0.05
    vibration_amp: float = 0.1
    vibration_freq: float = 45.0
    accel_white_sigma: float = 0.002
    seed: int = 42
    gyro_polarity: tuple[int, int, int] = (1, 1, 1)

    def __post_init__(self) -> None:
        object.__setattr__(self, "gyro_bias", tuple(float(b) for b in self.gyro_bias))
        object.__setattr__(self, "gyro_polarity", tuple(int(p) for p in self.gyro_polarity))
        if len(self.gyro_bias) != 3 or not all(math.isfinite(b) for b in self.gyro_bias):
            raise ValueError("gyro_bias must be three finite values")
        for name in ("gyro_white_sigma", "vibration_amp", "vibration_freq", "accel_white_sigma"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0.0):
                raise ValueError(f"{name} must be finite and >= 0, got {value}")
        if not (isinstance(self.seed, int) and self.seed >= 0):
            raise ValueError(f"seed must be a non-negative integer, got {self.seed!r}")
        if len(self.gyro_polarity) != 3 or any(p not in (-1, 1) for p in self.gyro_polarity):
            raise ValueError("gyro_polarity entries must be +1 or -1")

    @classmethod
    def noiseless(cls, seed: int = 0) -> "SensorNoiseConfig":
        """All noise sources disabled; useful for oracle checks."""
        return cls(
            gyro_bias=(0.0, 0.0, 0.0),
            gyro_white_sigma=0.0,
            vibration_amp=0.0,
            vibration_freq=0.0,
            accel_white_sigma=0.0,
            seed=seed,
        )


def gravity_body(roll_deg: float, pitch_deg: float) -> tuple[float, float, float]:
    """Gravity unit vector resolved into body axes for a roll/pitch attitude.

    Uses the yaw-pitch-roll Euler convention; yaw does not affect gravity.
    Level flight gives (0, 0, 1) in g-units.
    """
    phi = math.radians(roll_deg)
    theta = math.radians(pitch_deg)
    return (
        -math.sin(theta),
        math.sin(phi) * math.cos(theta),
        math.cos(phi) * math.cos(theta),
    )


def accel_to_angle(accel: tuple[float, float, float], axis: str) -> float:
    """Tilt angle in degrees from a specific-force vector.

    roll  = atan2(ay, az)
    pitch = atan2(-ax, sqrt(ay^2 + az^2))

    The pitch form is robust under combined roll and pitch but can only
    express pitch in (-90, 90); see :func:`single_axis_inclination` for the
    full-range single-axis variant. Result lies in (-180, 180].
    """
    ax, ay, az = accel
    if ax == 0.0 and ay == 0.0 and az == 0.0:
        raise ValueError("indeterminate inclination: accelerometer vector has zero magnitude")
    if axis == "roll":
        return math.degrees(math.atan2(ay, az))
    if axis == "pitch":
        return math.degrees(math.atan2(-ax, math.hypot(ay, az)))
    raise ValueError(f"axis must be 'roll' or 'pitch', got {axis!r}")


def single_axis_inclination(accel: tuple[float, float, float], axis: str) -> float:
    """Full-range tilt angle assuming rotation about a single axis.

    Valid only when the body is rotated about one axis at a time (the
    angle-hold sweep protocol); unlike :func:`accel_to_angle` the pitch
    channel covers the full (-180, 180] range via atan2(-ax, az).
    """
    ax, ay, az = accel
    if ax == 0.0 and ay == 0.0 and az == 0.0:
        raise ValueError("indeterminate inclination: accelerometer vector has zero magnitude")
    if axis == "roll":
        return math.degrees(math.atan2(ay, az))
    if axis == "pitch":
        return math.degrees(math.atan2(-ax, az))
    raise ValueError(f"axis must be 'roll' or 'pitch', got {axis!r}")


class ImuSimulator:
    """Sensor sampler owning one seeded noise stream.

    Construct one simulator per run; each sampling call advances the stream,
    so call order defines the noise sequence. Two simulators built from the
    same config produce identical outputs.
    """

    def __init__(self, cfg: SensorNoiseConfig):
        self.cfg = cfg
        self._rng = np.random.default_rng(cfg.seed)

    def sample_gyro(self, state, t: float) -> tuple[float, float, float]:
        """Angular rate reading [deg/s]: polarity * true rate + bias + white noise."""
        cfg = self.cfg
        noise = self._rng.standard_normal(3)
        return tuple(
            cfg.gyro_polarity[i] * state.body_rate[i]
            + cfg.gyro_bias[i]
            + cfg.gyro_white_sigma * float(noise[i])
            for i in range(3)
        )

    def sample_accel(self, state, t: float) -> tuple[float, float, float]:
        """Specific-force reading [g]: body-frame gravity + vibration + white noise."""
        cfg = self.cfg
        gx, gy, gz = gravity_body(state.attitude[0], state.attitude[1])
        vib = cfg.vibration_amp * math.sin(_TWO_PI * cfg.vibration_freq * t)
        lat = LATERAL_VIBRATION_FACTOR * vib
        noise = self._rng.standard_normal(3)
        return (
            gx + lat + cfg.accel_white_sigma * float(noise[0]),
            gy + lat + cfg.accel_white_sigma * float(noise[1]),
            gz + vib + cfg.accel_white_sigma * float(noise[2]),
        )

    def sample(self, state, t: float) -> ImuSample:
        """One combined reading; draws gyro first, then accel."""
        gyro = self.sample_gyro(state, t)
        accel = self.sample_accel(state, t)
        return ImuSample(t=t, gyro=gyro, accel=accel)

    def sample_reference_angle(self, true_angle_deg: float, t: float) -> float:
        """Direct angle reference with accelerometer-grade corruption [deg].

        Synthesizes a (sin, cos) component pair for the true angle, applies
        lateral-grade vibration and white noise to each component, and
        recovers the angle via atan2. This is a modeling stand-in used for
        the yaw channel, which gravity sensing cannot observe; it shares the
        accel channels' units and failure modes but is not physics.
        """
        cfg = self.cfg
        vib = LATERAL_VIBRATION_FACTOR * cfg.vibration_amp * math.sin(
            _TWO_PI * cfg.vibration_freq * t
        )
        noise = self._rng.standard_normal(2)
        a = math.radians(true_angle_deg)
        s = math.sin(a) + vib + cfg.accel_white_sigma * float(noise[0])
        c = math.cos(a) + vib + cfg.accel_white_sigma * float(noise[1])
        if s == 0.0 and c == 0.0:
            raise ValueError("indeterminate inclination: reference components have zero magnitude")
        return wrap_angle(math.degrees(math.atan2(s, c)))
