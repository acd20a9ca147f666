"""Scenario assembly and the flat key=value config format.

A scenario file is plain text: one ``key = value`` per line, ``#`` starts a
comment, blank lines are ignored. Keys are dotted section names, values are
scalars or whitespace-separated vectors. Unknown keys, duplicate keys, and
range violations are rejected with the offending line number. Every key is
optional; an empty file yields the all-defaults scenario (alpha 0.93,
dt 0.01 s, gains 1.41/0.91/1.31 per axis).

Recognized keys::

    name                      scenario label (default "scenario")
    mode                      closed_loop | open_loop_sweep
    duration                  run length [s]
    dt                        control/sample period [s]
    throttle                  hover PWM fed to the mixer [us]
    filter.alpha              complementary blend coefficient in [0, 1]
    noise.gyro_bias           three values [deg/s]
    noise.gyro_white_sigma    [deg/s]
    noise.vibration_amp       [g]
    noise.vibration_freq      [Hz]
    noise.accel_white_sigma   [g]
    noise.seed                non-negative integer
    noise.gyro_polarity       three values, each +1 or -1
    pid.<axis>.kp|ki|kd       per-axis gains, axis in roll|pitch|yaw
    pid.i_limit               integral authority clamp [output units]
    pid.out_limit             total output clamp [output units]
    mixer.pitch_gain_front    dimensionless
    mixer.pitch_gain_tail     dimensionless
    mixer.servo_gain          [deg per output unit]
    mixer.pwm_min             [us]
    mixer.pwm_max             [us]
    mixer.servo_limit         [deg]
    plant.inertia             three values [kg m^2]
    plant.arm_length          [m]
    plant.thrust_coeff        [N/us]
    plant.motor_tau           [s]
    plant.servo_tau           [s]
    plant.disturbance_torque  three values [N m]
    setpoint.<n>              "t roll pitch yaw"; in closed_loop mode the
                              setpoint steps and holds at each entry, in
                              open_loop_sweep mode entries are breakpoints
                              of the piecewise-linear true-attitude profile

"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field, replace

from .fusion import FilterConfig
from .imu import SensorNoiseConfig
from .mixer import MixerConfig
from .pid import PidGains, Setpoint
from .plant import PlantConfig

MODES = ("closed_loop", "open_loop_sweep")


class ConfigError(ValueError):
    """Scenario file rejected: parse failure or invariant violation."""


@dataclass(frozen=True)
class ControlConfig:
    """Per-axis PID gains plus the shared clamping limits."""

    roll: PidGains = PidGains()
    pitch: PidGains = PidGains()
    yaw: PidGains = PidGains()
    i_limit: float = 250.0
    out_limit: float = 400.0

    def __post_init__(self) -> None:
        if not self.i_limit >= 0.0:
            raise ValueError(f"pid.i_limit must be >= 0, got {self.i_limit}")
        if not self.out_limit > 0.0:
            raise ValueError(f"pid.out_limit must be > 0, got {self.out_limit}")

    def per_axis(self) -> tuple[PidGains, PidGains, PidGains]:
        return (self.roll, self.pitch, self.yaw)


@dataclass(frozen=True)
class Scenario:
    """Everything one simulation run needs, validated on construction."""

    name: str = "scenario"
    mode: str = "closed_loop"
    duration: float = 20.0
    dt: float = 0.01
    throttle: float = 1500.0
    schedule: tuple[tuple[float, Setpoint], ...] = ((0.0, Setpoint()),)
    noise: SensorNoiseConfig = field(default_factory=SensorNoiseConfig)
    filter: FilterConfig = field(default_factory=FilterConfig)
    control: ControlConfig = field(default_factory=ControlConfig)
    mixer: MixerConfig = field(default_factory=MixerConfig)
    plant: PlantConfig = field(default_factory=PlantConfig)

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not (math.isfinite(self.duration) and self.duration > 0.0):
            raise ValueError(f"duration must be > 0, got {self.duration}")
        if not (math.isfinite(self.dt) and self.dt > 0.0):
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if not (self.mixer.pwm_min <= self.throttle <= self.mixer.pwm_max):
            raise ValueError(
                f"throttle {self.throttle} outside [{self.mixer.pwm_min}, {self.mixer.pwm_max}]"
            )
        if not self.schedule:
            raise ValueError("schedule must contain at least one setpoint entry")
        prev = None
        for t, _ in self.schedule:
            if not (math.isfinite(t) and 0.0 <= t <= self.duration):
                raise ValueError(f"setpoint time {t} outside [0, {self.duration}]")
            if prev is not None and t < prev:
                raise ValueError(f"setpoint times must be non-decreasing, got {t} after {prev}")
            prev = t

    def n_steps(self) -> int:
        # floor(duration / dt) with a small slack against binary-fraction dt
        return int(math.floor(self.duration / self.dt + 1e-9))

    def with_seed(self, seed: int) -> "Scenario":
        return replace(self, noise=replace(self.noise, seed=seed))


def _parse_float(raw: str, key: str, line_no: int) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"line {line_no}: {key}: expected a number, got {raw!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"line {line_no}: {key}: value must be finite")
    return value


def _parse_int(raw: str, key: str, line_no: int) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"line {line_no}: {key}: expected an integer, got {raw!r}") from None


def _parse_vec(raw: str, key: str, line_no: int, n: int) -> tuple[float, ...]:
    parts = raw.split()
    if len(parts) != n:
        raise ConfigError(f"line {line_no}: {key}: expected {n} values, got {len(parts)}")
    return tuple(_parse_float(p, key, line_no) for p in parts)


_SCALAR_FLOAT_KEYS = {
    "duration",
    "dt",
    "throttle",
    "filter.alpha",
    "noise.gyro_white_sigma",
    "noise.vibration_amp",
    "noise.vibration_freq",
    "noise.accel_white_sigma",
    "pid.i_limit",
    "pid.out_limit",
    "mixer.pitch_gain_front",
    "mixer.pitch_gain_tail",
    "mixer.servo_gain",
    "mixer.pwm_min",
    "mixer.pwm_max",
    "mixer.servo_limit",
    "plant.arm_length",
    "plant.thrust_coeff",
    "plant.motor_tau",
    "plant.servo_tau",
}
_VEC3_KEYS = {
    "noise.gyro_bias",
    "noise.gyro_polarity",
    "plant.inertia",
    "plant.disturbance_torque",
}
_GAIN_KEYS = {
    f"pid.{axis}.{g}" for axis in ("roll", "pitch", "yaw") for g in ("kp", "ki", "kd")
}
_STRING_KEYS = {"name", "mode"}
_INT_KEYS = {"noise.seed"}


def _read_entries(path: str | os.PathLike) -> dict[str, tuple[str, int]]:
    """Parse raw lines into {key: (value, line_no)}, rejecting duplicates."""
    entries: dict[str, tuple[str, int]] = {}
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            if "=" not in text:
                raise ConfigError(f"line {line_no}: expected 'key = value', got {text!r}")
            key, _, value = text.partition("=")
            key = key.strip()
            value = value.strip()
            if not key:
                raise ConfigError(f"line {line_no}: missing key before '='")
            if key in entries:
                raise ConfigError(
                    f"line {line_no}: duplicate key {key!r} "
                    f"(first defined on line {entries[key][1]})"
                )
            entries[key] = (value, line_no)
    return entries


def parse_config(path: str | os.PathLike) -> Scenario:
    """Load and validate a scenario file; omitted keys take defaults."""
    entries = _read_entries(path)

    known = (
        _SCALAR_FLOAT_KEYS | _VEC3_KEYS | _GAIN_KEYS | _STRING_KEYS | _INT_KEYS
    )
    for key, (_, line_no) in entries.items():
        if key in known:
            continue
        if key.startswith("setpoint."):
            suffix = key[len("setpoint.") :]
            if suffix.isdigit():
                continue
            raise ConfigError(f"line {line_no}: setpoint index must be an integer, got {key!r}")
        raise ConfigError(f"line {line_no}: unknown key {key!r}")

    def take(key: str, default, parser):
        if key not in entries:
            return default
        raw, line_no = entries[key]
        return parser(raw, key, line_no)

    name = take("name", "scenario", lambda raw, key, ln: raw)
    mode = take("mode", "closed_loop", lambda raw, key, ln: raw)
    duration = take("duration", 20.0, _parse_float)
    dt = take("dt", 0.01, _parse_float)
    throttle = take("throttle", 1500.0, _parse_float)

    def build(factory, key_for_error: str, line_no: int | None = None, **kwargs):
        try:
            return factory(**kwargs)
        except ValueError as exc:
            where = f"line {line_no}: " if line_no is not None else ""
            raise ConfigError(f"{where}{key_for_error}: {exc}") from None

    alpha_line = entries.get("filter.alpha", (None, None))[1]
    filter_cfg = build(
        FilterConfig,
        "filter.alpha",
        alpha_line,
        alpha=take("filter.alpha", 0.93, _parse_float),
        dt=dt,
    )

    noise_cfg = build(
        SensorNoiseConfig,
        "noise",
        None,
        gyro_bias=take("noise.gyro_bias", (0.5, 0.5, 0.5), lambda r, k, ln: _parse_vec(r, k, ln, 3)),
        gyro_white_sigma=take("noise.gyro_white_sigma", 0.05, _parse_float),
        vibration_amp=take("noise.vibration_amp", 0.1, _parse_float),
        vibration_freq=take("noise.vibration_freq", 45.0, _parse_float),
        accel_white_sigma=take("noise.accel_white_sigma", 0.002, _parse_float),
        seed=take("noise.seed", 42, _parse_int),
        gyro_polarity=take(
            "noise.gyro_polarity",
            (1, 1, 1),
            lambda r, k, ln: tuple(int(v) for v in _parse_vec(r, k, ln, 3)),
        ),
    )

    def axis_gains(axis: str) -> PidGains:
        return build(
            PidGains,
            f"pid.{axis}",
            None,
            kp=take(f"pid.{axis}.kp", 1.41, _parse_float),
            ki=take(f"pid.{axis}.ki", 0.91, _parse_float),
            kd=take(f"pid.{axis}.kd", 1.31, _parse_float),
        )

    control_cfg = build(
        ControlConfig,
        "pid",
        None,
        roll=axis_gains("roll"),
        pitch=axis_gains("pitch"),
        yaw=axis_gains("yaw"),
        i_limit=take("pid.i_limit", 250.0, _parse_float),
        out_limit=take("pid.out_limit", 400.0, _parse_float),
    )

    mixer_cfg = build(
        MixerConfig,
        "mixer",
        None,
        pitch_gain_front=take("mixer.pitch_gain_front", 0.5, _parse_float),
        pitch_gain_tail=take("mixer.pitch_gain_tail", 1.0, _parse_float),
        servo_gain=take("mixer.servo_gain", 0.1, _parse_float),
        pwm_min=take("mixer.pwm_min", 1000.0, _parse_float),
        pwm_max=take("mixer.pwm_max", 2000.0, _parse_float),
        servo_limit=take("mixer.servo_limit", 45.0, _parse_float),
    )

    plant_cfg = build(
        PlantConfig,
        "plant",
        None,
        inertia=take("plant.inertia", (0.02, 0.02, 0.04), lambda r, k, ln: _parse_vec(r, k, ln, 3)),
        arm_length=take("plant.arm_length", 0.3, _parse_float),
        thrust_coeff=take("plant.thrust_coeff", 0.006, _parse_float),
        motor_tau=take("plant.motor_tau", 0.05, _parse_float),
        servo_tau=take("plant.servo_tau", 0.1, _parse_float),
        disturbance_torque=take(
            "plant.disturbance_torque", (0.0, 0.0, 0.0), lambda r, k, ln: _parse_vec(r, k, ln, 3)
        ),
    )

    schedule_entries = []
    for key, (raw, line_no) in entries.items():
        if not key.startswith("setpoint."):
            continue
        index = int(key[len("setpoint.") :])
        values = _parse_vec(raw, key, line_no, 4)
        sp = build(Setpoint, key, line_no, roll=values[1], pitch=values[2], yaw=values[3])
        schedule_entries.append((index, values[0], sp))
    schedule_entries.sort(key=lambda item: item[0])
    if schedule_entries:
        schedule = tuple((t, sp) for _, t, sp in schedule_entries)
    else:
        schedule = ((0.0, Setpoint()),)

    return build(
        Scenario,
        "scenario",
        None,
        name=name,
        mode=mode,
        duration=duration,
        dt=dt,
        throttle=throttle,
        schedule=schedule,
        noise=noise_cfg,
        filter=filter_cfg,
        control=control_cfg,
        mixer=mixer_cfg,
        plant=plant_cfg,
    )
