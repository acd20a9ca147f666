"""Bundled scenario builders used by the CLI and the acceptance suite."""

from __future__ import annotations

from dataclasses import replace

from .angles import AXES
from .config import Scenario
from .pid import Setpoint

SWEEP_HOLD_ANGLES = (30.0, 60.0, 90.0, 120.0, 160.0)
SWEEP_SLEW_RATE = 20.0  # deg/s between holds
SWEEP_HOLD_SECONDS = 4.0
SWEEP_DURATION = 36.0  # padded past the last hold to expose gyro-only drift


def _axis_setpoint(axis: str, value: float) -> Setpoint:
    return Setpoint(**{axis: value})


def table_sweep(axis: str, seed: int = 42) -> Scenario:
    """Open-loop angle-hold sweep on one axis through the standard holds.

    The true attitude slews at SWEEP_SLEW_RATE between holds and sits
    SWEEP_HOLD_SECONDS at each; after the last hold it stays put through
    SWEEP_DURATION so long-horizon gyro drift is visible in the trace.
    """
    if axis not in AXES:
        raise ValueError(f"axis must be one of {AXES}, got {axis!r}")
    schedule = [(0.0, _axis_setpoint(axis, 0.0))]
    t = 0.0
    previous = 0.0
    for angle in SWEEP_HOLD_ANGLES:
        t += abs(angle - previous) / SWEEP_SLEW_RATE
        schedule.append((t, _axis_setpoint(axis, angle)))
        t += SWEEP_HOLD_SECONDS
        schedule.append((t, _axis_setpoint(axis, angle)))
        previous = angle
    scenario = Scenario(
        name=f"table_sweep_{axis}",
        mode="open_loop_sweep",
        duration=max(SWEEP_DURATION, t),
        schedule=tuple(schedule),
    )
    return scenario.with_seed(seed)


def sweep_hold_end_times() -> tuple[float, ...]:
    """End time of each hold (the final hold runs to the sweep duration)."""
    times = []
    t = 0.0
    previous = 0.0
    for angle in SWEEP_HOLD_ANGLES:
        t += abs(angle - previous) / SWEEP_SLEW_RATE + SWEEP_HOLD_SECONDS
        times.append(t)
        previous = angle
    times[-1] = max(SWEEP_DURATION, times[-1])
    return tuple(times)


def step_response(
    axis: str, magnitude: float = 10.0, duration: float = 20.0, seed: int = 42
) -> Scenario:
    """Closed-loop attitude step commanded at t = 0 on one axis."""
    if axis not in AXES:
        raise ValueError(f"axis must be one of {AXES}, got {axis!r}")
    scenario = Scenario(
        name=f"step_{axis}_{magnitude:g}deg",
        mode="closed_loop",
        duration=duration,
        schedule=((0.0, _axis_setpoint(axis, magnitude)),),
    )
    return scenario.with_seed(seed)


def with_disturbance(scenario: Scenario, torque: tuple[float, float, float]) -> Scenario:
    """Copy of the scenario with a constant body-torque disturbance."""
    return replace(scenario, plant=replace(scenario.plant, disturbance_torque=torque))
