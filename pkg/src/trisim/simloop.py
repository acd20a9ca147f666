"""Deterministic scenario execution wiring sensors, fusion, control, plant.

closed_loop mode runs the full loop each step: sample the IMU from the
current true state, derive accelerometer angles, update the complementary
filter, compute setpoint errors, step the three PID controllers, mix into
actuator commands, then advance the plant. The PID always consumes the
estimate produced from the same step's sensor sample, and each trace row
records that step's values before the plant advances.

open_loop_sweep mode prescribes the true attitude kinematically: the
setpoint schedule is interpreted as breakpoints of a piecewise-linear
angle profile (body rates are the segment slopes), only sensing and fusion
run, PID outputs are zero and the mixer passes the hover throttle through.
This mirrors the hold-known-angles protocol used for filter accuracy sweeps.

The per-axis accelerometer-angle sources are:

    roll   tilt from gravity, atan2(ay, az)
    pitch  closed_loop: atan2(-ax, sqrt(ay^2+az^2)); sweeps use the
           full-range single-axis form so holds beyond 90 deg are observable
    yaw    reference-angle channel (gravity cannot observe yaw)
"""

from __future__ import annotations

import math
from bisect import bisect_right

from .config import Scenario
from .fusion import AttitudeEstimate, complementary_update_all
from .imu import ImuSimulator, accel_to_angle, single_axis_inclination
from .mixer import mix
from .pid import PidState, Setpoint, compute_error, pid_step
from .plant import RigidBodyState, step_dynamics
from .trace import TraceRow


class SimulationAbort(RuntimeError):
    """A non-finite value appeared mid-run; carries the failing step index."""

    def __init__(self, step: int, message: str):
        super().__init__(f"step {step}: {message}")
        self.step = step


def _setpoint_at(schedule: tuple[tuple[float, Setpoint], ...], times: list[float], t: float) -> Setpoint:
    """Step-and-hold setpoint: the last entry at or before t."""
    i = bisect_right(times, t) - 1
    return schedule[max(i, 0)][1]


def _profile_at(
    schedule: tuple[tuple[float, Setpoint], ...], times: list[float], t: float
) -> tuple[tuple[float, float, float], tuple[float, float, float]]:
    """Piecewise-linear attitude profile and its slope at time t."""
    i = bisect_right(times, t) - 1
    if i < 0:
        return schedule[0][1].as_tuple(), (0.0, 0.0, 0.0)
    if i >= len(schedule) - 1:
        return schedule[-1][1].as_tuple(), (0.0, 0.0, 0.0)
    t0, sp0 = schedule[i]
    t1, sp1 = schedule[i + 1]
    span = t1 - t0
    if span <= 0.0:
        return sp1.as_tuple(), (0.0, 0.0, 0.0)
    a0 = sp0.as_tuple()
    a1 = sp1.as_tuple()
    frac = (t - t0) / span
    angles = tuple(a0[k] + (a1[k] - a0[k]) * frac for k in range(3))
    rates = tuple((a1[k] - a0[k]) / span for k in range(3))
    return angles, rates


def run_scenario(scenario: Scenario) -> list[TraceRow]:
    """Execute the scenario; returns floor(duration/dt) trace rows."""
    sweep = scenario.mode == "open_loop_sweep"
    dt = scenario.dt
    imu = ImuSimulator(scenario.noise)
    est = AttitudeEstimate()
    gains = scenario.control.per_axis()
    limits = dict(i_limit=scenario.control.i_limit, out_limit=scenario.control.out_limit)
    pid_states = [PidState(**limits) for _ in range(3)]
    state = RigidBodyState()
    idle_cmd = mix(scenario.throttle, 0.0, 0.0, 0.0, scenario.mixer)
    schedule_times = [t for t, _ in scenario.schedule]

    rows: list[TraceRow] = []
    for k in range(scenario.n_steps()):
        t = k * dt

        if sweep:
            angles, rates = _profile_at(scenario.schedule, schedule_times, t)
            state = RigidBodyState(attitude=angles, body_rate=rates, t=t)

        sample = imu.sample(state, t)
        acc_roll = accel_to_angle(sample.accel, "roll")
        if sweep:
            acc_pitch = single_axis_inclination(sample.accel, "pitch")
        else:
            acc_pitch = accel_to_angle(sample.accel, "pitch")
        acc_yaw = imu.sample_reference_angle(state.attitude[2], t)
        acc_angles = (acc_roll, acc_pitch, acc_yaw)

        est = complementary_update_all(est, sample.gyro, acc_angles, scenario.filter)

        setpoint = _setpoint_at(scenario.schedule, schedule_times, t).as_tuple()
        errors = tuple(compute_error(setpoint[i], est.angles[i]) for i in range(3))

        if sweep:
            outputs = (0.0, 0.0, 0.0)
            cmd = idle_cmd
        else:
            outputs = []
            for i in range(3):
                out, pid_states[i] = pid_step(pid_states[i], gains[i], errors[i], dt)
                outputs.append(out)
            outputs = tuple(outputs)
            cmd = mix(scenario.throttle, outputs[0], outputs[1], outputs[2], scenario.mixer)

        row = TraceRow(
            t,
            *state.attitude,
            *sample.gyro,
            *acc_angles,
            *est.angles,
            *errors,
            *outputs,
            cmd.pwm_front_left,
            cmd.pwm_front_right,
            cmd.pwm_tail,
            cmd.servo_angle,
        )
        if not all(math.isfinite(v) for v in (
            *state.attitude, *sample.gyro, *acc_angles, *est.angles, *errors, *outputs,
        )):
            raise SimulationAbort(k, "non-finite value in trace row")
        rows.append(row)

        if not sweep:
            state = step_dynamics(state, cmd, scenario.plant, dt)

    return rows
