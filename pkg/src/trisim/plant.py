"""Decoupled rigid-body rotational dynamics with first-order actuator lags.

Torques come from thrust differentials across the arms: roll from the
front-rotor pair, pitch from tail thrust against the front pair (front
longitudinal arm is half the tail arm, so equal thrusts cancel exactly),
yaw from the tail thrust's horizontal component under servo tilt. Axes are
decoupled (no gyroscopic coupling, no translation): the controller treats
axes independently and this is the weakest plant that exercises it.

Integration is trapezoidal in both stages (rate from the mean of the
angular accelerations before/after the actuator-lag update, attitude from
the mean of the rates), which is second-order accurate yet still explicit
because torques do not depend on the body rates. Actuator lags advance by
their exact exponential step. One step of a given state and command is a
pure function: same inputs, bit-identical outputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .angles import wrap_angle
from .mixer import PWM_MIN, ActuatorCommand


@dataclass(frozen=True)
class RigidBodyState:
    """Ground truth: attitude [deg], body rates [deg/s], actuator states."""

    attitude: tuple[float, float, float] = (0.0, 0.0, 0.0)
    body_rate: tuple[float, float, float] = (0.0, 0.0, 0.0)
    motor_thrust: tuple[float, float, float] = (0.0, 0.0, 0.0)  # fl, fr, tail [N]
    servo_angle_actual: float = 0.0
    t: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "attitude", tuple(float(a) for a in self.attitude))
        object.__setattr__(self, "body_rate", tuple(float(r) for r in self.body_rate))
        object.__setattr__(self, "motor_thrust", tuple(float(f) for f in self.motor_thrust))
        if any(f < 0.0 for f in self.motor_thrust):
            raise ValueError("motor_thrust entries must be >= 0")


@dataclass(frozen=True)
class PlantConfig:
    """Simulator parameters; chosen for a stable, visibly damped response."""

    inertia: tuple[float, float, float] = (0.02, 0.02, 0.04)  # kg m^2 per axis
    arm_length: float = 0.3  # m, tail arm; front longitudinal arm is half
    thrust_coeff: float = 0.006  # N per us above pwm_min
    motor_tau: float = 0.05  # s
    servo_tau: float = 0.1  # s
    disturbance_torque: tuple[float, float, float] = (0.0, 0.0, 0.0)  # N m

    def __post_init__(self) -> None:
        object.__setattr__(self, "inertia", tuple(float(i) for i in self.inertia))
        object.__setattr__(
            self, "disturbance_torque", tuple(float(d) for d in self.disturbance_torque)
        )
        if len(self.inertia) != 3 or any(not (math.isfinite(i) and i > 0.0) for i in self.inertia):
            raise ValueError("inertia entries must be finite and > 0")
        for name in ("motor_tau", "servo_tau"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be > 0, got {value}")
        if not (math.isfinite(self.thrust_coeff) and self.thrust_coeff >= 0.0):
            raise ValueError(f"thrust_coeff must be >= 0, got {self.thrust_coeff}")
        if not all(math.isfinite(d) for d in self.disturbance_torque):
            raise ValueError("disturbance_torque entries must be finite")


def motor_lag(current_thrust: float, commanded_pwm: float, cfg: PlantConfig, dt: float) -> float:
    """First-order thrust response toward thrust_coeff * (pwm - pwm_min).

    Uses the exact exponential step, so the relaxation is independent of how
    dt subdivides the interval.
    """
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    target = cfg.thrust_coeff * (commanded_pwm - PWM_MIN)
    return current_thrust + (target - current_thrust) * (1.0 - math.exp(-dt / cfg.motor_tau))


def _angular_accel(
    thrusts: tuple[float, float, float],
    servo_deg: float,
    cfg: PlantConfig,
) -> tuple[float, float, float]:
    """Angular acceleration per axis in deg/s^2 for the given actuator state."""
    fl, fr, tail = thrusts
    # 0.5 * (fl + fr) cancels tail exactly at equal thrusts (factored on purpose)
    torque_roll = cfg.arm_length * (fl - fr) + cfg.disturbance_torque[0]
    torque_pitch = cfg.arm_length * (tail - 0.5 * (fl + fr)) + cfg.disturbance_torque[1]
    torque_yaw = (
        cfg.arm_length * tail * math.sin(math.radians(servo_deg)) + cfg.disturbance_torque[2]
    )
    return (
        math.degrees(torque_roll / cfg.inertia[0]),
        math.degrees(torque_pitch / cfg.inertia[1]),
        math.degrees(torque_yaw / cfg.inertia[2]),
    )


def step_dynamics(
    state: RigidBodyState,
    cmd: ActuatorCommand,
    cfg: PlantConfig,
    dt: float,
) -> RigidBodyState:
    """Advance the plant by one step under a held actuator command.

    The command must already be saturated (mixer invariant). Raises on
    non-finite state or command values.
    """
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    values = (
        *state.attitude,
        *state.body_rate,
        *state.motor_thrust,
        state.servo_angle_actual,
        cmd.pwm_front_left,
        cmd.pwm_front_right,
        cmd.pwm_tail,
        cmd.servo_angle,
    )
    if not all(math.isfinite(v) for v in values):
        raise ValueError("plant state corrupt: non-finite state or command value")

    acc_before = _angular_accel(state.motor_thrust, state.servo_angle_actual, cfg)

    thrusts = (
        motor_lag(state.motor_thrust[0], cmd.pwm_front_left, cfg, dt),
        motor_lag(state.motor_thrust[1], cmd.pwm_front_right, cfg, dt),
        motor_lag(state.motor_thrust[2], cmd.pwm_tail, cfg, dt),
    )
    servo = state.servo_angle_actual + (cmd.servo_angle - state.servo_angle_actual) * (
        1.0 - math.exp(-dt / cfg.servo_tau)
    )

    acc_after = _angular_accel(thrusts, servo, cfg)

    rate = tuple(
        state.body_rate[i] + 0.5 * (acc_before[i] + acc_after[i]) * dt for i in range(3)
    )
    attitude = tuple(
        wrap_angle(state.attitude[i] + 0.5 * (state.body_rate[i] + rate[i]) * dt)
        for i in range(3)
    )
    return RigidBodyState(
        attitude=attitude,
        body_rate=rate,
        motor_thrust=thrusts,
        servo_angle_actual=servo,
        t=state.t + dt,
    )
