"""Step-response metrics computed on the fused-estimate trace columns.

The commanded setpoint is recovered per axis as wrap(est + err), which is
exact because the loop logs err = wrap(setpoint - est). A step is either a
change in that recovered setpoint between consecutive rows, or an initial
offset between setpoint and estimate at the first row (a step commanded at
t = 0). Deviations are measured wrap-aware so responses passing the
+/-180 deg seam are handled.

Definitions (step of size s from baseline to target at time t0):

    rise_time      first time the estimate comes within 10% of s of the
                   target, minus t0 (i.e. first crossing of 90% of the step)
    overshoot_pct  peak excursion beyond the target in the step direction,
                   as a percentage of |s|
    settling_time  last time the estimate sits outside the +/-2%-of-|s|
                   band around the target, minus t0; 0 if never outside,
                   inf if still outside at the end of the window
    steady_state_error  mean |target - est| over the final tenth of the
                   window
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .angles import AXES, wrap_angle
from .trace import TraceRow

# Recovered-setpoint jitter below this is not a commanded step.
_STEP_EPSILON = 1e-9


@dataclass(frozen=True)
class StepMetrics:
    axis: str
    step_time: float
    step_size: float
    rise_time: float
    overshoot_pct: float
    settling_time: float
    steady_state_error: float


def _wrap_array(values: np.ndarray) -> np.ndarray:
    wrapped = np.mod(values, 360.0)
    wrapped[wrapped > 180.0] -= 360.0
    return wrapped


def _axis_columns(rows: Sequence[TraceRow], axis: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    est = np.array([getattr(r, f"est_{axis}") for r in rows])
    err = np.array([getattr(r, f"err_{axis}") for r in rows])
    t = np.array([r.t for r in rows])
    setpoint = _wrap_array(est + err)
    return t, est, setpoint


def _analyze_axis(
    t: np.ndarray,
    est: np.ndarray,
    setpoint: np.ndarray,
    axis: str,
    initial_step_threshold: float,
) -> StepMetrics | None:
    jumps = np.abs(_wrap_array(np.diff(setpoint)))
    step_indices = np.nonzero(jumps > _STEP_EPSILON)[0] + 1

    if step_indices.size > 0:
        k0 = int(step_indices[0])
        baseline = setpoint[k0 - 1]
    elif abs(wrap_angle(float(setpoint[0] - est[0]))) > initial_step_threshold:
        k0 = 0
        baseline = est[0]
    else:
        return None

    target = setpoint[k0]
    step = wrap_angle(float(target - baseline))
    size = abs(step)
    sign = 1.0 if step >= 0.0 else -1.0

    # Window runs to the next commanded step on this axis, or trace end.
    later = step_indices[step_indices > k0]
    k_end = int(later[0]) if later.size > 0 else len(est)
    tw = t[k0:k_end]
    deviation = _wrap_array(est[k0:k_end] - target)

    within_rise = np.abs(deviation) <= 0.1 * size
    rise_time = float(tw[np.argmax(within_rise)] - tw[0]) if within_rise.any() else math.inf

    overshoot_pct = float(max(np.max(deviation * sign), 0.0) / size * 100.0)

    outside = np.abs(deviation) > 0.02 * size
    if not outside.any():
        settling_time = 0.0
    elif outside[-1]:
        settling_time = math.inf
    else:
        settling_time = float(tw[np.nonzero(outside)[0][-1]] - tw[0])

    tail = max(1, len(deviation) // 10)
    steady_state_error = float(np.mean(np.abs(deviation[-tail:])))

    return StepMetrics(
        axis=axis,
        step_time=float(tw[0]),
        step_size=step,
        rise_time=rise_time,
        overshoot_pct=overshoot_pct,
        settling_time=settling_time,
        steady_state_error=steady_state_error,
    )


def report_metrics(
    rows: Sequence[TraceRow], initial_step_threshold: float = 1.0
) -> dict[str, StepMetrics]:
    """Metrics for the first setpoint step on each axis that has one.

    Raises ValueError("no step event") when no axis contains a step.
    """
    if not rows:
        raise ValueError("no step event: empty trace")
    results: dict[str, StepMetrics] = {}
    for axis in AXES:
        t, est, setpoint = _axis_columns(rows, axis)
        metrics = _analyze_axis(t, est, setpoint, axis, initial_step_threshold)
        if metrics is not None:
            results[axis] = metrics
    if not results:
        raise ValueError("no step event in trace")
    return results
