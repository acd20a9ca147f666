"""Angle helpers shared across the stack. All angles are degrees."""

from __future__ import annotations

AXES = ("roll", "pitch", "yaw")


def wrap_angle(angle: float) -> float:
    """Wrap an angle into (-180, 180].

    Values already in range are returned unchanged (bit-exact), so wrapping
    is an exact no-op inside the canonical interval.
    """
    if -180.0 < angle <= 180.0:
        return angle
    wrapped = angle % 360.0
    return wrapped - 360.0 if wrapped > 180.0 else wrapped


def angle_difference(a: float, b: float) -> float:
    """Shortest signed angular difference a - b, in (-180, 180]."""
    return wrap_angle(a - b)


def axis_index(axis: int | str) -> int:
    """Map an axis name ('roll'/'pitch'/'yaw') or index (0..2) to an index."""
    if isinstance(axis, str):
        try:
            return AXES.index(axis)
        except ValueError:
            raise ValueError(f"axis must be one of {AXES}, got {axis!r}") from None
    if axis not in (0, 1, 2):
        raise ValueError(f"axis index must be 0, 1 or 2, got {axis!r}")
    return axis
