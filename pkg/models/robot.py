"""
Robot pose and state.
"""
import math
from dataclasses import dataclass

from utils.errors import ArgumentError
from utils.geometry import normalize_angle


@dataclass(frozen=True)
class Pose2D:
    """Planar pose; heading is wrapped into (-pi, pi] on construction."""

    x: float
    y: float
    heading: float = 0.0

    def __post_init__(self):
        for name in ('x', 'y', 'heading'):
            if not math.isfinite(getattr(self, name)):
                raise ArgumentError(f"pose {name} must be finite")
        object.__setattr__(self, 'x', float(self.x))
        object.__setattr__(self, 'y', float(self.y))
        object.__setattr__(self, 'heading', normalize_angle(self.heading))

    def distance_to(self, x, y):
        return math.hypot(x - self.x, y - self.y)

    def bearing_to(self, x, y):
        """Angle of (x, y) relative to the heading, in (-pi, pi]."""
        return normalize_angle(math.atan2(y - self.y, x - self.x) - self.heading)


@dataclass(frozen=True)
class RobotState:
    """
    Pose, attitude and current velocities.

    roll > 0 means the left side is higher; pitch > 0 means nose-up. A state
    past the flip bound is representable so the simulator can report it.
    """

    pose: Pose2D
    roll: float = 0.0
    pitch: float = 0.0
    v_a: float = 0.0
    omega_a: float = 0.0

    def __post_init__(self):
        for name in ('roll', 'pitch', 'v_a', 'omega_a'):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ArgumentError(f"state {name} must be finite, got {value}")
            object.__setattr__(self, name, float(value))
