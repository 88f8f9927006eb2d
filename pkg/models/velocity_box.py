"""
Axis-aligned boxes over the (v, omega) velocity space.
"""
from dataclasses import dataclass

from utils.errors import ArgumentError
from utils.geometry import within_band


@dataclass(frozen=True)
class VelocityBox:
    """[v_min, v_max] x [omega_min, omega_max], or the empty set."""

    v_min: float
    v_max: float
    omega_min: float
    omega_max: float
    empty: bool = False

    def __post_init__(self):
        if not self.empty and (self.v_min > self.v_max or self.omega_min > self.omega_max):
            raise ArgumentError(
                f"inverted velocity box [{self.v_min}, {self.v_max}] x "
                f"[{self.omega_min}, {self.omega_max}]")

    def intersect(self, other):
        """
        Intersect two boxes.

        Returns:
            VelocityBox: The overlap, or EMPTY if the boxes are disjoint
        """
        if self.empty or other.empty:
            return EMPTY
        v_min = max(self.v_min, other.v_min)
        v_max = min(self.v_max, other.v_max)
        omega_min = max(self.omega_min, other.omega_min)
        omega_max = min(self.omega_max, other.omega_max)
        if v_min > v_max or omega_min > omega_max:
            return EMPTY
        return VelocityBox(v_min, v_max, omega_min, omega_max)

    def contains(self, v, omega, tol=1e-9):
        if self.empty:
            return False
        return (within_band(v, self.v_min, self.v_max, tol)
                and within_band(omega, self.omega_min, self.omega_max, tol))


EMPTY = VelocityBox(0.0, 0.0, 0.0, 0.0, empty=True)
