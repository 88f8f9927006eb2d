"""
Grid types: terrain heights, gradients, attention weights and navigation costs.

All grids are stored row-major with row = y index and col = x index. Arrays are
copied on construction and flagged read-only, so a grid can be shared between
episode workers without synchronization.
"""
import math
from dataclasses import dataclass

import numpy as np

from utils.errors import ArgumentError, DimensionError, GridValidationError


def _frozen_array(values, name):
    array = np.array(values, dtype=float)
    if array.ndim != 2 or array.shape[0] < 1 or array.shape[1] < 1:
        raise DimensionError(f"{name} must be a non-empty 2-D grid, got shape {array.shape}")
    array.flags.writeable = False
    return array


def _first_cell(mask):
    rows, cols = np.nonzero(mask)
    return int(rows[0]), int(cols[0])


@dataclass(frozen=True, eq=False)
class ElevationMap:
    """Terrain heights in meters; also used for robot-centric windows."""

    heights: np.ndarray
    resolution: float = 1.0
    origin: tuple = (0.0, 0.0)

    def __post_init__(self):
        heights = _frozen_array(self.heights, 'heights')
        if not np.all(np.isfinite(heights)):
            raise GridValidationError('heights must be finite', _first_cell(~np.isfinite(heights)))
        resolution = float(self.resolution)
        if not (math.isfinite(resolution) and resolution > 0):
            raise ArgumentError(f"resolution must be positive, got {self.resolution}")
        origin = (float(self.origin[0]), float(self.origin[1]))
        object.__setattr__(self, 'heights', heights)
        object.__setattr__(self, 'resolution', resolution)
        object.__setattr__(self, 'origin', origin)

    @property
    def width(self):
        return self.heights.shape[1]

    @property
    def height(self):
        return self.heights.shape[0]

    @property
    def shape(self):
        return self.heights.shape

    def cell_center(self, row, col):
        """World coordinates (x, y) of a cell center."""
        return (self.origin[0] + col * self.resolution,
                self.origin[1] + row * self.resolution)

    def fractional_cell(self, x, y):
        """Continuous (row, col) coordinates of a world point."""
        return ((y - self.origin[1]) / self.resolution,
                (x - self.origin[0]) / self.resolution)

    def contains(self, x, y):
        """True if (x, y) lies on the map, cell footprints included."""
        row, col = self.fractional_cell(x, y)
        return -0.5 <= row <= self.height - 0.5 and -0.5 <= col <= self.width - 0.5

    def world_to_cell(self, x, y):
        """Index (row, col) of the cell containing (x, y), clamped to the grid."""
        row, col = self.fractional_cell(x, y)
        row = min(max(int(math.floor(row + 0.5)), 0), self.height - 1)
        col = min(max(int(math.floor(col + 0.5)), 0), self.width - 1)
        return row, col


@dataclass(frozen=True, eq=False)
class GradientField:
    """Per-cell (dh/dx, dh/dy) in meters per meter."""

    dx: np.ndarray
    dy: np.ndarray

    def __post_init__(self):
        dx = _frozen_array(self.dx, 'dx')
        dy = _frozen_array(self.dy, 'dy')
        if dx.shape != dy.shape:
            raise DimensionError(f"gradient components disagree: {dx.shape} vs {dy.shape}")
        object.__setattr__(self, 'dx', dx)
        object.__setattr__(self, 'dy', dy)

    @property
    def shape(self):
        return self.dx.shape

    @property
    def magnitude(self):
        return np.hypot(self.dx, self.dy)


@dataclass(frozen=True, eq=False)
class AttentionMap:
    """Attention weights in [0, 1], paired cell-for-cell with an elevation window."""

    values: np.ndarray

    def __post_init__(self):
        values = _frozen_array(self.values, 'attention')
        bad = ~np.isfinite(values) | (values < 0.0) | (values > 1.0)
        if bad.any():
            cell = _first_cell(bad)
            raise GridValidationError(
                f"attention value {values[cell]!r} outside [0, 1]", cell)
        object.__setattr__(self, 'values', values)

    @property
    def shape(self):
        return self.values.shape


@dataclass(frozen=True, eq=False)
class CostMap:
    """Non-negative navigation costs on a robot-centric window."""

    values: np.ndarray
    resolution: float = 1.0

    def __post_init__(self):
        values = _frozen_array(self.values, 'cost')
        bad = ~np.isfinite(values) | (values < 0.0)
        if bad.any():
            cell = _first_cell(bad)
            raise GridValidationError(f"cost value {values[cell]!r} must be finite and >= 0", cell)
        resolution = float(self.resolution)
        if not resolution > 0:
            raise ArgumentError(f"resolution must be positive, got {self.resolution}")
        object.__setattr__(self, 'values', values)
        object.__setattr__(self, 'resolution', resolution)

    @property
    def shape(self):
        return self.values.shape

    @property
    def center(self):
        """Index of the robot cell."""
        return self.values.shape[0] // 2, self.values.shape[1] // 2
