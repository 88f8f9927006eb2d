"""
Attention providers and navigation cost-map composition.

The cost-map is the element-wise product of an attention map and the
preprocessed elevation channel (|relative height| rescaled to [0, 1]).
"""
import math
from typing import Protocol

import numpy as np

from models.grids import AttentionMap, CostMap
from modules.terrain import gradient, window_offsets
from utils.errors import DimensionError

SIGMA_DIR_DEFAULT = math.pi / 4


class AttentionProvider(Protocol):
    """Anything that maps (window, goal direction in the robot frame) to an AttentionMap."""

    name: str

    def __call__(self, window, goal_direction):
        ...


def directional_emphasis(n, goal_direction, sigma_dir=SIGMA_DIR_DEFAULT):
    """
    Gaussian weight on the angle between each cell's bearing and the goal.

    Bearings are measured from the robot cell, 0 straight ahead and positive
    to the left. The robot cell has no bearing and gets weight 1.
    """
    forward, left = window_offsets(n)
    bearings = np.arctan2(left, forward)
    offset = np.abs(np.angle(np.exp(1j * (bearings - goal_direction))))
    weights = np.exp(-offset ** 2 / (2.0 * sigma_dir ** 2))
    weights[n // 2, n // 2] = 1.0
    return weights


def reference_attention(window, goal_direction, sigma_dir=SIGMA_DIR_DEFAULT):
    """
    Deterministic attention surrogate highlighting steep cells toward the goal.

    A(i, j) = clamp01(g(i, j) / g_max * exp(-delta^2 / (2 sigma_dir^2)))

    Args:
        window: Robot-centric ElevationMap
        goal_direction: Goal bearing in the robot frame (radians)
        sigma_dir: Angular spread of the directional emphasis

    Returns:
        AttentionMap
    """
    if window.height != window.width:
        raise DimensionError(f"attention needs a square window, got {window.shape}")
    magnitude = gradient(window).magnitude
    g_max = float(magnitude.max())
    if g_max <= 0.0:
        g_max = 1.0
    weights = directional_emphasis(window.height, goal_direction, sigma_dir)
    return AttentionMap(np.clip(magnitude / g_max * weights, 0.0, 1.0))


class ReferenceAttention:
    """Provider wrapping reference_attention."""

    name = 'reference'

    def __init__(self, sigma_dir=SIGMA_DIR_DEFAULT):
        self.sigma_dir = sigma_dir

    def __call__(self, window, goal_direction):
        return reference_attention(window, goal_direction, self.sigma_dir)


class SnapshotAttention:
    """Replays a fixed attention map, e.g. one exported from a trained network."""

    name = 'snapshot'

    def __init__(self, attention_map):
        self.attention_map = attention_map

    def __call__(self, window, goal_direction):
        if self.attention_map.shape != window.shape:
            raise DimensionError(
                f"snapshot shape {self.attention_map.shape} does not match window {window.shape}")
        return self.attention_map


class UniformAttention:
    """Constant attention; with value 1 the cost-map is the elevation channel itself."""

    name = 'uniform'

    def __init__(self, value=1.0):
        self.value = value

    def __call__(self, window, goal_direction):
        return AttentionMap(np.full(window.shape, self.value, dtype=float))


def preprocess_elevation(window):
    """
    |relative height| min-max rescaled to [0, 1]; a constant window maps to zeros.
    """
    magnitude = np.abs(window.heights)
    low = magnitude.min()
    span = magnitude.max() - low
    if span <= 0.0:
        return np.zeros_like(magnitude)
    return (magnitude - low) / span


def compose_costmap(attention, window):
    """
    Navigation cost-map C = A * e(E).

    Raises:
        DimensionError: attention and window shapes differ
    """
    if attention.shape != window.shape:
        raise DimensionError(f"attention shape {attention.shape} does not match window {window.shape}")
    return CostMap(attention.values * preprocess_elevation(window), window.resolution)


def write_pgm(values, path):
    """
    Write a grid as an 8-bit binary PGM, +row drawn upward.

    Non-negative grids scale so their maximum maps to 255; grids with negative
    values are min-max rescaled instead.
    """
    grid = np.asarray(values, dtype=float)
    low = float(grid.min())
    if low < 0.0:
        grid = grid - low
    peak = float(grid.max())
    if peak > 0.0:
        scaled = np.round(grid / peak * 255.0)
    else:
        scaled = np.zeros_like(grid)
    pixels = np.flipud(scaled).astype(np.uint8)
    with open(path, 'wb') as handle:
        handle.write(f"P5\n{pixels.shape[1]} {pixels.shape[0]}\n255\n".encode('ascii'))
        handle.write(pixels.tobytes())
