"""
Heightfield operations: robot-centric windows, gradients and the heading profile.

Window convention: an n x n ElevationMap in the robot frame with center cell
c = n // 2 at the robot, +row pointing along the heading and +col to the left.
The window origin is (-c * res, -c * res) so cell (i, j) sits at
(forward, left) = ((i - c) * res, (j - c) * res).
"""
import numpy as np
from scipy import ndimage

from models.grids import ElevationMap, GradientField
from utils.errors import ArgumentError, OutOfBoundsError
from utils.geometry import heading_basis


def window_offsets(n):
    """Forward and left cell offsets of every window cell, as two n x n arrays."""
    center = n // 2
    steps = np.arange(n, dtype=float) - center
    forward, left = np.meshgrid(steps, steps, indexing='ij')
    return forward, left


def robot_centric_window(elevation_map, pose, n):
    """
    Cut an n x n heading-aligned window around the robot.

    Cells beyond the world take the nearest border height; off-axis headings
    are resampled bilinearly. Heights are relative to the robot cell, which is 0.

    Args:
        elevation_map: World ElevationMap
        pose: Robot Pose2D in world coordinates
        n: Window size in cells

    Returns:
        ElevationMap: Robot-frame window with the world's resolution

    Raises:
        OutOfBoundsError: The pose lies outside the world
    """
    if n < 1:
        raise ArgumentError(f"window size must be >= 1, got {n}")
    if not elevation_map.contains(pose.x, pose.y):
        raise OutOfBoundsError(f"pose ({pose.x:.3f}, {pose.y:.3f}) lies outside the world")

    row0, col0 = elevation_map.fractional_cell(pose.x, pose.y)
    cos_h, sin_h = heading_basis(pose.heading)
    forward, left = window_offsets(n)
    cols = col0 + forward * cos_h - left * sin_h
    rows = row0 + forward * sin_h + left * cos_h

    sampled = ndimage.map_coordinates(
        elevation_map.heights, [rows, cols], order=1, mode='nearest')
    center = n // 2
    relative = sampled - sampled[center, center]
    resolution = elevation_map.resolution
    return ElevationMap(relative, resolution, (-center * resolution, -center * resolution))


def _axis_gradient(heights, axis, spacing):
    if heights.shape[axis] < 2:
        return np.zeros_like(heights)
    return np.gradient(heights, spacing, axis=axis, edge_order=1)


def gradient(elevation_map):
    """
    Elevation gradient, central differences inside and one-sided on borders.

    Returns:
        GradientField: dx along columns (x), dy along rows (y)
    """
    heights = elevation_map.heights
    res = elevation_map.resolution
    return GradientField(_axis_gradient(heights, 1, res), _axis_gradient(heights, 0, res))


def heading_gradient_vector(window, n_h):
    """
    Directional elevation derivative at the n_h cells straight ahead.

    Args:
        window: Robot-centric ElevationMap
        n_h: Number of cells ahead to sample

    Returns:
        ndarray: [grad_1 ... grad_n_h], index 1 nearest the robot

    Raises:
        OutOfBoundsError: Fewer than n_h cells ahead of the center
    """
    rows, cols = window.shape
    center_row, center_col = rows // 2, cols // 2
    ahead = rows - 1 - center_row
    if n_h < 1:
        raise ArgumentError(f"n_h must be >= 1, got {n_h}")
    if n_h > ahead:
        raise OutOfBoundsError(f"n_h={n_h} exceeds the {ahead} cells ahead of the robot")
    profile = window.heights[:, center_col]
    slopes = np.gradient(profile, window.resolution, edge_order=1)
    return slopes[center_row + 1:center_row + 1 + n_h].copy()


def eg_max(elevation_map):
    """Maximum elevation gain of a world: highest minus lowest cell."""
    return float(elevation_map.heights.max() - elevation_map.heights.min())


def classify_elevation(gain):
    """
    Scenario class for a maximum elevation gain.

    Returns:
        str: 'low' (<= 1 m), 'high' (>= 3 m) or 'medium' in between
    """
    if gain <= 1.0:
        return 'low'
    if gain >= 3.0:
        return 'high'
    return 'medium'
