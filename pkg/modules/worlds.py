"""
Seeded procedural worlds.

Every generator returns a heightfield on a square world of side `size` meters
sampled at `resolution`, origin (0, 0). Scenario worlds are rescaled to a target
maximum elevation gain so their class does not drift between seeds.
"""
import logging
import os

import numpy as np
from scipy.ndimage import gaussian_filter

from models.grids import ElevationMap
from modules.grid_parser import load_heightfield
from utils.errors import ConfigError

logger = logging.getLogger(__name__)

WORLD_NAMES = ('flat', 'ramp', 'hill', 'rough_patch', 'wall',
               'scenario_1', 'scenario_2', 'scenario_3')

# Target EG_max (m) per scenario world
SCENARIO_GAINS = {
    'scenario_1': 0.8,
    'scenario_2': 1.6,
    'scenario_3': 3.5,
}

RAMP_SLOPE = 0.1
WALL_HEIGHT = 2.0
WALL_THICKNESS = 1.0
ROUGH_AMPLITUDE = 0.04
MOUND_EDGE = 0.5


def world_axes(size, resolution):
    """World x and y coordinates of every cell, as two grids (rows = y)."""
    count = int(round(size / resolution)) + 1
    coords = np.arange(count, dtype=float) * resolution
    xs, ys = np.meshgrid(coords, coords, indexing='xy')
    return xs, ys


def rescale_gain(heights, gain):
    """Shift to a zero minimum and scale so max - min equals gain."""
    low = heights.min()
    span = heights.max() - low
    if span <= 0.0:
        return np.zeros_like(heights)
    return (heights - low) / span * gain


def smooth_noise(shape, rng, sigma_cells):
    """Unit-variance Gaussian noise low-passed with a Gaussian kernel."""
    noise = gaussian_filter(rng.standard_normal(shape), sigma_cells, mode='reflect')
    std = noise.std()
    return noise / std if std > 0 else noise


def rough_patch_field(xs, ys, center, radius, resolution, rng, amplitude=ROUGH_AMPLITUDE):
    """Fine-grained bumps fading out over a disk of `radius` around `center`."""
    texture = smooth_noise(xs.shape, rng, sigma_cells=max(0.15 / resolution, 0.5))
    distance_sq = (xs - center[0]) ** 2 + (ys - center[1]) ** 2
    envelope = np.exp(-distance_sq / (2.0 * (radius / 2.0) ** 2))
    return amplitude * texture * envelope


def _scatter_patches(xs, ys, size, resolution, rng, count):
    field = np.zeros_like(xs)
    for _ in range(count):
        center = (rng.uniform(0.3 * size, 0.75 * size), rng.uniform(0.25 * size, 0.75 * size))
        radius = rng.uniform(0.08 * size, 0.14 * size)
        field += rough_patch_field(xs, ys, center, radius, resolution, rng)
    return field


def flat_world(xs, ys, size, resolution, rng):
    return np.zeros_like(xs)


def ramp_world(xs, ys, size, resolution, rng):
    """Constant slope climbing along +x."""
    return RAMP_SLOPE * xs


def hill_world(xs, ys, size, resolution, rng):
    """A single 1 m Gaussian hill in the middle of the world."""
    spread = size / 8.0
    distance_sq = (xs - size / 2.0) ** 2 + (ys - size / 2.0) ** 2
    return np.exp(-distance_sq / (2.0 * spread ** 2))


def rough_patch_world(xs, ys, size, resolution, rng):
    return rough_patch_field(xs, ys, (size / 2.0, size / 2.0), size / 6.0, resolution, rng)


def wall_world(xs, ys, size, resolution, rng):
    """Full-width wall across the middle, perpendicular to +x."""
    middle = size / 2.0
    band = np.abs(xs - middle) <= WALL_THICKNESS / 2.0
    return np.where(band, WALL_HEIGHT, 0.0)


def undulating_world(xs, ys, size, resolution, rng, patches):
    """Smooth rolling terrain plus scattered rough surfaces."""
    base = smooth_noise(xs.shape, rng, sigma_cells=2.0 / resolution)
    base = rescale_gain(base, 1.0)
    return base + _scatter_patches(xs, ys, size, resolution, rng, patches)


def mound_world(xs, ys, size, resolution, rng):
    """
    A narrow steep-sided mound astride the middle of the course.

    A rough patch sits on the approach so every route crosses rough ground
    before reaching the mound; gentle undulation covers the rest.
    """
    center = (size / 2.0, size / 2.0 + rng.uniform(-0.02 * size, 0.02 * size))
    radius = rng.uniform(0.04 * size, 0.05 * size)
    distance = np.hypot(xs - center[0], ys - center[1])
    mound = 0.5 * (1.0 + np.tanh((radius - distance) / MOUND_EDGE))
    rolling = 0.05 * rescale_gain(smooth_noise(xs.shape, rng, sigma_cells=2.0 / resolution), 1.0)
    approach = (0.3 * size, size / 2.0 + rng.uniform(-0.03 * size, 0.03 * size))
    patch = rough_patch_field(xs, ys, approach, 0.1 * size, resolution, rng,
                              amplitude=0.5 * ROUGH_AMPLITUDE)
    return mound + rolling + patch


def generate_world(name, size=24.0, resolution=0.25, seed=0, gain=None):
    """
    Build a named procedural world.

    Args:
        name: One of WORLD_NAMES
        size: Side length in meters
        resolution: Cell size in meters
        seed: Seed of the generator's random stream
        gain: Target EG_max; scenario worlds default to SCENARIO_GAINS

    Returns:
        ElevationMap

    Raises:
        ConfigError: Unknown generator name
    """
    rng = np.random.default_rng(seed)
    xs, ys = world_axes(size, resolution)

    if name == 'flat':
        heights = flat_world(xs, ys, size, resolution, rng)
    elif name == 'ramp':
        heights = ramp_world(xs, ys, size, resolution, rng)
    elif name == 'hill':
        heights = hill_world(xs, ys, size, resolution, rng)
    elif name == 'rough_patch':
        heights = rough_patch_world(xs, ys, size, resolution, rng)
    elif name == 'wall':
        heights = wall_world(xs, ys, size, resolution, rng)
    elif name == 'scenario_1':
        heights = undulating_world(xs, ys, size, resolution, rng, patches=3)
    elif name == 'scenario_2':
        heights = undulating_world(xs, ys, size, resolution, rng, patches=3)
    elif name == 'scenario_3':
        heights = mound_world(xs, ys, size, resolution, rng)
    else:
        raise ConfigError(f"unknown world generator {name!r}; choose from {', '.join(WORLD_NAMES)}")

    if gain is None:
        gain = SCENARIO_GAINS.get(name)
    if gain is not None:
        heights = rescale_gain(heights, gain)
    return ElevationMap(heights, resolution, (0.0, 0.0))


def build_world(scenario, seed=0):
    """
    World for one episode of a scenario.

    Generator worlds are rebuilt from the episode seed; grid files are loaded as is.

    Raises:
        ConfigError: Unknown generator or missing grid file
    """
    if scenario.world in WORLD_NAMES:
        logger.debug('generating world %s (seed %d)', scenario.world, seed)
        return generate_world(scenario.world, scenario.world_size, scenario.world_resolution,
                              seed, scenario.world_gain)
    if not os.path.exists(scenario.world):
        raise ConfigError(
            f"world {scenario.world!r} is neither a generator ({', '.join(WORLD_NAMES)}) nor a file")
    return load_heightfield(os.fspath(scenario.world))
