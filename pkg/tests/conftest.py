import numpy as np
import pytest

from models.grids import ElevationMap
from models.robot import Pose2D
from models.scenario import ScenarioSpec
from models.settings import PlannerLimits, SimSettings


@pytest.fixture
def limits():
    return PlannerLimits()


@pytest.fixture
def flat_world():
    """24 m x 24 m flat world at 0.25 m."""
    return ElevationMap(np.zeros((97, 97)), 0.25, (0.0, 0.0))


@pytest.fixture
def plane_world():
    """Factory for analytic planes h = a * x + b * y."""
    def build(a, b, size=97, resolution=0.25):
        coords = np.arange(size, dtype=float) * resolution
        xs, ys = np.meshgrid(coords, coords, indexing='xy')
        return ElevationMap(a * xs + b * ys, resolution, (0.0, 0.0))
    return build


@pytest.fixture
def small_scenario():
    """Factory for short flat scenarios on a 12 m world."""
    def build(goal=(8.0, 6.0), start=(3.0, 6.0, 0.0), world='flat', **sim):
        sim_settings = SimSettings(**{'max_steps': 200, **sim})
        return ScenarioSpec(
            name='small',
            world=world,
            start=Pose2D(*start),
            goal=goal,
            world_size=12.0,
            sim=sim_settings,
        )
    return build
