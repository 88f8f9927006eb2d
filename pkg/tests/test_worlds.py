import numpy as np
import pytest

from models.robot import Pose2D
from models.scenario import ScenarioSpec
from modules.grid_parser import save_heightfield
from modules.terrain import classify_elevation, eg_max
from modules.worlds import SCENARIO_GAINS, build_world, generate_world
from utils.errors import ConfigError


def test_flat_world_shape():
    world = generate_world('flat', 24.0, 0.25)
    assert world.shape == (97, 97)
    assert world.origin == (0.0, 0.0)
    assert not world.heights.any()


def test_wall_spans_the_middle():
    world = generate_world('wall', 24.0, 0.25)
    # columns are x = col * 0.25
    assert (world.heights[:, 46:51] == 2.0).all()
    assert not world.heights[:, 45].any()
    assert not world.heights[:, 51].any()


def test_ramp_slope():
    world = generate_world('ramp', 12.0, 0.5)
    assert world.heights[3, 10] == pytest.approx(0.5)
    assert eg_max(world) == pytest.approx(1.2)


@pytest.mark.parametrize('name,expected', [
    ('scenario_1', 'low'),
    ('scenario_2', 'medium'),
    ('scenario_3', 'high'),
])
def test_scenario_worlds_hit_their_class(name, expected):
    for seed in range(3):
        world = generate_world(name, seed=seed)
        assert eg_max(world) == pytest.approx(SCENARIO_GAINS[name])
        assert classify_elevation(eg_max(world)) == expected


def test_generation_is_seeded():
    first = generate_world('scenario_2', seed=7)
    again = generate_world('scenario_2', seed=7)
    other = generate_world('scenario_2', seed=8)
    np.testing.assert_array_equal(first.heights, again.heights)
    assert not np.array_equal(first.heights, other.heights)


def test_explicit_gain_overrides_default():
    world = generate_world('hill', 12.0, 0.25, gain=2.0)
    assert eg_max(world) == pytest.approx(2.0)


def test_unknown_generator():
    with pytest.raises(ConfigError) as excinfo:
        generate_world('volcano')
    assert 'volcano' in str(excinfo.value)


def test_build_world_from_file(tmp_path):
    ramp = generate_world('ramp', 6.0, 0.5)
    path = tmp_path / 'ramp.grid'
    save_heightfield(ramp, path)
    scenario = ScenarioSpec('file', str(path), Pose2D(1.0, 3.0), (5.0, 3.0))
    world = build_world(scenario)
    np.testing.assert_array_equal(world.heights, ramp.heights)
    assert world.resolution == 0.5


def test_build_world_missing_file(tmp_path):
    scenario = ScenarioSpec('missing', str(tmp_path / 'nope.grid'), Pose2D(1.0, 3.0), (5.0, 3.0))
    with pytest.raises(ConfigError):
        build_world(scenario)


def test_high_world_mound_sits_on_the_course():
    for seed in range(3):
        world = generate_world('scenario_3', seed=seed)
        row, col = np.unravel_index(np.argmax(world.heights), world.shape)
        x, y = world.cell_center(row, col)
        assert abs(x - 12.0) <= 1.0
        assert abs(y - 12.0) <= 1.5
        assert world.heights[world.world_to_cell(3.0, 12.0)] < 0.5
        assert world.heights[world.world_to_cell(21.0, 12.0)] < 0.5
