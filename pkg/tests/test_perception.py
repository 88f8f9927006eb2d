import math

import numpy as np
import pytest

from models.grids import AttentionMap, ElevationMap
from models.robot import Pose2D
from modules.perception import (
    ReferenceAttention,
    SnapshotAttention,
    UniformAttention,
    compose_costmap,
    directional_emphasis,
    preprocess_elevation,
    reference_attention,
    write_pgm,
)
from modules.terrain import robot_centric_window
from utils.errors import DimensionError, GridValidationError


@pytest.fixture
def rough_window():
    rng = np.random.default_rng(11)
    heights = rng.normal(scale=0.4, size=(21, 21))
    heights -= heights[10, 10]
    return ElevationMap(heights, 0.25, (-2.5, -2.5))


def test_all_ones_attention_reproduces_elevation_channel(rough_window):
    ones = AttentionMap(np.ones(rough_window.shape))
    costmap = compose_costmap(ones, rough_window)
    np.testing.assert_array_equal(costmap.values, preprocess_elevation(rough_window))


def test_all_zeros_attention_annihilates(rough_window):
    zeros = AttentionMap(np.zeros(rough_window.shape))
    costmap = compose_costmap(zeros, rough_window)
    assert not costmap.values.any()


def test_preprocess_range(rough_window):
    channel = preprocess_elevation(rough_window)
    assert channel.min() == 0.0
    assert channel.max() == 1.0
    flat = ElevationMap(np.zeros((5, 5)), 0.25)
    assert not preprocess_elevation(flat).any()


def test_compose_shape_mismatch(rough_window):
    with pytest.raises(DimensionError):
        compose_costmap(AttentionMap(np.ones((5, 5))), rough_window)


def test_attention_range_cites_cell():
    values = np.zeros((3, 3))
    values[2, 1] = -0.1
    with pytest.raises(GridValidationError) as excinfo:
        AttentionMap(values)
    assert excinfo.value.cell == (2, 1)


def test_directional_emphasis_peaks_toward_goal():
    weights = directional_emphasis(21, 0.0)
    assert weights[10, 10] == 1.0
    assert weights[15, 10] == pytest.approx(1.0)
    sigma = math.pi / 4
    assert weights[5, 10] == pytest.approx(math.exp(-math.pi ** 2 / (2 * sigma ** 2)))
    left = directional_emphasis(21, math.pi / 2)
    assert left[10, 15] == pytest.approx(1.0)


def test_reference_attention_on_flat_window_is_zero():
    window = ElevationMap(np.zeros((11, 11)), 0.25)
    assert not reference_attention(window, 0.3).values.any()


def test_reference_attention_prefers_goal_side(plane_world):
    world = plane_world(0.3, 0.2)
    window = robot_centric_window(world, Pose2D(12.0, 12.0, 0.0), 21)
    attention = reference_attention(window, 0.0)
    assert attention.values.max() <= 1.0
    assert attention.values.min() >= 0.0
    assert attention.values[16, 10] > attention.values[4, 10]


def test_reference_attention_rejects_non_square():
    with pytest.raises(DimensionError):
        reference_attention(ElevationMap(np.zeros((5, 7)), 0.25), 0.0)


def test_providers(rough_window):
    uniform = UniformAttention()(rough_window, 1.0)
    np.testing.assert_array_equal(uniform.values, np.ones(rough_window.shape))
    reference = ReferenceAttention()(rough_window, 0.2)
    np.testing.assert_array_equal(reference.values, reference_attention(rough_window, 0.2).values)

    snapshot = AttentionMap(np.full(rough_window.shape, 0.5))
    assert SnapshotAttention(snapshot)(rough_window, 0.0) is snapshot
    with pytest.raises(DimensionError):
        SnapshotAttention(AttentionMap(np.ones((3, 3))))(rough_window, 0.0)


def test_write_pgm(tmp_path):
    grid = np.array([[1.0, 0.0, 0.0], [0.0, 0.5, 0.0]])
    path = tmp_path / 'grid.pgm'
    write_pgm(grid, path)
    data = path.read_bytes()
    header = b"P5\n3 2\n255\n"
    assert data.startswith(header)
    pixels = np.frombuffer(data[len(header):], dtype=np.uint8).reshape(2, 3)
    # row 0 is drawn at the bottom
    assert pixels[1, 0] == 255
    assert pixels[0, 1] == 128


def test_write_pgm_signed_grid(tmp_path):
    path = tmp_path / 'signed.pgm'
    write_pgm(np.array([[-1.0, 1.0]]), path)
    pixels = path.read_bytes()[-2:]
    assert pixels == bytes([0, 255])


@pytest.mark.parametrize('goal_direction', [0.0, 0.3, -1.2, 2.9])
def test_reference_attention_turns_with_the_window(rough_window, goal_direction):
    attention = reference_attention(rough_window, goal_direction)
    turned_window = ElevationMap(np.rot90(rough_window.heights), 0.25, (-2.5, -2.5))
    turned = reference_attention(turned_window, goal_direction + math.pi / 2)
    np.testing.assert_allclose(turned.values, np.rot90(attention.values), rtol=0.0, atol=1e-12)


def test_cost_never_drops_when_attention_rises(rough_window):
    rng = np.random.default_rng(41)
    values = rng.uniform(0.0, 1.0, size=rough_window.shape)
    base = compose_costmap(AttentionMap(values), rough_window).values
    for _ in range(50):
        cell = tuple(rng.integers(0, 21, size=2))
        raised = values.copy()
        raised[cell] = rng.uniform(values[cell], 1.0)
        cost = compose_costmap(AttentionMap(raised), rough_window).values
        assert cost[cell] >= base[cell]
        unchanged = np.ones(values.shape, dtype=bool)
        unchanged[cell] = False
        np.testing.assert_array_equal(cost[unchanged], base[unchanged])


def test_cost_never_drops_when_relative_height_grows(rough_window):
    rng = np.random.default_rng(43)
    attention = AttentionMap(rng.uniform(0.0, 1.0, size=rough_window.shape))
    base = compose_costmap(attention, rough_window).values
    for _ in range(50):
        cell = tuple(rng.integers(0, 21, size=2))
        heights = rough_window.heights.copy()
        heights[cell] *= rng.uniform(1.0, 3.0)
        cost = compose_costmap(attention, ElevationMap(heights, 0.25, (-2.5, -2.5))).values
        assert cost[cell] >= base[cell]
