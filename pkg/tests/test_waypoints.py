import math
import statistics
import time

import numpy as np
import pytest
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from models.grids import CostMap
from models.robot import Pose2D
from modules.waypoints import (
    NEIGHBOURS,
    goal_cell,
    least_cost_path,
    nearest_free_cell,
    path_cost,
    select_waypoint,
    waypoint_towards,
)
from utils.errors import NoPathError, OutOfBoundsError

EPSILON = 1e-3


def reference_costs(values, start, epsilon=EPSILON, threshold=None):
    """All-targets shortest path costs from `start` with scipy's Dijkstra."""
    rows, cols = values.shape
    blocked = np.zeros(values.shape, dtype=bool) if threshold is None else values >= threshold
    heads, tails, weights = [], [], []
    for r in range(rows):
        for c in range(cols):
            if blocked[r, c] and (r, c) != start:
                continue
            for d_row, d_col, length in NEIGHBOURS:
                nr, nc = r + d_row, c + d_col
                if 0 <= nr < rows and 0 <= nc < cols and not blocked[nr, nc]:
                    heads.append(r * cols + c)
                    tails.append(nr * cols + nc)
                    weights.append((values[nr, nc] + epsilon) * length)
    graph = csr_matrix((weights, (heads, tails)), shape=(rows * cols, rows * cols))
    return dijkstra(graph, directed=True, indices=start[0] * cols + start[1])


def test_straight_path_on_free_map():
    costmap = CostMap(np.zeros((11, 11)), 0.25)
    path = least_cost_path(costmap, (10, 5))
    assert path.cells == tuple((row, 5) for row in range(5, 11))
    assert path.cost == pytest.approx(5 * EPSILON)


def test_diagonal_path():
    costmap = CostMap(np.zeros((5, 5)), 1.0)
    path = least_cost_path(costmap, (4, 4))
    assert path.cells == ((2, 2), (3, 3), (4, 4))


def test_equal_cost_ties_go_to_smallest_sequence():
    costmap = CostMap(np.zeros((5, 5)), 1.0)
    path = least_cost_path(costmap, (4, 3))
    assert path.cells == ((2, 2), (3, 2), (4, 3))


def test_path_to_robot_cell():
    costmap = CostMap(np.ones((5, 5)), 1.0)
    path = least_cost_path(costmap, (2, 2), obstacle_threshold=0.8)
    assert path.cells == ((2, 2),)
    assert path.cost == 0.0


def test_matches_shortest_path_oracle():
    rng = np.random.default_rng(5)
    for _ in range(100):
        values = rng.uniform(0.0, 1.0, size=(40, 40))
        costmap = CostMap(values, 0.25)
        goal = tuple(int(v) for v in rng.integers(0, 40, size=2))
        path = least_cost_path(costmap, goal, epsilon=EPSILON)
        expected = reference_costs(values, costmap.center)[goal[0] * 40 + goal[1]]
        assert path.cost == pytest.approx(expected, rel=1e-12, abs=1e-12)
        assert path_cost(costmap, path.cells, EPSILON) == pytest.approx(path.cost, rel=1e-12, abs=1e-12)


def test_masked_oracle():
    rng = np.random.default_rng(8)
    for _ in range(20):
        values = rng.uniform(0.0, 1.0, size=(25, 25))
        costmap = CostMap(values, 0.25)
        goal = tuple(int(v) for v in rng.integers(0, 25, size=2))
        expected = reference_costs(values, costmap.center, threshold=0.8)[goal[0] * 25 + goal[1]]
        if goal != costmap.center and (values[goal] >= 0.8 or math.isinf(expected)):
            with pytest.raises(NoPathError):
                least_cost_path(costmap, goal, obstacle_threshold=0.8)
        else:
            path = least_cost_path(costmap, goal, obstacle_threshold=0.8)
            assert path.cost == pytest.approx(expected, rel=1e-12, abs=1e-12)
            assert all(values[cell] < 0.8 for cell in path.cells[1:])


def test_wall_blocks_only_with_masking():
    values = np.zeros((11, 11))
    values[7, :] = 1.0
    costmap = CostMap(values, 0.25)
    with pytest.raises(NoPathError):
        least_cost_path(costmap, (10, 5), obstacle_threshold=0.8)
    path = least_cost_path(costmap, (10, 5))
    assert (7, 5) in path.cells


def test_goal_outside_grid():
    with pytest.raises(OutOfBoundsError):
        least_cost_path(CostMap(np.zeros((5, 5)), 1.0), (5, 0))


def test_goal_cell_projection():
    pose = Pose2D(0.0, 0.0, 0.0)
    assert goal_cell(pose, (2.0, 1.0), 11, 1.0) == (7, 6)
    assert goal_cell(pose, (100.0, 0.0), 11, 1.0) == (10, 5)
    assert goal_cell(pose, (0.0, 100.0), 11, 1.0) == (5, 10)
    assert goal_cell(pose, (-100.0, 0.0), 11, 1.0) == (0, 5)
    assert goal_cell(pose, (100.0, 50.0), 11, 1.0) == (10, 8)
    turned = Pose2D(0.0, 0.0, math.pi / 2)
    assert goal_cell(turned, (0.0, 100.0), 11, 1.0) == (10, 5)


def test_select_waypoint_lookahead():
    costmap = CostMap(np.zeros((21, 21)), 0.25)
    path = least_cost_path(costmap, (20, 10), pose=Pose2D(5.0, 2.0, 0.0))
    assert select_waypoint(path, 1.0) == pytest.approx((6.0, 2.0))
    # shorter than the look-ahead: the last cell
    assert select_waypoint(path, 10.0) == pytest.approx((7.5, 2.0))


def test_nearest_free_cell():
    values = np.ones((5, 5))
    values[0, 4] = 0.0
    values[4, 0] = 0.0
    assert nearest_free_cell(CostMap(values, 1.0), (1, 3), 0.8) == (0, 4)
    with pytest.raises(NoPathError):
        nearest_free_cell(CostMap(np.ones((3, 3)), 1.0), (0, 0), 0.8)


def test_blocked_goal_is_relocated():
    values = np.zeros((11, 11))
    values[8:, :] = 1.0
    costmap = CostMap(values, 1.0)
    path, waypoint = waypoint_towards(costmap, Pose2D(0.0, 0.0, 0.0), (50.0, 0.0), 1.5, 0.8)
    assert path.goal == (7, 5)
    assert waypoint == pytest.approx((2.0, 0.0))


@pytest.mark.parametrize('target', [(39, 20), (39, 39), (0, 0)])
def test_query_time_on_flat_window(target):
    # Flat maps tie on every relaxation
    costmap = CostMap(np.zeros((40, 40)), 0.25)
    least_cost_path(costmap, target)
    timings = []
    for _ in range(21):
        started = time.perf_counter()
        least_cost_path(costmap, target)
        timings.append(time.perf_counter() - started)
    assert statistics.median(timings) < 0.005


def test_flat_window_path_is_deterministic_and_optimal():
    costmap = CostMap(np.zeros((40, 40)), 0.25)
    first = least_cost_path(costmap, (39, 27))
    again = least_cost_path(costmap, (39, 27))
    assert first.cells == again.cells
    assert first.cost == path_cost(costmap, first.cells)
    assert first.cost == pytest.approx(reference_costs(costmap.values, (20, 20))[39 * 40 + 27])
    # 19 rows ahead and 7 columns over: 7 diagonal moves, 12 straight
    assert len(first.cells) == 20
