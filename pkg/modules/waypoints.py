"""
Least-cost waypoints on a robot-centric cost-map.

Cells are 8-connected. Entering cell v costs (C[v] + epsilon) * step, where step
is 1 for axial and sqrt(2) for diagonal moves. Ties between equal-cost paths
go to the path with fewer steps, then to the lexicographically smallest cell
sequence.
"""
import heapq
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from models.robot import Pose2D
from utils.errors import ArgumentError, NoPathError, OutOfBoundsError
from utils.geometry import to_robot_frame, to_world_frame

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
NEIGHBOURS = (
    (-1, -1, SQRT2), (-1, 0, 1.0), (-1, 1, SQRT2),
    (0, -1, 1.0), (0, 1, 1.0),
    (1, -1, SQRT2), (1, 0, 1.0), (1, 1, SQRT2),
)


@dataclass(frozen=True)
class WaypointPath:
    """
    Cell path from the robot cell to the goal cell.

    `pose` anchors the window in the world; the default identity pose makes
    world coordinates equal robot-frame (forward, left) coordinates.
    """

    cells: tuple
    cost: float
    resolution: float
    center: tuple
    pose: Pose2D = field(default_factory=lambda: Pose2D(0.0, 0.0, 0.0))

    def __post_init__(self):
        if not self.cells:
            raise ArgumentError('a path needs at least one cell')
        if tuple(self.cells[0]) != tuple(self.center):
            raise ArgumentError('a path must start at the robot cell')

    def cell_to_world(self, cell):
        forward = (cell[0] - self.center[0]) * self.resolution
        left = (cell[1] - self.center[1]) * self.resolution
        return to_world_frame(self.pose, forward, left)

    @property
    def goal(self):
        return self.cells[-1]


def least_cost_path(costmap, goal_cell, obstacle_threshold=None, epsilon=1e-3, pose=None):
    """
    Minimum-cost 8-connected path from the window center to goal_cell.

    Args:
        costmap: Robot-centric CostMap
        goal_cell: (row, col) inside the grid
        obstacle_threshold: Cells with cost >= threshold are impassable (None disables masking)
        epsilon: Uniform cost per unit step
        pose: World pose of the window, used for waypoint coordinates

    Returns:
        WaypointPath

    Raises:
        OutOfBoundsError: goal_cell lies outside the grid
        NoPathError: Every route to the goal is blocked
    """
    rows, cols = costmap.shape
    goal = (int(goal_cell[0]), int(goal_cell[1]))
    if not (0 <= goal[0] < rows and 0 <= goal[1] < cols):
        raise OutOfBoundsError(f"goal cell {goal} lies outside the {rows}x{cols} cost-map")
    start = costmap.center

    # Search runs on the grid padded with a blocked border, cells as flat indices.
    # Flat index order equals (row, col) order, so index tuples compare like cell paths.
    width = cols + 2
    entry = np.pad(costmap.values + epsilon, 1).ravel().tolist()
    if obstacle_threshold is None:
        interior = np.zeros(costmap.shape, dtype=bool)
    else:
        interior = costmap.values >= obstacle_threshold
    blocked = np.pad(interior, 1, constant_values=True).ravel().tolist()
    source = (start[0] + 1) * width + start[1] + 1
    target = (goal[0] + 1) * width + goal[1] + 1
    if target != source and blocked[target]:
        raise NoPathError(f"goal cell {goal} is an obstacle")
    moves = [(d_row * width + d_col, length) for d_row, d_col, length in NEIGHBOURS]

    size = len(entry)
    best = [math.inf] * size
    steps = [0] * size
    parent = [-1] * size
    done = bytearray(size)
    # Cell sequence of every settled node; ties compare these tuples
    settled = {}
    best[source] = 0.0
    frontier = [(0.0, 0, source)]

    while frontier:
        cost, count, current = heapq.heappop(frontier)
        if done[current]:
            continue
        done[current] = 1
        before = parent[current]
        key = settled[before] + (current,) if before >= 0 else (current,)
        settled[current] = key
        if current == target:
            break
        for offset, length in moves:
            nxt = current + offset
            if blocked[nxt] or done[nxt]:
                continue
            new_cost = cost + entry[nxt] * length
            new_count = count + 1
            old_cost = best[nxt]
            if new_cost > old_cost:
                continue
            if new_cost == old_cost:
                if new_count > steps[nxt]:
                    continue
                if new_count == steps[nxt] and key >= settled[parent[nxt]]:
                    continue
            best[nxt] = new_cost
            steps[nxt] = new_count
            parent[nxt] = current
            heapq.heappush(frontier, (new_cost, new_count, nxt))

    if not done[target]:
        raise NoPathError(f"no path from {start} to {goal}")
    cells = tuple((index // width - 1, index % width - 1) for index in settled[target])
    return WaypointPath(cells, best[target], costmap.resolution, start,
                        pose if pose is not None else Pose2D(0.0, 0.0, 0.0))


def path_cost(costmap, cells, epsilon=1e-3):
    """Cost of an explicit 8-connected cell sequence under the search's edge weights."""
    total = 0.0
    for (r0, c0), (r1, c1) in zip(cells, cells[1:]):
        if max(abs(r1 - r0), abs(c1 - c0)) != 1:
            raise ArgumentError(f"cells {(r0, c0)} and {(r1, c1)} are not 8-adjacent")
        length = SQRT2 if r1 != r0 and c1 != c0 else 1.0
        total += (float(costmap.values[r1, c1]) + epsilon) * length
    return total


def select_waypoint(path, lookahead):
    """
    First path cell at least `lookahead` meters of arc from the robot.

    Falls back to the last cell when the path is shorter.

    Returns:
        tuple: World point (x, y) of the chosen cell
    """
    if not lookahead > 0:
        raise ArgumentError(f"lookahead must be positive, got {lookahead}")
    chosen = path.cells[-1]
    travelled = 0.0
    for prev, cell in zip(path.cells, path.cells[1:]):
        travelled += math.hypot(cell[0] - prev[0], cell[1] - prev[1]) * path.resolution
        if travelled >= lookahead - 1e-12:
            chosen = cell
            break
    return path.cell_to_world(chosen)


def _round_half_up(value):
    return int(math.floor(value + 0.5))


def goal_cell(pose, goal, n, resolution):
    """
    Window cell for a world goal point.

    Goals beyond the window are projected along their bearing onto the
    window boundary.
    """
    forward, left = to_robot_frame(pose, *goal)
    center = n // 2
    low, high = -center, n - 1 - center
    d_forward, d_left = forward / resolution, left / resolution
    scale = 1.0
    for component in (d_forward, d_left):
        if component > high:
            scale = min(scale, high / component)
        elif component < low:
            scale = min(scale, low / component)
    row = min(max(center + _round_half_up(d_forward * scale), 0), n - 1)
    col = min(max(center + _round_half_up(d_left * scale), 0), n - 1)
    return row, col


def nearest_free_cell(costmap, cell, obstacle_threshold):
    """
    Closest cell below the obstacle threshold, ties to the smallest (row, col).

    Raises:
        NoPathError: Every cell is an obstacle
    """
    free = costmap.values < obstacle_threshold
    if not free.any():
        raise NoPathError('cost-map has no free cell')
    rows, cols = np.indices(costmap.shape)
    distance = (rows - cell[0]) ** 2 + (cols - cell[1]) ** 2
    distance = np.where(free, distance, np.iinfo(distance.dtype).max)
    index = int(np.argmin(distance))
    return divmod(index, costmap.shape[1])


def waypoint_towards(costmap, pose, goal, lookahead, obstacle_threshold=None, epsilon=1e-3):
    """
    Path and look-ahead waypoint toward a world goal.

    A projected goal that lands on an obstacle is moved to the nearest free cell.

    Returns:
        tuple: (WaypointPath, waypoint (x, y))
    """
    target = goal_cell(pose, goal, costmap.shape[0], costmap.resolution)
    if (obstacle_threshold is not None and target != costmap.center
            and costmap.values[target] >= obstacle_threshold):
        relocated = nearest_free_cell(costmap, target, obstacle_threshold)
        logger.debug('goal cell %s blocked, using %s', target, relocated)
        target = relocated
    path = least_cost_path(costmap, target, obstacle_threshold, epsilon, pose)
    return path, select_waypoint(path, lookahead)
