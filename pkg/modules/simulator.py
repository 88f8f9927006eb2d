"""
Kinematic heightfield simulator and closed-loop episode runner.

The robot is a unicycle. Attitude comes from a least-squares plane fit over
the robot footprint; the RMS residual of that fit is the local roughness that
drives IMU noise. Each control step is integrated in IMU-rate sub-steps with
the command ramped linearly from the previous one.
"""
import logging
import math
from functools import lru_cache

import numpy as np
from scipy import ndimage

from models.episode import EpisodeLog, StepRecord
from models.robot import Pose2D, RobotState
from models.settings import SimSettings
from modules.dwa_planner import plan_velocity, recovery_command
from modules.perception import SnapshotAttention, compose_costmap
from modules.rewards import (
    AttitudeObservation,
    ImuBuffer,
    VibrationMeasure,
    detrend_window,
    pca_sigma,
    step_rewards,
)
from modules.terrain import robot_centric_window
from modules.waypoints import waypoint_towards
from utils.errors import ConfigError, NoPathError, OutOfBoundsError
from utils.geometry import arc_displacement, heading_basis, normalize_angle, to_robot_frame
from utils.validators import scenario_class_matches, snapshot_fits

logger = logging.getLogger(__name__)


@lru_cache(maxsize=8)
def footprint_stencil(reach, rings):
    """
    Offsets (dx, dy) of a polar sampling stencil: the center plus `rings`
    concentric rings, ring k of radius k * reach / rings holding 8k points.
    """
    dx, dy = [0.0], [0.0]
    for k in range(1, rings + 1):
        angles = np.arange(8 * k) * (2.0 * math.pi / (8 * k))
        dx.extend(k * reach / rings * np.cos(angles))
        dy.extend(k * reach / rings * np.sin(angles))
    return np.array(dx), np.array(dy)


def surface_patch(world, x, y, heading, radius):
    """
    Plane fit over the robot footprint around (x, y).

    Heights are sampled bilinearly on a fixed polar stencil, so attitude and
    roughness vary continuously with the pose. The radius is widened to 1.5
    cells on coarse maps.

    Returns:
        tuple: (roll, pitch, roughness); roll > 0 when the left side is higher,
        pitch > 0 nose-up, roughness = RMS fit residual in meters
    """
    res = world.resolution
    reach = max(radius, 1.5 * res)
    dx, dy = footprint_stencil(reach, max(int(math.ceil(reach / res)), 2))
    row0, col0 = world.fractional_cell(x, y)
    heights = ndimage.map_coordinates(
        world.heights, [row0 + dy / res, col0 + dx / res], order=1, mode='nearest')
    heights = heights - heights[0]
    design = np.column_stack([dx, dy, np.ones(heights.size)])
    coef, _, _, _ = np.linalg.lstsq(design, heights, rcond=None)
    residual = heights - design @ coef
    roughness = float(np.sqrt(np.mean(residual ** 2)))

    cos_h, sin_h = heading_basis(heading)
    slope_forward = coef[0] * cos_h + coef[1] * sin_h
    slope_left = -coef[0] * sin_h + coef[1] * cos_h
    return float(math.atan(slope_left)), float(math.atan(slope_forward)), roughness


def step(state, v, omega, dt, world, settings=None):
    """
    Advance the robot by one interval under constant (v, omega).

    Returns:
        RobotState: New pose and terrain attitude; v_a, omega_a set to the command

    Raises:
        OutOfBoundsError: The new pose leaves the world
    """
    settings = settings or SimSettings()
    pose = state.pose
    dx, dy, dtheta = arc_displacement(v, omega, pose.heading, dt)
    new_pose = Pose2D(pose.x + dx, pose.y + dy, pose.heading + dtheta)
    if not world.contains(new_pose.x, new_pose.y):
        raise OutOfBoundsError(f"robot left the world at ({new_pose.x:.3f}, {new_pose.y:.3f})")
    roll, pitch, _ = surface_patch(world, new_pose.x, new_pose.y, new_pose.heading,
                                   settings.footprint_radius)
    return RobotState(new_pose, roll, pitch, v, omega)


def synth_imu(state_prev, state_new, world, dt, rng, settings=None, roughness=None):
    """
    One synthetic IMU sample (accel x/y/z, gyro x/y/z) in the body frame.

    Acceleration is the finite-difference body acceleration plus gravity
    projected through roll and pitch, with zero-mean noise of standard deviation
    k_noise * roughness * |v| on each accelerometer axis. Gyro rates are finite
    differences of roll, pitch and heading.
    """
    settings = settings or SimSettings()
    if roughness is None:
        _, _, roughness = surface_patch(world, state_new.pose.x, state_new.pose.y,
                                        state_new.pose.heading, settings.footprint_radius)
    g = settings.gravity
    roll, pitch = state_new.roll, state_new.pitch
    accel = np.array([
        (state_new.v_a - state_prev.v_a) / dt + g * math.sin(pitch),
        state_new.v_a * state_new.omega_a + g * math.sin(roll) * math.cos(pitch),
        g * math.cos(roll) * math.cos(pitch),
    ])
    noise = rng.standard_normal(3) * (settings.k_noise * roughness * abs(state_new.v_a))
    gyro = np.array([
        (state_new.roll - state_prev.roll) / dt,
        (state_new.pitch - state_prev.pitch) / dt,
        normalize_angle(state_new.pose.heading - state_prev.pose.heading) / dt,
    ])
    return np.concatenate([accel + noise, gyro])


def terrain_component(sample, state_prev, state_new, dt):
    """
    IMU sample with the robot's own commanded motion removed.

    Subtracts the commanded forward acceleration, the centripetal term v * omega
    and the yaw rate, leaving gravity projection, attitude rates and terrain
    noise. This is what the vibration measure sees.
    """
    own = np.zeros(6)
    own[0] = (state_new.v_a - state_prev.v_a) / dt
    own[1] = state_new.v_a * state_new.omega_a
    own[5] = normalize_angle(state_new.pose.heading - state_prev.pose.heading) / dt
    return np.asarray(sample, dtype=float) - own


def is_flipped(state, flip_bound):
    """True once roll or pitch exceeds the flip bound."""
    return not AttitudeObservation(state.roll, state.pitch).is_stable(flip_bound)


def initial_state(world, start, settings):
    roll, pitch, _ = surface_patch(world, start.x, start.y, start.heading, settings.footprint_radius)
    return RobotState(start, roll, pitch, 0.0, 0.0)


def check_scenario(scenario, world, provider=None):
    """
    Surface configuration problems before the first step.

    Raises:
        ConfigError: Inconsistent scenario, world, or provider
    """
    if not world.contains(scenario.start.x, scenario.start.y):
        raise ConfigError(f"start ({scenario.start.x}, {scenario.start.y}) lies outside the world")
    if not world.contains(*scenario.goal):
        raise ConfigError(f"goal {scenario.goal} lies outside the world")
    if scenario.limits.dt <= 0:
        raise ConfigError('control interval dt must be positive for simulation')
    checks = [scenario_class_matches(scenario.scenario_class, world)]
    if isinstance(provider, SnapshotAttention):
        checks.append(snapshot_fits(provider.attention_map.shape, scenario.sim.window_size))
    for check in checks:
        if not check['valid']:
            raise ConfigError(check['message'])


def perceive(world, pose, goal, provider, window_size):
    """
    One perception pass at a pose.

    Returns:
        tuple: (elevation window, AttentionMap, CostMap)
    """
    window = robot_centric_window(world, pose, window_size)
    attention = provider(window, pose.bearing_to(*goal))
    return window, attention, compose_costmap(attention, window)


def _cell_cost(costmap, pose, x, y):
    forward, left = to_robot_frame(pose, x, y)
    center_row, center_col = costmap.center
    row = center_row + int(math.floor(forward / costmap.resolution + 0.5))
    col = center_col + int(math.floor(left / costmap.resolution + 0.5))
    rows, cols = costmap.shape
    if 0 <= row < rows and 0 <= col < cols:
        return float(costmap.values[row, col])
    return 0.0


def run_episode(scenario, world, provider, use_waypoints=True, constrained=True,
                seed=0, episode=0, capture_maps=False):
    """
    Run one closed-loop episode.

    Each control step: window -> attention -> cost-map -> least-cost waypoint
    -> plan_velocity -> IMU-rate integration -> vibration update.

    Args:
        scenario: ScenarioSpec
        world: ElevationMap the episode runs on
        provider: AttentionProvider
        use_waypoints: Steer at least-cost waypoints (False steers at the goal)
        constrained: Apply the flip-over and vibration constraints
        seed: Seed of the IMU noise stream
        episode: Episode index recorded in the log
        capture_maps: Keep the first step's E/A/C grids in log.maps

    Returns:
        EpisodeLog with a terminal status
    """
    check_scenario(scenario, world, provider)
    limits, sim, weights = scenario.limits, scenario.sim, scenario.weights
    goal = scenario.goal
    rng = np.random.default_rng(seed)
    imu = ImuBuffer(sim.imu_window)
    substeps = max(int(round(sim.imu_rate * limits.dt)), 1)
    dt_sub = limits.dt / substeps
    threshold = limits.c_obs if sim.obstacle_masking else None

    state = initial_state(world, scenario.start, sim)
    vibration = VibrationMeasure.zero()
    last_sample = np.zeros(6)
    log = EpisodeLog(episode, seed, scenario.start_goal_distance - sim.success_radius)

    for k in range(sim.max_steps):
        window, attention, costmap = perceive(world, state.pose, goal, provider, sim.window_size)
        if capture_maps and k == 0:
            log.maps = {
                'elevation': window.heights,
                'attention': attention.values,
                'cost': costmap.values,
            }

        plan = None
        waypoint = goal
        if use_waypoints:
            try:
                _, waypoint = waypoint_towards(costmap, state.pose, goal, sim.lookahead,
                                               threshold, limits.path_epsilon)
            except NoPathError as e:
                logger.debug('step %d: %s', k, e)
                plan = recovery_command(state, goal, limits, status='no_path')
        if plan is None:
            plan = plan_velocity(state, costmap, waypoint, vibration, limits, constrained)
        rewards = step_rewards(state, goal, window, vibration, weights, sim.n_h)

        status = None
        travelled = 0.0
        planning_pose = state.pose
        v0, omega0 = state.v_a, state.omega_a
        for s in range(1, substeps + 1):
            time = k * limits.dt + s * dt_sub
            fraction = s / substeps
            v = v0 + (plan.v - v0) * fraction
            omega = omega0 + (plan.omega - omega0) * fraction
            try:
                new_state = step(state, v, omega, dt_sub, world, sim)
            except OutOfBoundsError:
                status = 'collision'
                break
            _, _, roughness = surface_patch(world, new_state.pose.x, new_state.pose.y,
                                            new_state.pose.heading, sim.footprint_radius)
            last_sample = synth_imu(state, new_state, world, dt_sub, rng, sim, roughness)
            imu.push(terrain_component(last_sample, state, new_state, dt_sub))
            travelled += abs(v) * dt_sub
            state = new_state

            if is_flipped(state, sim.flip_bound):
                status = 'flip_over'
            elif _cell_cost(costmap, planning_pose, state.pose.x, state.pose.y) >= limits.c_obs:
                status = 'collision'
            elif state.pose.distance_to(*goal) < sim.success_radius:
                status = 'success'
            if status:
                break

        window_now = imu.window()
        if window_now is not None:
            vibration = pca_sigma(detrend_window(window_now))
        log.append(StepRecord(
            index=k,
            time=time,
            state=state,
            command=(plan.v, plan.omega),
            imu=tuple(last_sample),
            vibration=vibration.magnitude,
            distance=travelled,
            rewards=rewards,
            plan=plan.telemetry(),
        ))
        if status:
            log.terminate(status)
            break
    else:
        log.terminate('timeout')

    logger.debug('episode %d finished: %s after %d steps', episode, log.status, len(log.records))
    return log
