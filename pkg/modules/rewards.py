"""
Reward suite for terrain-aware navigation and the PCA vibration measure.

Components: dist and head (goal tracking), stable (roll/pitch), elev (heading
elevation gradient) and vibr (IMU vibration). The total is their weighted sum.
"""
import math
from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy import signal

from modules.terrain import heading_gradient_vector
from utils.errors import ArgumentError
from utils.geometry import normalize_angle

COMPONENTS = ('dist', 'head', 'stable', 'elev', 'vibr')
IMU_CHANNELS = ('accel_x', 'accel_y', 'accel_z', 'gyro_x', 'gyro_y', 'gyro_z')


@dataclass(frozen=True)
class GoalObservation:
    d_goal: float
    alpha_goal: float

    def __post_init__(self):
        if not (math.isfinite(self.d_goal) and self.d_goal >= 0):
            raise ArgumentError(f"d_goal must be >= 0, got {self.d_goal}")
        object.__setattr__(self, 'alpha_goal', normalize_angle(self.alpha_goal))


@dataclass(frozen=True)
class AttitudeObservation:
    roll: float
    pitch: float

    def __post_init__(self):
        for name in ('roll', 'pitch'):
            value = getattr(self, name)
            if not (math.isfinite(value) and abs(value) < math.pi / 2):
                raise ArgumentError(f"{name} must lie in (-pi/2, pi/2), got {value}")

    def is_stable(self, flip_bound):
        """False once roll or pitch exceeds the flip bound."""
        return max(abs(self.roll), abs(self.pitch)) <= flip_bound


@dataclass(frozen=True, eq=False)
class ImuWindow:
    """T x 6 IMU samples, oldest first: accel x/y/z (m/s^2) then gyro x/y/z (rad/s)."""

    samples: np.ndarray

    def __post_init__(self):
        samples = np.array(self.samples, dtype=float)
        if samples.ndim != 2 or samples.shape[1] != 6:
            raise ArgumentError(f"IMU window must be T x 6, got shape {samples.shape}")
        if samples.shape[0] < 2:
            raise ArgumentError('IMU window needs at least 2 samples')
        if not np.all(np.isfinite(samples)):
            raise ArgumentError('IMU window contains non-finite samples')
        samples.flags.writeable = False
        object.__setattr__(self, 'samples', samples)


class ImuBuffer:
    """Bounded FIFO of the most recent IMU samples."""

    def __init__(self, capacity):
        self.samples = deque(maxlen=capacity)

    def push(self, sample):
        self.samples.append(tuple(float(v) for v in sample))

    def __len__(self):
        return len(self.samples)

    def window(self):
        """Current ImuWindow, or None with fewer than two samples."""
        if len(self.samples) < 2:
            return None
        return ImuWindow(np.array(self.samples))


def detrend_window(window):
    """
    Window with the least-squares linear trend of each channel removed.

    Slow attitude drift on smooth slopes ends up in the trend, so pca_sigma of
    the result only sees the fast terrain content.
    """
    return ImuWindow(signal.detrend(window.samples, axis=0, type='linear'))


@dataclass(frozen=True)
class VibrationMeasure:
    """Standard deviations of the two leading principal components (stored sorted)."""

    sigma_pc1: float
    sigma_pc2: float

    def __post_init__(self):
        first, second = sorted((float(self.sigma_pc1), float(self.sigma_pc2)), reverse=True)
        if not (math.isfinite(first) and second >= 0):
            raise ArgumentError(f"invalid principal deviations ({self.sigma_pc1}, {self.sigma_pc2})")
        object.__setattr__(self, 'sigma_pc1', first)
        object.__setattr__(self, 'sigma_pc2', second)

    @property
    def magnitude(self):
        return math.hypot(self.sigma_pc1, self.sigma_pc2)

    @classmethod
    def zero(cls):
        return cls(0.0, 0.0)


def goal_observation(pose, goal):
    """Distance and bearing of the goal point from a pose."""
    return GoalObservation(pose.distance_to(*goal), pose.bearing_to(*goal))


def r_goal(obs):
    """
    Goal-tracking rewards.

    Returns:
        tuple: (r_distance, r_heading) = (-d_goal, -|alpha_goal|)
    """
    return -obs.d_goal, -abs(obs.alpha_goal)


def r_stable(att):
    return -(abs(math.tanh(att.roll)) + abs(math.tanh(att.pitch)))


def r_elev(grad, k_elev):
    """
    Exponentially decayed sum of the heading gradients, nearest cell first.

    Args:
        grad: Sequence of signed gradients [grad_1 ... grad_N]
        k_elev: Decay rate (> 0)

    Returns:
        float: -sum_i grad_i * exp(-i * k_elev)
    """
    values = np.asarray(grad, dtype=float)
    if values.size == 0:
        raise ArgumentError('elevation gradient sequence is empty')
    if not k_elev > 0:
        raise ArgumentError(f"k_elev must be positive, got {k_elev}")
    decay = np.exp(-k_elev * np.arange(1, values.size + 1))
    return -float(np.dot(values, decay))


def pca_sigma(window):
    """
    Vibration measure of an IMU window.

    Columns are mean-centered, the 6 x 6 sample covariance (divisor T - 1) is
    decomposed and the two largest eigenvalues give the principal deviations.

    Returns:
        VibrationMeasure
    """
    covariance = np.cov(window.samples, rowvar=False, ddof=1)
    eigenvalues = np.linalg.eigvalsh(covariance)
    largest = np.clip(eigenvalues[::-1][:2], 0.0, None)
    return VibrationMeasure(math.sqrt(largest[0]), math.sqrt(largest[1]))


def r_vibration(measure):
    return -measure.magnitude


def r_total(components, weights):
    """
    Weighted reward sum over dist, head, stable, elev and vibr.

    Args:
        components: Mapping of component name to reward
        weights: RewardWeights

    Raises:
        ArgumentError: A component is missing
    """
    missing = [name for name in COMPONENTS if name not in components]
    if missing:
        raise ArgumentError(f"missing reward components: {', '.join(missing)}")
    betas = weights.as_dict()
    return sum(betas[name] * components[name] for name in COMPONENTS)


def step_rewards(state, goal, window, vibration, weights, n_h):
    """
    Evaluate every reward term for one control step.

    Args:
        state: RobotState the step starts from
        goal: Goal point (x, y)
        window: Robot-centric window observed at that state
        vibration: Current VibrationMeasure
        weights: RewardWeights
        n_h: Cells ahead used by the elevation term

    Returns:
        dict: Component rewards plus 'total'
    """
    r_distance, r_heading = r_goal(goal_observation(state.pose, goal))
    components = {
        'dist': r_distance,
        'head': r_heading,
        'stable': r_stable(AttitudeObservation(state.roll, state.pitch)),
        'elev': r_elev(heading_gradient_vector(window, n_h), weights.k_elev),
        'vibr': r_vibration(vibration),
    }
    components['total'] = r_total(components, weights)
    return components


def episode_return(records):
    """
    Trajectory-aggregated rewards.

    Returns:
        dict: Per-component sums plus 'total'
    """
    totals = {name: 0.0 for name in COMPONENTS + ('total',)}
    for record in records:
        for name in totals:
            totals[name] += record.rewards[name]
    return totals
