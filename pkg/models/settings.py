"""
Tunable parameters for the planner, the reward suite and the simulator.

Every field can be overridden by name from a scenario document.
"""
import math
from dataclasses import dataclass

from utils.errors import ConfigError


def _require(condition, message):
    if not condition:
        raise ConfigError(message)


def _require_positive(obj, names):
    for name in names:
        value = getattr(obj, name)
        _require(math.isfinite(value) and value > 0, f"{name} must be positive, got {value}")


@dataclass(frozen=True)
class PlannerLimits:
    """Velocity limits, constraint gains and objective weights for the DWA planner."""

    v_abs_max: float = 1.0
    omega_abs_max: float = 1.0
    v_accel: float = 1.0
    omega_accel: float = 2.0
    brake_decel: float = 1.0
    dt: float = 0.1
    lambda_el: float = 0.1
    psi_lim: float = 0.6
    lambda_vib: float = 0.05
    phi_act: float = 0.1
    sigma_act: float = 0.05
    v_floor: float = 0.05
    omega_window_floor: float = 0.1
    alpha: float = 1.0
    beta: float = 0.5
    gamma: float = 0.5
    n_v: int = 11
    n_omega: int = 21
    c_obs: float = 0.8
    path_epsilon: float = 1e-3

    def __post_init__(self):
        _require_positive(self, (
            'v_abs_max', 'omega_abs_max', 'v_accel', 'omega_accel', 'brake_decel',
            'lambda_el', 'lambda_vib', 'phi_act', 'sigma_act', 'v_floor',
            'omega_window_floor', 'alpha', 'beta', 'gamma', 'path_epsilon'))
        # dt = 0 is allowed and yields a degenerate dynamic window
        _require(math.isfinite(self.dt) and self.dt >= 0, f"dt must be >= 0, got {self.dt}")
        _require(0 < self.psi_lim < math.pi / 2, f"psi_lim must lie in (0, pi/2), got {self.psi_lim}")
        _require(0 < self.c_obs <= 1, f"c_obs must lie in (0, 1], got {self.c_obs}")
        _require(self.n_v >= 1 and self.n_omega >= 1, 'sample counts must be >= 1')


@dataclass(frozen=True)
class RewardWeights:
    """Per-term reward weights and the elevation-decay rate."""

    beta_dist: float = 1.0
    beta_head: float = 0.5
    beta_stable: float = 1.0
    beta_elev: float = 1.0
    beta_vibr: float = 1.0
    k_elev: float = 0.5

    def __post_init__(self):
        for name in ('beta_dist', 'beta_head', 'beta_stable', 'beta_elev', 'beta_vibr'):
            value = getattr(self, name)
            _require(math.isfinite(value) and value >= 0, f"{name} must be >= 0, got {value}")
        _require_positive(self, ('k_elev',))

    def as_dict(self):
        return {
            'dist': self.beta_dist,
            'head': self.beta_head,
            'stable': self.beta_stable,
            'elev': self.beta_elev,
            'vibr': self.beta_vibr,
        }


@dataclass(frozen=True)
class SimSettings:
    """Simulator, perception and episode constants."""

    imu_rate: float = 100.0
    imu_window: int = 50
    flip_bound: float = math.pi / 3
    footprint_radius: float = 0.5
    k_noise: float = 3.0
    gravity: float = 9.81
    window_size: int = 40
    n_h: int = 10
    lookahead: float = 1.5
    success_radius: float = 0.25
    max_steps: int = 1500
    obstacle_masking: bool = True
    sigma_dir: float = math.pi / 4

    def __post_init__(self):
        _require_positive(self, (
            'imu_rate', 'flip_bound', 'footprint_radius', 'gravity', 'lookahead',
            'success_radius', 'sigma_dir'))
        _require(self.k_noise >= 0, f"k_noise must be >= 0, got {self.k_noise}")
        _require(self.flip_bound < math.pi / 2, 'flip_bound must be below pi/2')
        _require(self.imu_window >= 2, 'imu_window must hold at least 2 samples')
        _require(self.window_size >= 3, 'window_size must be >= 3')
        _require(self.max_steps >= 1, 'max_steps must be >= 1')
        ahead = self.window_size - 1 - self.window_size // 2
        _require(1 <= self.n_h <= ahead,
                 f"n_h must lie in [1, {ahead}] for a {self.window_size}-cell window")
