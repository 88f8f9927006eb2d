"""
Scenario and run configuration.
"""
import math
from dataclasses import dataclass, field

from models.robot import Pose2D
from models.settings import PlannerLimits, RewardWeights, SimSettings
from utils.errors import ConfigError

SCENARIO_CLASSES = ('low', 'medium', 'high')
VARIANTS = ('dwa_vanilla', 'waypoint_only', 'ours_no_attention', 'ours_full')


@dataclass(frozen=True)
class ScenarioSpec:
    """
    One navigation task.

    `world` is either the name of a built-in generator (see modules.worlds) or a
    path to an ASCII heightfield. Generated worlds are rebuilt per episode from
    the episode seed; file worlds are shared.
    """

    name: str
    world: str
    start: Pose2D
    goal: tuple
    scenario_class: str = None
    world_size: float = 24.0
    world_resolution: float = 0.25
    world_gain: float = None
    attention_snapshot: str = None
    limits: PlannerLimits = field(default_factory=PlannerLimits)
    weights: RewardWeights = field(default_factory=RewardWeights)
    sim: SimSettings = field(default_factory=SimSettings)

    def __post_init__(self):
        if not self.name:
            raise ConfigError('scenario name is required')
        if len(self.goal) != 2 or not all(math.isfinite(v) for v in self.goal):
            raise ConfigError(f"goal must be a finite (x, y) pair, got {self.goal!r}")
        object.__setattr__(self, 'goal', (float(self.goal[0]), float(self.goal[1])))
        if self.scenario_class is not None and self.scenario_class not in SCENARIO_CLASSES:
            raise ConfigError(
                f"scenario_class must be one of {', '.join(SCENARIO_CLASSES)}, got {self.scenario_class!r}")
        if self.world_size <= 0 or self.world_resolution <= 0:
            raise ConfigError('world_size and world_resolution must be positive')
        if self.world_gain is not None and self.world_gain < 0:
            raise ConfigError('world_gain must be >= 0')
        if self.start_goal_distance <= self.sim.success_radius:
            raise ConfigError('start already lies inside the success radius')

    @property
    def start_goal_distance(self):
        return self.start.distance_to(*self.goal)


@dataclass(frozen=True)
class RunConfig:
    """Arguments of one `run` invocation."""

    scenario_path: str
    variant: str
    episodes: int = 1
    seed: int = 0
    out_dir: str = 'runs'

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ConfigError(f"unknown variant {self.variant!r}; choose from {', '.join(VARIANTS)}")
        if self.episodes < 1:
            raise ConfigError(f"episode count must be >= 1, got {self.episodes}")
