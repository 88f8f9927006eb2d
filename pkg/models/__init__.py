"""
Domain types for RidgeRunner.
"""
from models.grids import ElevationMap, GradientField, AttentionMap, CostMap
from models.robot import Pose2D, RobotState
from models.velocity_box import VelocityBox, EMPTY
from models.settings import PlannerLimits, RewardWeights, SimSettings
from models.scenario import ScenarioSpec, RunConfig, VARIANTS, SCENARIO_CLASSES
from models.episode import StepRecord, EpisodeLog, Metrics

__all__ = [
    'ElevationMap', 'GradientField', 'AttentionMap', 'CostMap',
    'Pose2D', 'RobotState',
    'VelocityBox', 'EMPTY',
    'PlannerLimits', 'RewardWeights', 'SimSettings',
    'ScenarioSpec', 'RunConfig', 'VARIANTS', 'SCENARIO_CLASSES',
    'StepRecord', 'EpisodeLog', 'Metrics',
]
