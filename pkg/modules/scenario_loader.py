"""
Scenario documents.

A scenario is one flat JSON object. Besides the scenario keys below, every
field of PlannerLimits, RewardWeights and SimSettings may be overridden by its
name. Relative world and snapshot paths resolve against the document's folder.

    {
        "name": "scenario_2",
        "world": "scenario_2",
        "start_x": 3.0, "start_y": 12.0, "start_heading": 0.0,
        "goal_x": 21.0, "goal_y": 12.0,
        "scenario_class": "medium",
        "c_obs": 0.8
    }
"""
import json
import logging
import math
import os
from dataclasses import fields

from models.robot import Pose2D
from models.scenario import ScenarioSpec
from models.settings import PlannerLimits, RewardWeights, SimSettings
from modules.worlds import WORLD_NAMES
from utils.errors import ConfigError

logger = logging.getLogger(__name__)

REQUIRED_KEYS = ('name', 'world', 'start_x', 'start_y', 'goal_x', 'goal_y')
SCENARIO_KEYS = {
    'name': str,
    'world': str,
    'start_x': float,
    'start_y': float,
    'start_heading': float,
    'goal_x': float,
    'goal_y': float,
    'scenario_class': str,
    'world_size': float,
    'world_resolution': float,
    'world_gain': float,
    'attention_snapshot': str,
}
NULLABLE_KEYS = ('scenario_class', 'world_gain', 'attention_snapshot')
SETTINGS_CLASSES = (('limits', PlannerLimits), ('weights', RewardWeights), ('sim', SimSettings))


def coerce(key, value, expected):
    """
    Check a document value against the expected type.

    Ints are accepted for float fields; bools are never accepted as numbers.

    Raises:
        ConfigError: Type mismatch
    """
    if expected is bool:
        if not isinstance(value, bool):
            raise ConfigError(f"{key} must be true or false, got {value!r}")
        return value
    if expected is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{key} must be an integer, got {value!r}")
        return value
    if expected is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{key} must be a number, got {value!r}")
        if not math.isfinite(value):
            raise ConfigError(f"{key} must be finite, got {value!r}")
        return float(value)
    if not isinstance(value, expected):
        raise ConfigError(f"{key} must be a {expected.__name__}, got {value!r}")
    return value


def settings_fields():
    """Overridable settings keys mapped to (group, type)."""
    known = {}
    for group, cls in SETTINGS_CLASSES:
        for f in fields(cls):
            known[f.name] = (group, f.type)
    return known


def resolve_path(path, base_dir):
    if os.path.isabs(path):
        return path
    return os.path.normpath(os.path.join(base_dir, path))


def scenario_from_dict(document, base_dir='.'):
    """
    Build a ScenarioSpec from a parsed scenario document.

    Args:
        document: Flat mapping of keys to JSON values
        base_dir: Folder relative paths resolve against

    Returns:
        ScenarioSpec

    Raises:
        ConfigError: Missing or unknown keys, type mismatches, invalid values
    """
    if not isinstance(document, dict):
        raise ConfigError('scenario document must be a JSON object')
    known = settings_fields()
    unknown = sorted(key for key in document if key not in SCENARIO_KEYS and key not in known)
    if unknown:
        raise ConfigError(f"unknown scenario keys: {', '.join(unknown)}")
    missing = [key for key in REQUIRED_KEYS if key not in document]
    if missing:
        raise ConfigError(f"missing scenario keys: {', '.join(missing)}")

    values = {}
    for key, expected in SCENARIO_KEYS.items():
        if key not in document:
            continue
        if document[key] is None and key in NULLABLE_KEYS:
            values[key] = None
        else:
            values[key] = coerce(key, document[key], expected)

    overrides = {group: {} for group, _ in SETTINGS_CLASSES}
    for key, value in document.items():
        if key in known:
            group, expected = known[key]
            overrides[group][key] = coerce(key, value, expected)

    world = values['world']
    if world not in WORLD_NAMES:
        world = resolve_path(world, base_dir)
    snapshot = values.get('attention_snapshot')
    if snapshot:
        snapshot = resolve_path(snapshot, base_dir)

    optional = {key: values[key] for key in ('scenario_class', 'world_size', 'world_resolution', 'world_gain')
                if key in values}
    return ScenarioSpec(
        name=values['name'],
        world=world,
        start=Pose2D(values['start_x'], values['start_y'], values.get('start_heading', 0.0)),
        goal=(values['goal_x'], values['goal_y']),
        attention_snapshot=snapshot,
        limits=PlannerLimits(**overrides['limits']),
        weights=RewardWeights(**overrides['weights']),
        sim=SimSettings(**overrides['sim']),
        **optional,
    )


def load_scenario(path):
    """
    Read and validate a scenario file.

    Raises:
        ConfigError: Unreadable file, malformed JSON, or an invalid scenario
    """
    try:
        with open(path, 'r') as handle:
            document = json.load(handle)
    except FileNotFoundError:
        raise ConfigError(f"scenario file not found: {path}")
    except OSError as e:
        raise ConfigError(f"cannot read scenario file {path}: {e}")
    except json.JSONDecodeError as e:
        raise ConfigError(f"malformed scenario file {path}: {e}")
    scenario = scenario_from_dict(document, os.path.dirname(os.path.abspath(path)))
    logger.debug('loaded scenario %s from %s', scenario.name, path)
    return scenario
