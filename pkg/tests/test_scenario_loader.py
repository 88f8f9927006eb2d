import json
import os

import pytest

from modules.scenario_loader import load_scenario, scenario_from_dict
from utils.errors import ConfigError

SCENARIO_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'scenarios')

BASE = {
    'name': 'sample',
    'world': 'flat',
    'start_x': 3.0,
    'start_y': 12.0,
    'goal_x': 21.0,
    'goal_y': 12.0,
}


def test_bundled_flat_scenario():
    scenario = load_scenario(os.path.join(SCENARIO_DIR, 'flat.json'))
    assert scenario.name == 'flat'
    assert scenario.world == 'flat'
    assert scenario.scenario_class == 'low'
    assert scenario.sim.max_steps == 600
    assert scenario.goal == (21.0, 12.0)


@pytest.mark.parametrize('name', ['flat', 'wall', 'scenario_1', 'scenario_2', 'scenario_3'])
def test_bundled_scenarios_load(name):
    assert load_scenario(os.path.join(SCENARIO_DIR, f'{name}.json')).name


def test_defaults_and_overrides():
    scenario = scenario_from_dict({**BASE, 'c_obs': 0.6, 'n_v': 7, 'beta_vibr': 2.0,
                                   'obstacle_masking': False, 'start_heading': 1})
    assert scenario.limits.c_obs == 0.6
    assert scenario.limits.n_v == 7
    assert scenario.weights.beta_vibr == 2.0
    assert scenario.sim.obstacle_masking is False
    assert scenario.start.heading == 1.0
    assert scenario.limits.lambda_el == 0.1
    assert scenario.scenario_class is None


def test_unknown_keys_are_listed():
    with pytest.raises(ConfigError) as excinfo:
        scenario_from_dict({**BASE, 'zeta': 1, 'alpha_goal': 2})
    assert 'alpha_goal, zeta' in str(excinfo.value)


def test_missing_required_key():
    document = dict(BASE)
    del document['goal_y']
    with pytest.raises(ConfigError) as excinfo:
        scenario_from_dict(document)
    assert 'goal_y' in str(excinfo.value)


@pytest.mark.parametrize('key,value', [
    ('n_v', 1.5),
    ('c_obs', 'high'),
    ('obstacle_masking', 1),
    ('start_x', True),
    ('name', 3),
])
def test_type_mismatch(key, value):
    with pytest.raises(ConfigError) as excinfo:
        scenario_from_dict({**BASE, key: value})
    assert key in str(excinfo.value)


def test_invalid_value():
    with pytest.raises(ConfigError):
        scenario_from_dict({**BASE, 'c_obs': 1.5})
    with pytest.raises(ConfigError):
        scenario_from_dict({**BASE, 'scenario_class': 'extreme'})


def test_nullable_keys():
    scenario = scenario_from_dict({**BASE, 'scenario_class': None, 'world_gain': None})
    assert scenario.scenario_class is None
    assert scenario.world_gain is None


def test_relative_paths_resolve_against_document(tmp_path):
    path = tmp_path / 'nested' / 'task.json'
    path.parent.mkdir()
    path.write_text(json.dumps({**BASE, 'world': '../worlds/hill.grid',
                                'attention_snapshot': 'snap.grid'}))
    scenario = load_scenario(str(path))
    assert scenario.world == str(tmp_path / 'worlds' / 'hill.grid')
    assert scenario.attention_snapshot == str(tmp_path / 'nested' / 'snap.grid')


def test_missing_file_names_the_path(tmp_path):
    path = str(tmp_path / 'absent.json')
    with pytest.raises(ConfigError) as excinfo:
        load_scenario(path)
    assert path in str(excinfo.value)


def test_malformed_json(tmp_path):
    path = tmp_path / 'broken.json'
    path.write_text('{"name": ')
    with pytest.raises(ConfigError):
        load_scenario(str(path))
    path.write_text('[1, 2]')
    with pytest.raises(ConfigError):
        load_scenario(str(path))
