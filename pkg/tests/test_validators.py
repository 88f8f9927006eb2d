import numpy as np

from models.grids import ElevationMap
from utils.validators import runs_comparable, scenario_class_matches, snapshot_fits


def world_with_gain(gain):
    heights = np.zeros((5, 5))
    heights[2, 2] = gain
    return ElevationMap(heights, 0.25)


def run(variant, scenario='scenario_1', seed=0, episodes=5):
    return {'variant': variant, 'scenario': scenario, 'seed': seed, 'episodes': episodes, 'metrics': {}}


def test_scenario_class_matches():
    assert scenario_class_matches('low', world_with_gain(0.5))['valid']
    assert scenario_class_matches('low', world_with_gain(1.0))['valid']
    assert scenario_class_matches('medium', world_with_gain(2.0))['valid']
    assert scenario_class_matches('high', world_with_gain(3.0))['valid']
    assert scenario_class_matches(None, world_with_gain(9.0))['valid']

    check = scenario_class_matches('high', world_with_gain(1.5))
    assert not check['valid']
    assert 'medium' in check['message']


def test_runs_comparable():
    check = runs_comparable([run('dwa_vanilla'), run('ours_full')])
    assert check['valid']
    assert check['diff'] == []


def test_runs_with_different_seeds():
    check = runs_comparable([run('dwa_vanilla'), run('ours_full', seed=3)])
    assert not check['valid']
    assert len(check['diff']) == 1
    assert 'seed' in check['diff'][0]


def test_runs_need_two_distinct_variants():
    assert not runs_comparable([run('ours_full')])['valid']
    check = runs_comparable([run('ours_full'), run('ours_full')])
    assert not check['valid']
    assert 'duplicate' in check['diff'][0]


def test_every_difference_is_reported():
    check = runs_comparable([run('dwa_vanilla'), run('ours_full', scenario='flat', episodes=2)])
    assert len(check['diff']) == 2


def test_snapshot_fits():
    assert snapshot_fits((40, 40), 40)['valid']
    assert not snapshot_fits((40, 39), 40)['valid']
