import os

import pytest

from modules.batch_runner import run_batch
from modules.metrics import compute_metrics
from modules.scenario_loader import load_scenario
from modules.simulator import run_episode
from modules.variants import resolve_variant
from modules.worlds import build_world

SCENARIO_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'scenarios')
EPISODES = 3


def bundled(name):
    return load_scenario(os.path.join(SCENARIO_DIR, f"{name}.json"))


def batch_metrics(scenario, variant):
    result = run_batch(scenario, variant, EPISODES, seed=0, workers=1, capture_maps=False)
    assert not result.failures
    return compute_metrics(result.logs)


def test_full_navigator_crosses_the_flat_course():
    scenario = bundled('flat')
    setup = resolve_variant('ours_full', scenario)
    log = run_episode(scenario, build_world(scenario), setup.provider,
                      setup.use_waypoints, setup.constrained)
    assert log.status == 'success'
    assert log.path_length / log.reference_length == pytest.approx(1.0, abs=0.05)
    # cruises at the speed limit once it has accelerated
    assert log.path_length / log.elapsed > 0.85


@pytest.mark.parametrize('name', ['scenario_2', 'scenario_3'])
def test_full_navigator_against_vanilla_dwa(name):
    scenario = bundled(name)
    ours = batch_metrics(scenario, 'ours_full')
    vanilla = batch_metrics(scenario, 'dwa_vanilla')
    assert ours.success_rate >= vanilla.success_rate
    assert ours.avg_vibration < vanilla.avg_vibration
    assert ours.avg_speed < vanilla.avg_speed
