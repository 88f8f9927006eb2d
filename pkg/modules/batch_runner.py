"""
Seeded episode batches.

Episode i of a batch uses seed + i for both its world (generator scenarios) and
its IMU noise stream, so a batch is reproducible no matter how it is scheduled.
Episodes run sequentially or on a process pool (RIDGE_WORKERS); results are
always returned in episode order.
"""
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from modules.simulator import check_scenario, run_episode
from modules.variants import resolve_variant
from modules.worlds import build_world
from utils.errors import ConfigError

logger = logging.getLogger(__name__)


@dataclass
class BatchResult:
    """Finished episodes in order plus the episodes that raised."""

    variant: str
    seed: int
    logs: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def statuses(self):
        by_episode = {log.episode: log.status for log in self.logs}
        by_episode.update({failure['episode']: 'failed' for failure in self.failures})
        return [by_episode[i] for i in sorted(by_episode)]


def worker_count(value=None):
    """
    Number of worker processes, from the argument or RIDGE_WORKERS.

    Raises:
        ConfigError: Not a positive integer
    """
    raw = value if value is not None else os.environ.get('RIDGE_WORKERS', '1')
    try:
        count = int(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"RIDGE_WORKERS must be an integer, got {raw!r}")
    if count < 1:
        raise ConfigError(f"RIDGE_WORKERS must be >= 1, got {count}")
    return count


def run_single(scenario, variant, seed, episode, capture_maps=False):
    """
    One contained episode.

    Returns:
        tuple: ('ok', EpisodeLog) or ('error', message)
    """
    try:
        setup = resolve_variant(variant, scenario)
        world = build_world(scenario, seed)
        log = run_episode(scenario, world, setup.provider, setup.use_waypoints,
                          setup.constrained, seed=seed, episode=episode,
                          capture_maps=capture_maps)
        return 'ok', log
    except Exception as e:
        return 'error', f"{type(e).__name__}: {e}"


def preflight(scenario, variant, seed):
    """
    Surface configuration errors before any episode runs.

    Raises:
        ConfigError: Inconsistent scenario, world or variant
    """
    setup = resolve_variant(variant, scenario)
    world = build_world(scenario, seed)
    check_scenario(scenario, world, setup.provider)


def run_batch(scenario, variant, episodes, seed=0, workers=None, capture_maps=True):
    """
    Run `episodes` seeded episodes of one variant.

    Args:
        scenario: ScenarioSpec
        variant: Variant name
        episodes: Episode count (>= 1)
        seed: Seed of episode 0
        workers: Process count (defaults to RIDGE_WORKERS)
        capture_maps: Keep the first episode's E/A/C grids

    Returns:
        BatchResult
    """
    if episodes < 1:
        raise ConfigError(f"episode count must be >= 1, got {episodes}")
    workers = worker_count(workers)
    preflight(scenario, variant, seed)
    logger.info('running %d episode(s) of %s on %s (seed %d, %d worker(s))',
                episodes, variant, scenario.name, seed, workers)

    jobs = [(scenario, variant, seed + i, i, capture_maps and i == 0) for i in range(episodes)]
    if workers == 1 or episodes == 1:
        outcomes = [run_single(*job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=min(workers, episodes)) as pool:
            futures = [pool.submit(run_single, *job) for job in jobs]
            outcomes = [future.result() for future in futures]

    result = BatchResult(variant, seed)
    for (_, _, episode_seed, episode, _), (kind, payload) in zip(jobs, outcomes):
        if kind == 'ok':
            result.logs.append(payload)
            logger.info('episode %d (seed %d): %s after %d steps',
                        episode, episode_seed, payload.status, len(payload.records))
        else:
            result.failures.append({'episode': episode, 'seed': episode_seed, 'error': payload})
            logger.warning('episode %d (seed %d) failed: %s', episode, episode_seed, payload)

    logger.info('batch finished: %d completed, %d failed', len(result.logs), len(result.failures))
    return result
