"""
Run artifacts: per-episode CSV logs, the JSON run summary and PGM map dumps.

Summaries carry no timestamps and are written with sorted keys, so repeating a
seeded run reproduces them byte for byte.
"""
import csv
import json
import logging
import os

from modules.dwa_planner import BOX_NAMES
from modules.perception import write_pgm
from modules.rewards import COMPONENTS, IMU_CHANNELS, episode_return
from utils.errors import ConfigError

logger = logging.getLogger(__name__)

EPISODE_COLUMNS = (
    ('step', 'time', 'x', 'y', 'heading', 'roll', 'pitch', 'v_a', 'omega_a', 'cmd_v', 'cmd_omega')
    + IMU_CHANNELS + ('vibration', 'distance')
)
REWARD_COLUMNS = ('step',) + tuple(f"r_{name}" for name in COMPONENTS) + ('r_total',)
PLANNER_COLUMNS = (
    ('step', 'status', 'cmd_v', 'cmd_omega', 'active', 'candidates', 'admissible')
    + tuple(f"{box}_{bound}" for box in BOX_NAMES
            for bound in ('v_min', 'v_max', 'omega_min', 'omega_max'))
    + ('head', 'dist', 'vel', 'G')
)
MAP_FILES = (
    ('elevation', 'elevation.pgm'),
    ('attention', 'attention.pgm'),
    ('cost', 'costmap.pgm'),
)
SUMMARY_FILE = 'summary.json'


def _write_rows(path, columns, rows):
    with open(path, 'w', newline='') as handle:
        writer = csv.writer(handle)
        writer.writerow(columns)
        writer.writerows(rows)


def episode_rows(log):
    for record in log.records:
        state = record.state
        yield ([record.index, record.time, state.pose.x, state.pose.y, state.pose.heading,
                state.roll, state.pitch, state.v_a, state.omega_a,
                record.command[0], record.command[1]]
               + list(record.imu) + [record.vibration, record.distance])


def write_episode_csv(log, path):
    """One row per control step: state, command, last IMU sample, vibration, arc length."""
    _write_rows(path, EPISODE_COLUMNS, episode_rows(log))


def write_reward_csv(log, path):
    rows = ([record.index] + [record.rewards[name] for name in COMPONENTS] + [record.rewards['total']]
            for record in log.records)
    _write_rows(path, REWARD_COLUMNS, rows)


def write_planner_csv(log, path):
    """Planner telemetry per step: boxes, active constraints and the chosen G terms."""
    rows = ([record.index] + [record.plan.get(column, '') for column in PLANNER_COLUMNS[1:]]
            for record in log.records)
    _write_rows(path, PLANNER_COLUMNS, rows)


def write_maps(maps, out_dir):
    """
    Dump captured E/A/C grids as PGM images.

    Returns:
        list: File names written
    """
    written = []
    for key, filename in MAP_FILES:
        if key in maps:
            write_pgm(maps[key], os.path.join(out_dir, filename))
            written.append(filename)
    return written


def write_run_artifacts(result, out_dir):
    """
    Write every per-episode CSV and the first episode's map dumps.

    Returns:
        list: Artifact file names, relative to out_dir
    """
    os.makedirs(out_dir, exist_ok=True)
    artifacts = []
    for log in result.logs:
        for prefix, writer in (('episode', write_episode_csv),
                               ('rewards', write_reward_csv),
                               ('planner', write_planner_csv)):
            filename = f"{prefix}_{log.episode:03d}.csv"
            writer(log, os.path.join(out_dir, filename))
            artifacts.append(filename)
        if log.maps:
            artifacts.extend(write_maps(log.maps, out_dir))
    return artifacts


def build_summary(scenario, result, metrics, artifacts):
    """Run summary document for a finished batch."""
    return {
        'variant': result.variant,
        'scenario': scenario.name,
        'scenario_class': scenario.scenario_class,
        'world': scenario.world,
        'seed': result.seed,
        'episodes': len(result.logs) + len(result.failures),
        'metrics': metrics.to_dict() if metrics is not None else None,
        'statuses': result.statuses,
        'returns': [episode_return(log.records)['total'] for log in result.logs],
        'failed': result.failures,
        'artifacts': artifacts + [SUMMARY_FILE],
    }


def write_summary(summary, out_dir):
    path = os.path.join(out_dir, SUMMARY_FILE)
    with open(path, 'w') as handle:
        handle.write(json.dumps(summary, indent=2, sort_keys=True) + '\n')
    logger.info('wrote %s', path)
    return path


def read_summary(run_dir):
    """
    Load a run directory's summary.

    Raises:
        ConfigError: Missing or malformed summary
    """
    path = os.path.join(run_dir, SUMMARY_FILE)
    try:
        with open(path, 'r') as handle:
            summary = json.load(handle)
    except FileNotFoundError:
        raise ConfigError(f"{run_dir} is not a run directory (no {SUMMARY_FILE})")
    except json.JSONDecodeError as e:
        raise ConfigError(f"malformed summary {path}: {e}")
    for key in ('variant', 'scenario', 'seed', 'episodes', 'metrics'):
        if key not in summary:
            raise ConfigError(f"summary {path} lacks {key!r}")
    return summary
