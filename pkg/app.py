"""
RidgeRunner - command line front end

    python app.py run --scenario PATH --variant NAME --episodes N --seed S --out DIR
    python app.py compare --out DIR RUNDIR...
    python app.py dump --scenario PATH --out DIR [--variant NAME]

Exit status: 0 on success, 1 on configuration errors, 2 on runtime failure.
"""
import argparse
import json
import logging
import os
import sys

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

from models.scenario import VARIANTS, RunConfig
from modules.batch_runner import run_batch
from modules.exporters import build_summary, read_summary, write_maps, write_run_artifacts, write_summary
from modules.metrics import compute_metrics, metrics_table
from modules.report_exporter import format_comparison_text, generate_comparison_pdf
from modules.scenario_loader import load_scenario
from modules.simulator import check_scenario, perceive
from modules.variants import resolve_variant
from modules.worlds import build_world
from utils.errors import ConfigError, GridParseError, GridValidationError
from utils.geometry import format_metric
from utils.validators import runs_comparable

logger = logging.getLogger('ridgerunner')

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2


def configure_logging():
    level_name = os.environ.get('RIDGE_LOG_LEVEL', 'INFO').upper()
    level = getattr(logging, level_name, None)
    if not isinstance(level, int):
        level = logging.INFO
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s')


def cmd_run(config, workers=None):
    """
    Run an episode batch and write its artifacts.

    Args:
        config: RunConfig
        workers: Process count (defaults to RIDGE_WORKERS)

    Returns:
        int: Exit status (2 when every episode failed)
    """
    scenario = load_scenario(config.scenario_path)
    result = run_batch(scenario, config.variant, config.episodes, config.seed, workers)

    artifacts = write_run_artifacts(result, config.out_dir)
    metrics = compute_metrics(result.logs) if result.logs else None
    summary = build_summary(scenario, result, metrics, artifacts)
    write_summary(summary, config.out_dir)

    print(f"{config.variant} on {scenario.name}: {len(result.logs)}/{config.episodes} episodes completed")
    if metrics is not None:
        for name, value in metrics.to_dict().items():
            print(f"  {name:<18} {format_metric(value)}")
    if not result.logs:
        print('Every episode failed; see summary.json', file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


def cmd_compare(run_dirs, out_dir):
    """
    Build the comparison table of finished runs.

    Returns:
        int: Exit status (1 when the runs do not share scenario, seed and episodes)
    """
    summaries = [read_summary(run_dir) for run_dir in run_dirs]
    check = runs_comparable(summaries)
    if not check['valid']:
        print(f"Refusing to compare: {check['message']}", file=sys.stderr)
        for line in check['diff']:
            print(f"  {line}", file=sys.stderr)
        return EXIT_CONFIG

    table = metrics_table(summaries)
    reference = summaries[0]
    os.makedirs(out_dir, exist_ok=True)

    document = {
        'scenario': reference['scenario'],
        'seed': reference['seed'],
        'episodes': reference['episodes'],
        'variants': table['columns'],
        'metrics': {name: dict(zip(table['columns'], values)) for name, values in table['rows']},
    }
    with open(os.path.join(out_dir, 'comparison.json'), 'w') as handle:
        handle.write(json.dumps(document, indent=2, sort_keys=True) + '\n')

    text = format_comparison_text(
        table, f"Scenario {reference['scenario']} (seed {reference['seed']}, {reference['episodes']} episodes)")
    with open(os.path.join(out_dir, 'comparison.txt'), 'w') as handle:
        handle.write(text)

    pdf = generate_comparison_pdf(table, reference['scenario'], reference['seed'], reference['episodes'])
    with open(os.path.join(out_dir, 'comparison.pdf'), 'wb') as handle:
        handle.write(pdf)

    logger.info('wrote comparison of %d variants to %s', len(summaries), out_dir)
    print(text, end='')
    return EXIT_OK


def cmd_dump(scenario_path, out_dir, variant='ours_full', seed=0):
    """Write E_t, A_t and C_t at the scenario's start pose without running an episode."""
    scenario = load_scenario(scenario_path)
    setup = resolve_variant(variant, scenario)
    world = build_world(scenario, seed)
    check_scenario(scenario, world, setup.provider)

    window, attention, costmap = perceive(world, scenario.start, scenario.goal,
                                          setup.provider, scenario.sim.window_size)
    os.makedirs(out_dir, exist_ok=True)
    written = write_maps({
        'elevation': window.heights,
        'attention': attention.values,
        'cost': costmap.values,
    }, out_dir)
    for filename in written:
        print(os.path.join(out_dir, filename))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog='ridgerunner',
                                     description='Terrain-aware DWA navigation on heightfields.')
    commands = parser.add_subparsers(dest='command', required=True)
    default_out = os.environ.get('RIDGE_OUTPUT_DIR', 'runs')

    run = commands.add_parser('run', help='run a seeded episode batch')
    run.add_argument('--scenario', required=True, help='scenario JSON file')
    run.add_argument('--variant', required=True, choices=VARIANTS)
    run.add_argument('--episodes', type=int, default=1)
    run.add_argument('--seed', type=int, default=0)
    run.add_argument('--out', default=default_out, help='run directory')
    run.add_argument('--workers', type=int, default=None, help='worker processes (default RIDGE_WORKERS)')

    compare = commands.add_parser('compare', help='compare finished runs')
    compare.add_argument('--out', required=True, help='directory for the comparison table')
    compare.add_argument('run_dirs', nargs='+', metavar='RUNDIR')

    dump = commands.add_parser('dump', help='write the start-pose perception maps')
    dump.add_argument('--scenario', required=True)
    dump.add_argument('--out', default=default_out)
    dump.add_argument('--variant', default='ours_full', choices=VARIANTS)
    dump.add_argument('--seed', type=int, default=0)
    return parser


def main(argv=None):
    """Parse arguments, dispatch a command and map failures to exit codes."""
    configure_logging()
    args = build_parser().parse_args(argv)
    try:
        if args.command == 'run':
            config = RunConfig(args.scenario, args.variant, args.episodes, args.seed, args.out)
            return cmd_run(config, args.workers)
        elif args.command == 'compare':
            return cmd_compare(args.run_dirs, args.out)
        elif args.command == 'dump':
            return cmd_dump(args.scenario, args.out, args.variant, args.seed)
    except (ConfigError, GridParseError, GridValidationError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as e:
        logger.exception('unexpected failure')
        print(f"Error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_RUNTIME


if __name__ == '__main__':
    sys.exit(main())
