"""
Core navigation modules for RidgeRunner.
"""

__all__ = [
    'grid_parser',
    'terrain',
    'perception',
    'rewards',
    'waypoints',
    'dwa_planner',
    'simulator',
    'worlds',
    'variants',
    'metrics',
    'batch_runner',
    'exporters',
    'report_exporter',
    'scenario_loader',
]
