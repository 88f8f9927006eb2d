"""
Validation and checking functions for scenarios and run directories.
"""
from modules.terrain import classify_elevation, eg_max

COMPARED_KEYS = ('scenario', 'seed', 'episodes')


def scenario_class_matches(scenario_class, world):
    """
    Check a declared scenario class against the world's EG_max.

    Args:
        scenario_class: 'low', 'medium', 'high' or None (undeclared)
        world: ElevationMap

    Returns:
        dict: {'valid': bool, 'message': str}
    """
    gain = eg_max(world)
    actual = classify_elevation(gain)
    if scenario_class is None:
        return {
            'valid': True,
            'message': f'Undeclared class; EG_max {gain:.3f} m ({actual})'
        }
    if scenario_class != actual:
        return {
            'valid': False,
            'message': f'scenario class {scenario_class!r} does not match world EG_max {gain:.3f} m ({actual})'
        }
    return {
        'valid': True,
        'message': f'EG_max {gain:.3f} m is {actual}'
    }


def runs_comparable(summaries):
    """
    Check that run summaries can share a comparison table.

    They must agree on scenario, seed and episode count and cover at least two
    distinct variants.

    Args:
        summaries: Run summary dicts, in command-line order

    Returns:
        dict: {'valid': bool, 'message': str, 'diff': list of str}
    """
    if len(summaries) < 2:
        return {'valid': False, 'message': 'Need at least two runs to compare', 'diff': []}

    reference = summaries[0]
    diff = []
    for index, summary in enumerate(summaries[1:], start=1):
        for key in COMPARED_KEYS:
            if summary.get(key) != reference.get(key):
                diff.append(f'run {index}: {key} = {summary.get(key)!r}, run 0: {key} = {reference.get(key)!r}')

    variants = [summary.get('variant') for summary in summaries]
    if len(set(variants)) != len(variants):
        diff.append(f'duplicate variants: {", ".join(str(v) for v in variants)}')

    if diff:
        return {'valid': False, 'message': 'Runs are not comparable', 'diff': diff}
    return {'valid': True, 'message': f'{len(summaries)} variants comparable', 'diff': []}


def snapshot_fits(snapshot_shape, window_size):
    """
    Check an attention snapshot against the perception window.

    Returns:
        dict: {'valid': bool, 'message': str}
    """
    expected = (window_size, window_size)
    if tuple(snapshot_shape) != expected:
        return {
            'valid': False,
            'message': f'attention snapshot shape {tuple(snapshot_shape)} does not match window {window_size}x{window_size}'
        }
    return {'valid': True, 'message': 'Snapshot matches the window'}
