"""
Batch evaluation metrics over episode logs.
"""
from models.episode import Metrics
from utils.errors import ArgumentError


def compute_metrics(logs):
    """
    Aggregate a batch of episodes.

    Args:
        logs: Non-empty sequence of terminated EpisodeLogs

    Returns:
        Metrics: success rate, mean step vibration over all steps, total arc
        length / total elapsed time, and the mean normalized trajectory length
        of successful episodes (None when nothing succeeded)

    Raises:
        ArgumentError: Empty batch
    """
    logs = list(logs)
    if not logs:
        raise ArgumentError('cannot compute metrics of an empty batch')

    successes = [log for log in logs if log.succeeded]
    success_rate = len(successes) / len(logs)

    vibrations = [record.vibration for log in logs for record in log.records]
    avg_vibration = sum(vibrations) / len(vibrations) if vibrations else 0.0

    elapsed = sum(log.elapsed for log in logs)
    travelled = sum(log.path_length for log in logs)
    avg_speed = travelled / elapsed if elapsed > 0 else 0.0

    norm_traj_length = None
    if successes:
        ratios = [log.path_length / log.reference_length for log in successes]
        norm_traj_length = sum(ratios) / len(ratios)

    return Metrics(success_rate, avg_vibration, avg_speed, norm_traj_length)


def metrics_table(summaries):
    """
    Rows = metrics, columns = variants.

    Args:
        summaries: Sequence of run summaries (dicts with 'variant' and 'metrics')

    Returns:
        dict: {'columns': [variant, ...], 'rows': [(metric, [value, ...]), ...]}
    """
    columns = [summary['variant'] for summary in summaries]
    rows = []
    for name in ('success_rate', 'avg_vibration', 'avg_speed', 'norm_traj_length'):
        rows.append((name, [(summary['metrics'] or {}).get(name) for summary in summaries]))
    return {'columns': columns, 'rows': rows}
