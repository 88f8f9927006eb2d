"""
Episode records and evaluation metrics.
"""
from dataclasses import dataclass, field

from utils.errors import ArgumentError

STATUSES = ('success', 'collision', 'flip_over', 'timeout')


@dataclass(frozen=True)
class StepRecord:
    """One control step of an episode."""

    index: int
    time: float
    state: object
    command: tuple
    imu: tuple
    vibration: float
    distance: float
    rewards: dict
    plan: dict


@dataclass
class EpisodeLog:
    """
    Time-ordered control steps plus the terminal status.

    reference_length is the straight-line distance the robot has to cover to
    enter the success circle, used to normalize the trajectory length.
    """

    episode: int
    seed: int
    reference_length: float
    records: list = field(default_factory=list)
    status: str = None
    maps: dict = field(default_factory=dict)

    def append(self, record):
        if self.status is not None:
            raise ArgumentError('episode already terminated')
        if self.records and record.time <= self.records[-1].time:
            raise ArgumentError(
                f"timestamps must increase: {record.time} after {self.records[-1].time}")
        self.records.append(record)

    def terminate(self, status):
        if status not in STATUSES:
            raise ArgumentError(f"unknown terminal status {status!r}")
        if self.status is not None:
            raise ArgumentError(f"terminal status already set to {self.status!r}")
        self.status = status

    @property
    def elapsed(self):
        return self.records[-1].time if self.records else 0.0

    @property
    def path_length(self):
        return sum(record.distance for record in self.records)

    @property
    def succeeded(self):
        return self.status == 'success'


@dataclass(frozen=True)
class Metrics:
    """Batch evaluation metrics; norm_traj_length is None without successes."""

    success_rate: float
    avg_vibration: float
    avg_speed: float
    norm_traj_length: float = None

    def to_dict(self):
        return {
            'success_rate': self.success_rate,
            'avg_vibration': self.avg_vibration,
            'avg_speed': self.avg_speed,
            'norm_traj_length': self.norm_traj_length,
        }
