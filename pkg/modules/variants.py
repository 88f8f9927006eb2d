"""
Planner variants compared by the command line front end.

    dwa_vanilla        uniform attention, steer at the goal, no terrain constraints
    waypoint_only      least-cost waypoints with unconstrained DWA
    ours_no_attention  waypoints + V_el/V_vib, all-ones attention
    ours_full          waypoints + V_el/V_vib, reference attention (or a snapshot)
"""
from dataclasses import dataclass

from models.scenario import VARIANTS
from modules.grid_parser import load_attention_snapshot
from modules.perception import ReferenceAttention, SnapshotAttention, UniformAttention
from utils.errors import ConfigError


@dataclass(frozen=True)
class VariantSetup:
    provider: object
    use_waypoints: bool
    constrained: bool


def resolve_variant(name, scenario):
    """
    Map a variant name to its perception provider and planner switches.

    Raises:
        ConfigError: Unknown variant, or an unreadable attention snapshot
    """
    if name not in VARIANTS:
        raise ConfigError(f"unknown variant {name!r}; choose from {', '.join(VARIANTS)}")

    if name == 'dwa_vanilla':
        return VariantSetup(UniformAttention(), use_waypoints=False, constrained=False)
    elif name == 'waypoint_only':
        return VariantSetup(UniformAttention(), use_waypoints=True, constrained=False)
    elif name == 'ours_no_attention':
        return VariantSetup(UniformAttention(), use_waypoints=True, constrained=True)

    if scenario.attention_snapshot:
        try:
            snapshot = load_attention_snapshot(scenario.attention_snapshot)
        except OSError as e:
            raise ConfigError(f"cannot read attention snapshot {scenario.attention_snapshot}: {e}")
        return VariantSetup(SnapshotAttention(snapshot), use_waypoints=True, constrained=True)
    return VariantSetup(ReferenceAttention(scenario.sim.sigma_dir), use_waypoints=True, constrained=True)
