"""
Dynamic Window Approach with flip-over and vibration constraints.

The searched set is V_s ∩ V_d ∩ V_el ∩ V_vib, sampled on an n_v x n_omega
grid and filtered by admissibility (V_a). Candidates are scored with
G = alpha * head + beta * dist + gamma * vel after min-max normalizing each
term over the admissible set. Ties go to smaller |omega|, then smaller v.

All geometry is in the robot frame of the cost-map window: x forward, y left.
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from models.velocity_box import VelocityBox
from utils.geometry import normalize_angle, to_robot_frame

logger = logging.getLogger(__name__)

BOX_NAMES = ('V_s', 'V_d', 'V_el', 'V_vib', 'V_new')


@dataclass(frozen=True)
class PlanResult:
    """Chosen command plus the telemetry of the decision."""

    v: float
    omega: float
    status: str
    boxes: dict = field(default_factory=dict)
    active: tuple = ()
    terms: dict = field(default_factory=dict)
    candidates: int = 0
    admissible: int = 0

    @property
    def recovery(self):
        return self.status != 'ok'

    def telemetry(self):
        row = {
            'status': self.status,
            'cmd_v': self.v,
            'cmd_omega': self.omega,
            'active': '+'.join(self.active),
            'candidates': self.candidates,
            'admissible': self.admissible,
        }
        for name in BOX_NAMES:
            box = self.boxes.get(name)
            for bound in ('v_min', 'v_max', 'omega_min', 'omega_max'):
                row[f"{name}_{bound}"] = '' if box is None or box.empty else getattr(box, bound)
        for term in ('head', 'dist', 'vel', 'G'):
            row[term] = self.terms.get(term, '')
        return row


def static_window(limits):
    """V_s: absolute velocity limits."""
    return VelocityBox(0.0, limits.v_abs_max, -limits.omega_abs_max, limits.omega_abs_max)


def dynamic_window(state, limits):
    """
    V_d ∩ V_s: velocities reachable within one control interval.

    Args:
        state: RobotState with current (v_a, omega_a)
        limits: PlannerLimits

    Returns:
        VelocityBox
    """
    dv = limits.v_accel * limits.dt
    domega = limits.omega_accel * limits.dt
    reachable = VelocityBox(state.v_a - dv, state.v_a + dv,
                            state.omega_a - domega, state.omega_a + domega)
    return reachable.intersect(static_window(limits))


def el_active(state, limits):
    """Which parts of the flip-over constraint are active: (linear, angular)."""
    linear = abs(state.pitch) > limits.phi_act and state.pitch <= limits.psi_lim
    angular = abs(state.roll) > limits.phi_act
    return linear, angular


def v_el_box(state, limits):
    """
    V_el: velocities achievable without a flip-over.

    Linear bound v <= v_a + lambda_el * tanh(pitch) while the pitch trigger is
    active and pitch <= psi_lim (nose-down pitch lowers the bound), floored at
    v_floor. Angular window omega_a +/- max(lambda_el * |tanh(roll)|,
    omega_window_floor) while the roll trigger is active. Inactive parts fall
    back to V_s.
    """
    full = static_window(limits)
    linear, angular = el_active(state, limits)
    v_max = full.v_max
    if linear:
        # Floor is PlannerLimits.v_floor; the bound never drops below it on descents
        v_max = max(state.v_a + limits.lambda_el * math.tanh(state.pitch), limits.v_floor)
    omega_min, omega_max = full.omega_min, full.omega_max
    if angular:
        width = max(limits.lambda_el * abs(math.tanh(state.roll)), limits.omega_window_floor)
        omega_min, omega_max = state.omega_a - width, state.omega_a + width
    return VelocityBox(0.0, v_max, omega_min, omega_max)


def v_vib_box(state, vib, limits):
    """
    V_vib: velocities achievable with low vibration.

    Active when vib.magnitude > sigma_act: v <= max(v_a - lambda_vib * sigma,
    v_floor) and omega_a +/- max(lambda_vib * sigma, omega_window_floor).
    """
    sigma = vib.magnitude
    if sigma <= limits.sigma_act:
        return static_window(limits)
    v_max = max(state.v_a - limits.lambda_vib * sigma, limits.v_floor)
    width = max(limits.lambda_vib * sigma, limits.omega_window_floor)
    return VelocityBox(0.0, v_max, state.omega_a - width, state.omega_a + width)


def search_space(state, vib, limits, constrained=True):
    """
    Velocity box the planner samples.

    Returns:
        tuple: (V_new, dict of every box by name, tuple of active constraints)
    """
    boxes = {
        'V_s': static_window(limits),
        'V_d': dynamic_window(state, limits),
        'V_el': v_el_box(state, limits),
        'V_vib': v_vib_box(state, vib, limits),
    }
    active = []
    box = boxes['V_d']
    if constrained:
        box = box.intersect(boxes['V_el']).intersect(boxes['V_vib'])
        if any(el_active(state, limits)):
            active.append('V_el')
        if vib.magnitude > limits.sigma_act:
            active.append('V_vib')
    boxes['V_new'] = box
    return box, boxes, tuple(active)


def sample_axis(low, high, count):
    """Evenly spaced samples including both ends; a point interval gives one sample."""
    if high <= low or count == 1:
        return np.array([low if high <= low else 0.5 * (low + high)])
    samples = np.linspace(low, high, count)
    samples[np.abs(samples) < 1e-12] = 0.0
    return samples


def candidate_grid(box, limits):
    """Flattened (v, omega) candidates, v-major."""
    vs = sample_axis(box.v_min, box.v_max, limits.n_v)
    omegas = sample_axis(box.omega_min, box.omega_max, limits.n_omega)
    v_grid, omega_grid = np.meshgrid(vs, omegas, indexing='ij')
    return v_grid.ravel(), omega_grid.ravel()


def window_radius(costmap):
    return (costmap.shape[0] // 2) * costmap.resolution


def arc_first_hit(costmap, vs, omegas, c_obs):
    """
    Arc length to the first cell with cost >= c_obs along each candidate arc.

    Arcs are sampled every resolution / 4 up to the window radius; points
    outside the window count as free. v = 0 never hits.

    Returns:
        ndarray: Distance per candidate (inf when nothing is hit)
    """
    vs = np.asarray(vs, dtype=float)
    omegas = np.asarray(omegas, dtype=float)
    res = costmap.resolution
    radius = window_radius(costmap)
    ds = res / 4.0
    count = max(int(math.ceil(radius / ds)), 1)
    s = ds * np.arange(1, count + 1)

    moving = vs > 0
    kappa = np.zeros_like(vs)
    np.divide(omegas, vs, out=kappa, where=moving)
    straight = np.abs(kappa) < 1e-9
    safe = np.where(straight, 1.0, kappa)[:, None]
    turn = kappa[:, None] * s[None, :]
    forward = np.where(straight[:, None], s[None, :], np.sin(turn) / safe)
    left = np.where(straight[:, None], 0.0, (1.0 - np.cos(turn)) / safe)

    rows_n, cols_n = costmap.shape
    center_row, center_col = costmap.center
    rows = center_row + np.floor(forward / res + 0.5).astype(int)
    cols = center_col + np.floor(left / res + 0.5).astype(int)
    inside = (rows >= 0) & (rows < rows_n) & (cols >= 0) & (cols < cols_n)
    costs = costmap.values[np.clip(rows, 0, rows_n - 1), np.clip(cols, 0, cols_n - 1)]
    hit = inside & (costs >= c_obs) & moving[:, None]

    any_hit = hit.any(axis=1)
    first = np.argmax(hit, axis=1)
    return np.where(any_hit, s[first], np.inf)


def stopping_distance(v, limits):
    return v * v / (2.0 * limits.brake_decel)


def admissible(costmap, state, v, omega, limits):
    """
    True iff the arc under (v, omega) meets no obstacle cell within the stopping distance.

    `state` is accepted for interface symmetry; the cost-map is already robot-centric.
    """
    hit = arc_first_hit(costmap, [v], [omega], limits.c_obs)[0]
    return bool(hit > stopping_distance(v, limits))


def predicted_pose(vs, omegas, dt):
    """Robot-frame pose after dt under each (v, omega), exact arc."""
    vs = np.asarray(vs, dtype=float)
    omegas = np.asarray(omegas, dtype=float)
    dtheta = omegas * dt
    straight = np.abs(omegas) < 1e-9
    safe = np.where(straight, 1.0, omegas)
    x = np.where(straight, vs * dt, vs / safe * np.sin(dtheta))
    y = np.where(straight, 0.0, vs / safe * (1.0 - np.cos(dtheta)))
    return x, y, dtheta


def evaluate_candidates(state, costmap, waypoint, box, limits):
    """
    Raw DWA terms for every sampled candidate in `box`.

    Returns:
        dict: Arrays 'v', 'omega', 'admissible', 'head', 'dist', 'vel'
    """
    vs, omegas = candidate_grid(box, limits)
    hits = arc_first_hit(costmap, vs, omegas, limits.c_obs)
    radius = window_radius(costmap)
    target_x, target_y = to_robot_frame(state.pose, *waypoint)
    x, y, dtheta = predicted_pose(vs, omegas, limits.dt)
    error = np.arctan2(target_y - y, target_x - x) - dtheta
    error = np.abs(np.angle(np.exp(1j * error)))
    return {
        'v': vs,
        'omega': omegas,
        'admissible': hits > vs * vs / (2.0 * limits.brake_decel),
        'head': 1.0 - error / math.pi,
        'dist': np.minimum(hits, radius) / radius if radius > 0 else np.ones_like(vs),
        'vel': vs / limits.v_abs_max,
    }


def normalize_term(values):
    """Min-max normalize to [0, 1]; a constant term maps to 1."""
    low = values.min()
    high = values.max()
    if high == low:
        return np.ones_like(values)
    return (values - low) / (high - low)


def recovery_command(state, waypoint, limits, status='recovery', boxes=None, active=(), candidates=0):
    """Stop and rotate toward the waypoint at omega_window_floor."""
    bearing = 0.0 if waypoint is None else state.pose.bearing_to(*waypoint)
    omega = limits.omega_window_floor if bearing >= 0 else -limits.omega_window_floor
    return PlanResult(0.0, omega, status, boxes or {}, active, {}, candidates, 0)


def plan_velocity(state, costmap, waypoint, vib, limits, constrained=True):
    """
    Pick (v, omega) maximizing the normalized DWA objective.

    Args:
        state: RobotState (pose used to express the waypoint in the robot frame)
        costmap: Robot-centric CostMap
        waypoint: World point (x, y) to steer toward
        vib: Current VibrationMeasure
        limits: PlannerLimits
        constrained: Apply V_el and V_vib (False gives plain DWA)

    Returns:
        PlanResult: status 'ok', or 'recovery' when the box is empty or no
        candidate is admissible
    """
    box, boxes, active = search_space(state, vib, limits, constrained)
    if box.empty:
        logger.debug('empty velocity box, active constraints %s', active)
        return recovery_command(state, waypoint, limits, boxes=boxes, active=active)

    terms = evaluate_candidates(state, costmap, waypoint, box, limits)
    mask = terms['admissible']
    candidates = int(mask.size)
    if not mask.any():
        logger.debug('no admissible candidate among %d', candidates)
        return recovery_command(state, waypoint, limits, boxes=boxes, active=active,
                                candidates=candidates)

    index = np.flatnonzero(mask)
    head = normalize_term(terms['head'][index])
    dist = normalize_term(terms['dist'][index])
    vel = normalize_term(terms['vel'][index])
    score = limits.alpha * head + limits.beta * dist + limits.gamma * vel
    v = terms['v'][index]
    omega = terms['omega'][index]
    best = int(np.lexsort((v, np.abs(omega), -score))[0])

    chosen = {
        'head': float(head[best]),
        'dist': float(dist[best]),
        'vel': float(vel[best]),
        'G': float(score[best]),
    }
    return PlanResult(float(v[best]), float(omega[best]), 'ok', boxes, active, chosen,
                      candidates, int(index.size))
