"""
Angle, interval and arc helpers shared by the planner and the simulator.
"""
import math

TWO_PI = 2.0 * math.pi


def normalize_angle(angle):
    """
    Wrap an angle into (-pi, pi].

    Args:
        angle: Angle in radians

    Returns:
        float: Equivalent angle in (-pi, pi]
    """
    wrapped = math.remainder(float(angle), TWO_PI)
    if wrapped <= -math.pi:
        wrapped += TWO_PI
    return wrapped


def within_band(value, low, high, tol=0.0):
    """
    Check if a value is within a range (inclusive).

    Args:
        value: Value to check
        low: Lower bound
        high: Upper bound
        tol: Slack applied to both bounds

    Returns:
        bool: True if value is in [low - tol, high + tol]
    """
    if value is None:
        return False
    return low - tol <= value <= high + tol


def heading_basis(heading):
    """
    Cosine and sine of a heading, exact for multiples of pi/2.

    Args:
        heading: Heading in radians

    Returns:
        tuple: (cos, sin)
    """
    quarter = heading / (math.pi / 2.0)
    turns = round(quarter)
    if abs(quarter - turns) < 1e-12:
        return ((1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0))[turns % 4]
    return math.cos(heading), math.sin(heading)


def arc_displacement(v, omega, heading, duration):
    """
    Exact unicycle displacement under constant (v, omega).

    Args:
        v: Linear velocity (m/s)
        omega: Angular velocity (rad/s)
        heading: Heading at the start of the motion
        duration: Integration time (s)

    Returns:
        tuple: (dx, dy, dheading)
    """
    dtheta = omega * duration
    if abs(omega) < 1e-9:
        cos_h, sin_h = heading_basis(heading)
        return v * duration * cos_h, v * duration * sin_h, dtheta
    radius = v / omega
    end = heading + dtheta
    dx = radius * (math.sin(end) - math.sin(heading))
    dy = -radius * (math.cos(end) - math.cos(heading))
    return dx, dy, dtheta


def to_robot_frame(pose, x, y):
    """
    Express a world point in the robot frame (forward, left).

    Args:
        pose: Pose2D of the robot
        x: World x (m)
        y: World y (m)

    Returns:
        tuple: (forward, left) in meters
    """
    cos_h, sin_h = heading_basis(pose.heading)
    dx = x - pose.x
    dy = y - pose.y
    return dx * cos_h + dy * sin_h, -dx * sin_h + dy * cos_h


def to_world_frame(pose, forward, left):
    """Inverse of to_robot_frame."""
    cos_h, sin_h = heading_basis(pose.heading)
    return (pose.x + forward * cos_h - left * sin_h,
            pose.y + forward * sin_h + left * cos_h)


def format_metric(value, digits=3):
    """
    Format a metric for display.

    Args:
        value: Numeric value or None

    Returns:
        str: Fixed-point string, or "N/A" if the metric is absent
    """
    if value is None:
        return "N/A"
    return f"{value:.{digits}f}"
