"""Tick-based robot simulator and motion manager.

The world owns a pose on the inflated costmap and at most one active motion:
a planned GoTo follow, a scripted relative move or turn, or a teleop mode.
``tick`` advances the active motion by one time step at the behavior-supplied
speed and reports arrivals and failures as events for the dialogue flow.

The follower is rotate-then-translate: each tick it turns toward the current
segment heading within the angular budget, and only when aligned does it
advance, carrying leftover distance across collinear waypoints.  Translation
progress is parametric along the plan, so travel time is path length over
speed to within one tick.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .grid import Costmap, OccupancyGrid, inflate
from .motion import GoTo, MotionCommand, RelativeMove, RelativeTurn, Stop, Teleop
from .planner import NoPath, NotTraversable, plan

REASON_UNKNOWN_LOCATION = "UnknownLocation"
REASON_BLOCKED = "Blocked"
REASON_NO_PATH = "NoPath"
REASON_PREEMPTED = "Preempted"

_ALIGNED = 1e-9
_DONE = 1e-9


def wrap_angle(a: float) -> float:
    """Normalize to (-pi, pi]."""
    a = math.fmod(a, 2.0 * math.pi)
    if a <= -math.pi:
        a += 2.0 * math.pi
    elif a > math.pi:
        a -= 2.0 * math.pi
    return a


@dataclass(frozen=True)
class Pose:
    x: float
    y: float
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", wrap_angle(self.theta))


@dataclass(frozen=True)
class SimConfig:
    dt: float = 0.1
    omega_max: float = 1.5  # rad/s
    inflation_radius: float = 0.3  # m, about a Pepper footprint
    move_step: float = 1.0  # m, default RelativeMove distance
    turn_step: float = math.pi / 2  # rad, default RelativeTurn angle
    eps_pos: float | None = None  # None -> half a cell

    def arrival_eps(self, resolution: float) -> float:
        return 0.5 * resolution if self.eps_pos is None else self.eps_pos


@dataclass(frozen=True)
class Arrived:
    location: str | None


@dataclass(frozen=True)
class Blocked:
    location: str | None
    reason: str


SimEvent = Arrived | Blocked

# teleop commands -> (linear sign, angular sign)
_TELEOP = {
    "forward": (1.0, 0.0),
    "backward": (-1.0, 0.0),
    "left": (0.0, 1.0),
    "right": (0.0, -1.0),
}

# relative-move heading offsets in the robot frame
_MOVE_OFFSET = {
    "forward": 0.0,
    "backward": math.pi,
    "left": math.pi / 2,
    "right": -math.pi / 2,
}


class _Follow:
    """GoTo handle: waypoints in meters, parametric progress along segments."""

    def __init__(self, location: str, points: list[tuple[float, float]]):
        self.location = location
        self.points = points
        self.index = 0  # current segment start
        self.progress = 0.0  # meters along current segment

    def remaining_points(self) -> list[tuple[float, float]]:
        return self.points[self.index + 1:]


class _Drive:
    """RelativeMove handle: face a heading, then cover a fixed distance."""

    def __init__(self, target_theta: float, distance: float):
        self.target_theta = target_theta
        self.remaining = distance


class _Spin:
    """RelativeTurn handle: signed angle still to rotate."""

    def __init__(self, angle: float):
        self.remaining = angle


class World:
    def __init__(
        self,
        grid: OccupancyGrid,
        config: SimConfig = SimConfig(),
        costmap: Costmap | None = None,
        instant: bool = False,
    ):
        self.grid = grid
        self.config = config
        self.costmap = costmap if costmap is not None else inflate(grid, config.inflation_radius)
        self.instant = instant
        x, y = grid.cell_center(grid.spawn)
        self.pose = Pose(x, y, 0.0)
        self.t = 0.0
        self._handle: _Follow | _Drive | _Spin | None = None
        self._teleop: str | None = None
        self._pending: list[SimEvent] = []

    # -- queries ------------------------------------------------------------

    @property
    def moving(self) -> bool:
        """True while another tick would do work.

        Covers undelivered events too: an instantly-satisfied GoTo parks its
        Arrived in the pending list, and the caller's tick loop must keep
        going until that reaches the dialogue flow.
        """
        return self._handle is not None or self._teleop is not None or bool(self._pending)

    def active_goal(self) -> str | None:
        return self._handle.location if isinstance(self._handle, _Follow) else None

    def plan_points(self) -> list[tuple[float, float]]:
        if isinstance(self._handle, _Follow):
            return self._handle.remaining_points()
        return []

    # -- commands -----------------------------------------------------------

    def execute(self, cmd: MotionCommand) -> None:
        """Install a motion.  A new command replaces whatever was active."""
        if isinstance(cmd, Stop):
            self._handle = None
            self._teleop = None
            return
        if isinstance(cmd, Teleop):
            self._start_teleop(cmd.direction)
            return
        self._teleop = None
        if isinstance(cmd, GoTo):
            self._start_goto(cmd.location)
        elif isinstance(cmd, RelativeMove):
            distance = cmd.distance if cmd.distance is not None else self.config.move_step
            target = wrap_angle(self.pose.theta + _MOVE_OFFSET[cmd.direction])
            self._handle = _Drive(target, distance)
            if self.instant:
                self._finish_instant_drive()
        elif isinstance(cmd, RelativeTurn):
            angle = cmd.angle if cmd.angle is not None else self.config.turn_step
            sign = 1.0 if cmd.direction == "left" else -1.0
            self._handle = _Spin(sign * angle)
            if self.instant:
                spin = self._handle
                self.pose = replace(self.pose, theta=self.pose.theta + spin.remaining)
                self._handle = None
                self._pending.append(Arrived(None))
        else:
            raise TypeError(f"unknown motion command {cmd!r}")

    def _start_goto(self, location: str) -> None:
        cell = self.grid.locations.get(location)
        if cell is None:
            self._handle = None
            self._pending.append(Blocked(location, REASON_UNKNOWN_LOCATION))
            return
        gx, gy = self.grid.cell_center(cell)
        eps = self.config.arrival_eps(self.grid.resolution)
        if math.hypot(gx - self.pose.x, gy - self.pose.y) <= eps:
            self._handle = None
            self._pending.append(Arrived(location))
            return
        start = self.grid.cell_of(self.pose.x, self.pose.y)
        try:
            p = plan(self.costmap, start, cell)
        except (NoPath, NotTraversable):
            self._handle = None
            self._pending.append(Blocked(location, REASON_NO_PATH))
            return
        points = [self.grid.cell_center(c) for c in p.waypoints]
        sx, sy = points[0]
        if math.hypot(sx - self.pose.x, sy - self.pose.y) > _ALIGNED:
            points.insert(0, (self.pose.x, self.pose.y))
        if self.instant:
            self.pose = replace(self.pose, x=gx, y=gy)
            self._handle = None
            self._pending.append(Arrived(location))
            return
        self._handle = _Follow(location, points)

    def _start_teleop(self, direction: str) -> None:
        if direction == "stop":
            # the operator's brake cancels scripted motion too
            if isinstance(self._handle, _Follow):
                self._pending.append(Blocked(self._handle.location, REASON_PREEMPTED))
            self._handle = None
            self._teleop = None
            return
        if direction not in _TELEOP:
            raise ValueError(f"unknown teleop direction {direction!r}")
        if isinstance(self._handle, _Follow):
            self._pending.append(Blocked(self._handle.location, REASON_PREEMPTED))
        self._handle = None
        if not self.instant:
            self._teleop = direction

    def _finish_instant_drive(self) -> None:
        drive = self._handle
        assert isinstance(drive, _Drive)
        x = self.pose.x + drive.remaining * math.cos(drive.target_theta)
        y = self.pose.y + drive.remaining * math.sin(drive.target_theta)
        self._handle = None
        if self._clear_to(x, y):
            self.pose = Pose(x, y, drive.target_theta)
            self._pending.append(Arrived(None))
        else:
            self._pending.append(Blocked(None, REASON_BLOCKED))

    # -- integration ----------------------------------------------------------

    def tick(self, speed: float) -> list[SimEvent]:
        """Advance one dt at the given linear speed; return motion events."""
        events = self._pending
        self._pending = []
        if isinstance(self._handle, _Follow):
            events.extend(self._tick_follow(speed))
        elif isinstance(self._handle, _Drive):
            events.extend(self._tick_drive(speed))
        elif isinstance(self._handle, _Spin):
            events.extend(self._tick_spin())
        elif self._teleop is not None:
            self._tick_teleop(speed)
        self.t += self.config.dt
        return events

    def _rotate_toward(self, target: float) -> bool:
        """One tick's rotation budget; True when aligned afterwards."""
        err = wrap_angle(target - self.pose.theta)
        if abs(err) <= _ALIGNED:
            return True
        budget = self.config.omega_max * self.config.dt
        if abs(err) <= budget:
            self.pose = replace(self.pose, theta=target)
            return True
        step = budget if err > 0 else -budget
        self.pose = replace(self.pose, theta=self.pose.theta + step)
        return False

    def _tick_follow(self, speed: float) -> list[SimEvent]:
        follow = self._handle
        assert isinstance(follow, _Follow)
        budget = speed * self.config.dt
        while True:
            ax, ay = follow.points[follow.index]
            bx, by = follow.points[follow.index + 1]
            seg_len = math.hypot(bx - ax, by - ay)
            if not self._rotate_toward(math.atan2(by - ay, bx - ax)):
                return []
            remaining = seg_len - follow.progress
            if remaining > budget + _DONE:
                follow.progress += budget
                f = follow.progress / seg_len
                self.pose = replace(self.pose, x=ax + f * (bx - ax), y=ay + f * (by - ay))
                return []
            # waypoint reached this tick; carry leftover into the next segment
            budget -= remaining
            follow.index += 1
            follow.progress = 0.0
            self.pose = replace(self.pose, x=bx, y=by)
            if follow.index == len(follow.points) - 1:
                location = follow.location
                self._handle = None
                return [Arrived(location)]

    def _tick_drive(self, speed: float) -> list[SimEvent]:
        drive = self._handle
        assert isinstance(drive, _Drive)
        if not self._rotate_toward(drive.target_theta):
            return []
        step = min(speed * self.config.dt, drive.remaining)
        x = self.pose.x + step * math.cos(self.pose.theta)
        y = self.pose.y + step * math.sin(self.pose.theta)
        if not self._clear_to(x, y):
            self._handle = None
            return [Blocked(None, REASON_BLOCKED)]
        self.pose = replace(self.pose, x=x, y=y)
        drive.remaining -= step
        if drive.remaining <= _DONE:
            self._handle = None
            return [Arrived(None)]
        return []

    def _tick_spin(self) -> list[SimEvent]:
        spin = self._handle
        assert isinstance(spin, _Spin)
        budget = self.config.omega_max * self.config.dt
        step = max(-budget, min(budget, spin.remaining))
        self.pose = replace(self.pose, theta=self.pose.theta + step)
        spin.remaining -= step
        if abs(spin.remaining) <= _ALIGNED:
            self._handle = None
            return [Arrived(None)]
        return []

    def _tick_teleop(self, speed: float) -> None:
        lin, ang = _TELEOP[self._teleop]
        if ang != 0.0:
            step = ang * self.config.omega_max * self.config.dt
            self.pose = replace(self.pose, theta=self.pose.theta + step)
            return
        step = lin * speed * self.config.dt
        x = self.pose.x + step * math.cos(self.pose.theta)
        y = self.pose.y + step * math.sin(self.pose.theta)
        if self._clear_to(x, y):
            self.pose = replace(self.pose, x=x, y=y)
        # blocked teleop holds position silently; the operator sees the pose

    def _clear_to(self, x: float, y: float) -> bool:
        """Every sample on the straight run from the pose to (x, y) is traversable."""
        dist = math.hypot(x - self.pose.x, y - self.pose.y)
        samples = max(1, int(math.ceil(dist / (0.5 * self.grid.resolution))))
        for i in range(1, samples + 1):
            f = i / samples
            px = self.pose.x + f * (x - self.pose.x)
            py = self.pose.y + f * (y - self.pose.y)
            if not self.costmap.traversable(self.grid.cell_of(px, py)):
                return False
        return True
