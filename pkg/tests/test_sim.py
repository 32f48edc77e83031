"""Simulated world: command execution, tick integration, event delivery."""

import math

import pytest

from polibot.grid import parse_map
from polibot.motion import GoTo, RelativeMove, RelativeTurn, Stop, Teleop
from polibot.sim import (
    REASON_BLOCKED,
    REASON_NO_PATH,
    REASON_PREEMPTED,
    REASON_UNKNOWN_LOCATION,
    Arrived,
    Blocked,
    Pose,
    SimConfig,
    World,
    wrap_angle,
)


def make_world(*rows, inflation=0.0, instant=False):
    g = parse_map("resolution=0.1\n" + "\n".join(rows) + "\n")
    cfg = SimConfig(inflation_radius=inflation)
    return World(g, config=cfg, instant=instant)


def corridor():
    # retail sits exactly 1 m down a straight hallway, heading already aligned
    return make_world("#############", "#@.........R#", "#############")


# ---------------------------------------------------------------------------
# angles and poses


@pytest.mark.parametrize(
    "angle,wrapped",
    [
        (0.0, 0.0),
        (math.pi, math.pi),
        (-math.pi, math.pi),
        (3 * math.pi / 2, -math.pi / 2),
        (2 * math.pi, 0.0),
        (-7 * math.pi, math.pi),
    ],
)
def test_wrap_angle(angle, wrapped):
    assert wrap_angle(angle) == pytest.approx(wrapped)


def test_pose_normalizes_theta():
    assert Pose(0, 0, 3 * math.pi).theta == pytest.approx(math.pi)


# ---------------------------------------------------------------------------
# GoTo along a plan


def test_one_meter_at_half_speed_takes_twenty_ticks():
    w = corridor()
    w.execute(GoTo("retail"))
    for _ in range(19):
        assert w.tick(0.5) == []
        assert w.moving
    assert w.tick(0.5) == [Arrived("retail")]
    assert not w.moving
    assert w.pose.x == pytest.approx(1.15, abs=1e-9)
    assert w.t == pytest.approx(2.0)


def test_travel_time_scales_with_speed():
    w = corridor()
    w.execute(GoTo("retail"))
    ticks = 0
    while w.moving:
        events = w.tick(0.25)
        ticks += 1
    assert events == [Arrived("retail")]
    assert ticks == 40


def test_speed_change_scales_displacement():
    w = corridor()
    w.execute(GoTo("retail"))
    x0 = w.pose.x
    w.tick(0.5)
    fast = w.pose.x - x0
    x1 = w.pose.x
    w.tick(0.25)
    slow = w.pose.x - x1
    assert fast == pytest.approx(2 * slow)


def test_follower_rotates_before_translating():
    w = make_world("#####", "#.R.#", "#.@.#", "#####")
    start = w.pose
    w.execute(GoTo("retail"))  # straight up: quarter turn first
    turning_ticks = 0
    while w.moving:
        pose_before = w.pose
        w.tick(0.5)
        if (w.pose.x, w.pose.y) == (pose_before.x, pose_before.y) and w.moving:
            turning_ticks += 1
            assert w.pose.theta != pose_before.theta
    # quarter turn at 1.5 rad/s, 0.1 s ticks: ten full steps before alignment
    assert turning_ticks == 10
    assert (w.pose.x, w.pose.y) != (start.x, start.y)


def test_goto_again_after_arrival_is_immediate():
    w = corridor()
    w.execute(GoTo("retail"))
    while w.moving:
        w.tick(0.75)
    arrived_at = w.pose
    w.execute(GoTo("retail"))
    assert w.moving  # the event still has to be delivered
    assert w.tick(0.75) == [Arrived("retail")]
    assert w.pose == arrived_at


def test_unknown_location_is_reported_not_raised():
    w = corridor()
    w.execute(GoTo("cafeteria"))
    assert w.tick(0.5) == [Blocked("cafeteria", REASON_UNKNOWN_LOCATION)]
    assert not w.moving


def test_unreachable_location_reports_no_path():
    w = make_world("#######", "#@.#.R#", "#######")
    w.execute(GoTo("retail"))
    assert w.tick(0.5) == [Blocked("retail", REASON_NO_PATH)]


def test_stop_freezes_the_pose():
    w = corridor()
    w.execute(GoTo("retail"))
    for _ in range(5):
        w.tick(0.5)
    w.execute(Stop())
    frozen = w.pose
    assert not w.moving
    assert w.tick(0.5) == []
    assert w.pose == frozen


def test_new_goto_replaces_the_old_goal():
    w = make_world("#############", "#@....R....E#", "#############")
    w.execute(GoTo("education"))
    for _ in range(3):
        w.tick(0.5)
    w.execute(GoTo("retail"))
    assert w.active_goal() == "retail"
    events = []
    while w.moving:
        events.extend(w.tick(0.5))
    assert events == [Arrived("retail")]


# ---------------------------------------------------------------------------
# relative motion


def test_relative_move_covers_the_step_distance():
    w = corridor()
    w.execute(RelativeMove("forward", 0.5))
    ticks = 0
    while w.moving:
        events = w.tick(0.5)
        ticks += 1
    assert events == [Arrived(None)]
    assert ticks == 10
    assert w.pose.x == pytest.approx(0.65)


def test_relative_move_default_distance_comes_from_config():
    w = corridor()
    w.execute(RelativeMove("forward"))
    while w.moving:
        w.tick(0.5)
    assert w.pose.x == pytest.approx(0.15 + w.config.move_step)


def test_blocked_move_stops_clear_of_the_inflation_layer():
    w = make_world(
        "########",
        "#......#",
        "#.@..###",
        "#......#",
        "########",
        inflation=0.1,
    )
    w.execute(RelativeMove("forward", 1.0))
    events = []
    while w.moving:
        events.extend(w.tick(0.5))
    assert events == [Blocked(None, REASON_BLOCKED)]
    # column 4 is inflated by the wall at column 5; the robot parks in column 3
    assert w.pose.x < 0.4
    assert w.grid.cell_of(w.pose.x, w.pose.y) == (2, 3)
    assert w.costmap.traversable(w.grid.cell_of(w.pose.x, w.pose.y))


def test_backward_move_turns_around_first():
    w = make_world("#######", "#..@..#", "#######")
    w.execute(RelativeMove("backward", 0.1))
    while w.moving:
        w.tick(0.5)
    assert w.pose.theta == pytest.approx(math.pi)
    assert w.pose.x == pytest.approx(0.25)


def test_relative_turn_left_quarter():
    w = corridor()
    w.execute(RelativeTurn("left"))
    ticks = 0
    while w.moving:
        events = w.tick(0.5)
        ticks += 1
    assert events == [Arrived(None)]
    assert ticks == 11  # ceil((pi/2) / 0.15)
    assert w.pose.theta == pytest.approx(math.pi / 2)


def test_relative_turn_right_is_negative():
    w = corridor()
    w.execute(RelativeTurn("right", math.pi / 4))
    while w.moving:
        w.tick(0.5)
    assert w.pose.theta == pytest.approx(-math.pi / 4)


# ---------------------------------------------------------------------------
# teleoperation


def test_teleop_forward_then_stop():
    w = corridor()
    w.execute(Teleop("forward"))
    for _ in range(4):
        assert w.tick(0.5) == []
    assert w.pose.x == pytest.approx(0.15 + 4 * 0.05)
    w.execute(Teleop("stop"))
    assert not w.moving
    frozen = w.pose
    w.tick(0.5)
    assert w.pose == frozen


def test_teleop_turns_in_place():
    w = corridor()
    w.execute(Teleop("left"))
    w.tick(0.5)
    assert w.pose.theta == pytest.approx(0.15)
    assert w.pose.x == pytest.approx(0.15)
    w.execute(Teleop("right"))
    w.tick(0.5)
    w.tick(0.5)
    assert w.pose.theta == pytest.approx(-0.15)


def test_teleop_into_a_wall_holds_position():
    w = make_world("#####", "#@..#", "#####")
    w.execute(Teleop("forward"))
    for _ in range(30):
        w.tick(0.75)
    assert w.pose.x < 0.40  # never inside the wall cell
    assert w.costmap.traversable(w.grid.cell_of(w.pose.x, w.pose.y))
    held = w.pose.x
    for _ in range(10):
        w.tick(0.75)
    assert w.pose.x == held  # pinned against the wall, not creeping


def test_teleop_stop_preempts_a_goto():
    w = corridor()
    w.execute(GoTo("retail"))
    w.tick(0.5)
    w.execute(Teleop("stop"))
    assert w.tick(0.5) == [Blocked("retail", REASON_PREEMPTED)]
    assert not w.moving


def test_teleop_drive_preempts_a_goto():
    w = corridor()
    w.execute(GoTo("retail"))
    w.tick(0.5)
    w.execute(Teleop("backward"))
    events = w.tick(0.5)
    assert events == [Blocked("retail", REASON_PREEMPTED)]
    assert w.moving  # teleop still active


def test_unknown_teleop_direction_raises():
    w = corridor()
    with pytest.raises(ValueError, match="teleop"):
        w.execute(Teleop("sideways"))


# ---------------------------------------------------------------------------
# event delivery and determinism


def test_pending_events_make_the_world_moving():
    w = corridor()
    w.execute(GoTo("nowhere"))
    assert w.moving  # nothing to integrate, but an event awaits delivery
    w.tick(0.5)
    assert not w.moving


def test_events_are_delivered_exactly_once():
    w = corridor()
    w.execute(GoTo("retail"))
    seen = []
    for _ in range(60):
        seen.extend(w.tick(0.5))
    assert seen == [Arrived("retail")]


def test_identical_runs_produce_identical_traces():
    def run():
        w = corridor()
        trace = []
        w.execute(GoTo("retail"))
        while w.moving:
            w.tick(0.45)
            trace.append((w.t, w.pose.x, w.pose.y, w.pose.theta))
        w.execute(RelativeTurn("left"))
        while w.moving:
            w.tick(0.45)
            trace.append((w.t, w.pose.x, w.pose.y, w.pose.theta))
        return trace

    assert run() == run()


def test_pose_cell_is_always_traversable_during_transit():
    from polibot.grid import bundled_map

    w = World(bundled_map())
    for goal in ("retail", "education", "tourism", "healthcare"):
        w.execute(GoTo(goal))
        for _ in range(20_000):
            if not w.moving:
                break
            w.tick(0.75)
            assert w.costmap.traversable(w.grid.cell_of(w.pose.x, w.pose.y))
        assert not w.moving


# ---------------------------------------------------------------------------
# instant mode


def test_instant_goto_teleports():
    w = make_world("#############", "#@.........R#", "#############", instant=True)
    w.execute(GoTo("retail"))
    assert w.moving
    assert w.tick(0.5) == [Arrived("retail")]
    assert (w.pose.x, w.pose.y) == pytest.approx((1.15, 0.15))


def test_instant_relative_motion():
    w = make_world("###############", "#@............#", "###############", instant=True)
    w.execute(RelativeMove("forward", 0.8))
    assert w.tick(0.5) == [Arrived(None)]
    assert w.pose.x == pytest.approx(0.95)
    w.execute(RelativeTurn("left", math.pi))
    assert w.tick(0.5) == [Arrived(None)]
    assert w.pose.theta == pytest.approx(math.pi)


def test_instant_blocked_move_still_reports():
    w = make_world("#####", "#@..#", "#####", instant=True)
    w.execute(RelativeMove("forward", 2.0))
    assert w.tick(0.5) == [Blocked(None, REASON_BLOCKED)]
