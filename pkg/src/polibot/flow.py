"""Rule-based dialogue flow.

``step`` is a pure transition function over an immutable ``DialogueState``:
it consumes one event (a decoded user utterance or a motion notification) and
returns the response key, any motion command, any behavior update, and the new
state.  A bounded FIFO of recent (act, slots, politeness) entries provides the
conversational context; completing a navigation goal synthesizes the internal
FinishedOne act, which offers the next unvisited place until the tour list is
exhausted or the user declines.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from enum import Enum

from .acts import DialogueAct, SlotValue
from .motion import GoTo, MotionCommand, RelativeMove, RelativeTurn, Stop
from .nlu_types import ParseResult
from .politeness import PolitenessScore

logger = logging.getLogger(__name__)

CONTEXT_CAPACITY = 5

# Response-store keys for outcomes the dialogue-act enumeration cannot name.
KEY_ALREADY_VISITED = "AlreadyVisited"
KEY_TOUR_DONE = "TourDone"
KEY_MOTION_FAILED = "MotionFailed"

# Every (key, politeness class) the flow can emit; the response store is
# validated against this enumeration.
REACHABLE_RESPONSE_KEYS = tuple(
    [a.value for a in DialogueAct]
    + [KEY_ALREADY_VISITED, KEY_TOUR_DONE, KEY_MOTION_FAILED]
)

# Placeholders each response key's templates may use.
KEY_PLACEHOLDERS: dict[str, frozenset[str]] = {
    DialogueAct.TAKE_TO_PLACE.value: frozenset({"room"}),
    DialogueAct.ACCEPT.value: frozenset({"room"}),
    DialogueAct.MOVE_ROBOT.value: frozenset({"direction"}),
    DialogueAct.TURN_ROBOT.value: frozenset({"direction"}),
    DialogueAct.FINISHED_ONE.value: frozenset({"room", "next_room"}),
    KEY_ALREADY_VISITED: frozenset({"room"}),
}


class PhaseKind(Enum):
    IDLE = "Idle"
    IN_TRANSIT = "InTransit"
    AWAITING_ACCEPTANCE = "AwaitingAcceptance"
    TOUR_DONE = "TourDone"


@dataclass(frozen=True)
class Phase:
    kind: PhaseKind
    target: str | None = None  # InTransit destination
    next_index: int | None = None  # AwaitingAcceptance tour position

    @staticmethod
    def idle() -> "Phase":
        return Phase(PhaseKind.IDLE)

    @staticmethod
    def in_transit(target: str) -> "Phase":
        return Phase(PhaseKind.IN_TRANSIT, target=target)

    @staticmethod
    def awaiting(index: int) -> "Phase":
        return Phase(PhaseKind.AWAITING_ACCEPTANCE, next_index=index)

    @staticmethod
    def tour_done() -> "Phase":
        return Phase(PhaseKind.TOUR_DONE)

    def __str__(self) -> str:
        if self.kind is PhaseKind.IN_TRANSIT:
            return f"InTransit({self.target})"
        if self.kind is PhaseKind.AWAITING_ACCEPTANCE:
            return f"AwaitingAcceptance({self.next_index})"
        return self.kind.value


@dataclass(frozen=True)
class ContextEntry:
    da: DialogueAct
    slots: tuple[SlotValue, ...]
    dop: int
    timestamp: float


@dataclass(frozen=True)
class DialogueState:
    tour_list: tuple[str, ...]
    phase: Phase = field(default_factory=Phase.idle)
    visited: frozenset[str] = frozenset()
    context: tuple[ContextEntry, ...] = ()
    capacity: int = CONTEXT_CAPACITY

    def offered_location(self) -> str | None:
        if self.phase.kind is PhaseKind.AWAITING_ACCEPTANCE:
            return self.tour_list[self.phase.next_index]
        return None

    def first_unvisited(self, visited: frozenset[str] | None = None) -> int | None:
        done = self.visited if visited is None else visited
        for i, name in enumerate(self.tour_list):
            if name not in done:
                return i
        return None


def initial_state(tour_list: tuple[str, ...], capacity: int = CONTEXT_CAPACITY) -> DialogueState:
    return DialogueState(tour_list=tuple(tour_list), capacity=capacity)


# --------------------------------------------------------------------------
# events


@dataclass(frozen=True)
class UserUtterance:
    result: ParseResult
    politeness: PolitenessScore
    t: float = 0.0


@dataclass(frozen=True)
class MotionComplete:
    location: str
    t: float = 0.0


@dataclass(frozen=True)
class MotionFailed:
    location: str | None
    reason: str
    t: float = 0.0


@dataclass(frozen=True)
class Tick:
    t: float = 0.0


FlowEvent = UserUtterance | MotionComplete | MotionFailed | Tick


@dataclass(frozen=True)
class FlowOutput:
    new_state: DialogueState
    response_key: tuple[str, int] | None = None
    bindings: dict[str, str] = field(default_factory=dict)
    motion_command: MotionCommand | None = None
    behavior_update: int | None = None


# --------------------------------------------------------------------------
# transition


def _push_context(state: DialogueState, entry: ContextEntry) -> DialogueState:
    context = (state.context + (entry,))[-state.capacity:]
    return replace(state, context=context)


def _last_dop(state: DialogueState) -> int:
    return state.context[-1].dop if state.context else 0


def step(state: DialogueState, event: FlowEvent) -> FlowOutput:
    if isinstance(event, UserUtterance):
        return _step_utterance(state, event)
    if isinstance(event, MotionComplete):
        return _step_motion_complete(state, event)
    if isinstance(event, MotionFailed):
        logger.info("motion failed at %s: %s", event.location, event.reason)
        # A failed GoTo abandons the transit; a blocked sidestep keeps the phase.
        phase = Phase.idle() if state.phase.kind is PhaseKind.IN_TRANSIT else state.phase
        return FlowOutput(
            new_state=replace(state, phase=phase),
            response_key=(KEY_MOTION_FAILED, _last_dop(state)),
        )
    return FlowOutput(new_state=state)  # Tick


def _step_motion_complete(state: DialogueState, event: MotionComplete) -> FlowOutput:
    if (
        state.phase.kind is not PhaseKind.IN_TRANSIT
        or state.phase.target != event.location
    ):
        logger.warning(
            "ignoring completion for %s while %s", event.location, state.phase
        )
        return FlowOutput(new_state=state)

    visited = state.visited | {event.location}
    dop = _last_dop(state)
    next_index = state.first_unvisited(visited)
    if next_index is None:
        new_state = replace(state, visited=visited, phase=Phase.tour_done())
        return FlowOutput(
            new_state=new_state,
            response_key=(KEY_TOUR_DONE, dop),
            bindings={"room": event.location},
        )
    new_state = replace(state, visited=visited, phase=Phase.awaiting(next_index))
    # reaching the goal triggers the internal FinishedOne act offering the next place
    return FlowOutput(
        new_state=new_state,
        response_key=(DialogueAct.FINISHED_ONE.value, dop),
        bindings={"room": event.location, "next_room": state.tour_list[next_index]},
    )


def _step_utterance(state: DialogueState, event: UserUtterance) -> FlowOutput:
    result = event.result
    dop = event.politeness.discrete
    entry = ContextEntry(
        da=result.da, slots=result.slots, dop=dop, timestamp=event.t
    )
    state = _push_context(state, entry)
    da = result.da
    slots = result.slot_map

    def out(
        key: str | None,
        *,
        bindings: dict[str, str] | None = None,
        motion: MotionCommand | None = None,
        phase: Phase | None = None,
        visited: frozenset[str] | None = None,
    ) -> FlowOutput:
        new_state = state
        if phase is not None:
            new_state = replace(new_state, phase=phase)
        if visited is not None:
            new_state = replace(new_state, visited=visited)
        return FlowOutput(
            new_state=new_state,
            response_key=(key, dop) if key is not None else None,
            bindings=bindings or {},
            motion_command=motion,
            behavior_update=dop,
        )

    def unknown_like(why: str) -> FlowOutput:
        logger.warning("%s (da=%s, phase=%s)", why, da, state.phase)
        return out(DialogueAct.UNKNOWN.value)

    if da is DialogueAct.TAKE_TO_PLACE:
        room = slots.get("room")
        if room is None:
            return unknown_like("TakeToPlace without a room slot")
        if room in state.visited:
            return out(KEY_ALREADY_VISITED, bindings={"room": room})
        # latest intent wins: issuing GoTo cancels any motion in progress
        return out(
            DialogueAct.TAKE_TO_PLACE.value,
            bindings={"room": room},
            motion=GoTo(room),
            phase=Phase.in_transit(room),
        )

    if da is DialogueAct.ACCEPT:
        offered = state.offered_location()
        if offered is None:
            return unknown_like("Accept outside a tour offer")
        return out(
            DialogueAct.ACCEPT.value,
            bindings={"room": offered},
            motion=GoTo(offered),
            phase=Phase.in_transit(offered),
        )

    if da is DialogueAct.REJECT:
        if state.phase.kind is not PhaseKind.AWAITING_ACCEPTANCE:
            return unknown_like("Reject outside a tour offer")
        return out(DialogueAct.REJECT.value, phase=Phase.idle())

    if da in (DialogueAct.MOVE_ROBOT, DialogueAct.TURN_ROBOT):
        if state.phase.kind not in (PhaseKind.IDLE, PhaseKind.AWAITING_ACCEPTANCE):
            return unknown_like("relative motion while navigating")
        direction = slots.get("direction")
        if direction is None:
            return unknown_like(f"{da} without a direction slot")
        if da is DialogueAct.MOVE_ROBOT:
            return out(
                DialogueAct.MOVE_ROBOT.value,
                bindings={"direction": direction},
                motion=RelativeMove(direction),
            )
        return out(
            DialogueAct.TURN_ROBOT.value,
            bindings={"direction": direction},
            motion=RelativeTurn(direction),
        )

    if da is DialogueAct.ABORT_ROBOT:
        phase = Phase.idle() if state.phase.kind is PhaseKind.IN_TRANSIT else state.phase
        return out(DialogueAct.ABORT_ROBOT.value, motion=Stop(), phase=phase)

    if da in (DialogueAct.GREETING, DialogueAct.THANKING, DialogueAct.UNKNOWN):
        return out(da.value)

    return unknown_like(f"unexpected user act {da}")


def run_session(
    events: list[FlowEvent], initial: DialogueState
) -> tuple[list[FlowOutput], DialogueState]:
    """Fold ``step`` over a time-ordered event list."""
    outputs = []
    state = initial
    for event in events:
        output = step(state, event)
        outputs.append(output)
        state = output.new_state
    return outputs, state
