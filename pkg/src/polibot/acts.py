"""Dialogue acts, slots, and the closed slot vocabularies of the tour scenario."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class DialogueAct(Enum):
    GREETING = "Greeting"
    THANKING = "Thanking"
    TAKE_TO_PLACE = "TakeToPlace"
    MOVE_ROBOT = "MoveRobot"
    TURN_ROBOT = "TurnRobot"
    ACCEPT = "Accept"
    REJECT = "Reject"
    ABORT_ROBOT = "AbortRobot"
    FINISHED_ONE = "FinishedOne"
    UNKNOWN = "Unknown"

    def __str__(self) -> str:
        return self.value


# Acts a user utterance may be labeled with in a corpus.  FinishedOne is
# synthesized internally when a navigation goal completes and Unknown is the
# parser's reject class, so neither may appear in training data.
TRAINABLE_ACTS = frozenset(
    a for a in DialogueAct if a not in (DialogueAct.FINISHED_ONE, DialogueAct.UNKNOWN)
)

# Acts that never carry a slot.
NO_SLOT_ACTS = frozenset(
    {
        DialogueAct.GREETING,
        DialogueAct.THANKING,
        DialogueAct.ACCEPT,
        DialogueAct.REJECT,
        DialogueAct.ABORT_ROBOT,
    }
)

NO_SLOT = "no_slot"
NO_VALUE = "no_value"

ROOMS = ("retail", "education", "tourism", "healthcare")
DIRECTIONS = ("forward", "backward", "right", "left")

SLOT_VOCABULARY: dict[str, tuple[str, ...]] = {
    "room": ROOMS,
    "direction": DIRECTIONS,
}

# Surface forms accepted for each slot value by the pattern parser.  Values on
# the left are canonical; parsing normalizes any alias to its canonical form.
VALUE_ALIASES: dict[str, dict[str, str]] = {
    "room": {name: name for name in ROOMS},
    "direction": {
        "forward": "forward",
        "forwards": "forward",
        "ahead": "forward",
        "straight": "forward",
        "backward": "backward",
        "backwards": "backward",
        "back": "backward",
        "around": "backward",
        "right": "right",
        "left": "left",
    },
}


@dataclass(frozen=True)
class SlotValue:
    """One filled slot.  Acts without parameters carry (no_slot, no_value)."""

    slot: str
    value: str

    def __post_init__(self) -> None:
        if self.slot == NO_SLOT:
            if self.value != NO_VALUE:
                raise ValueError(f"no_slot must carry no_value, got {self.value!r}")
        elif self.slot in SLOT_VOCABULARY:
            if self.value not in SLOT_VOCABULARY[self.slot]:
                raise ValueError(f"{self.value!r} is not a {self.slot} value")
        else:
            raise ValueError(f"unknown slot {self.slot!r}")


NO_SLOT_VALUE = SlotValue(NO_SLOT, NO_VALUE)


def act_from_name(name: str) -> DialogueAct:
    for act in DialogueAct:
        if act.value == name:
            return act
    raise ValueError(f"unknown dialogue act {name!r}")
