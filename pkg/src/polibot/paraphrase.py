"""Templated paraphrase generator for held-out evaluation.

Sentences come from hand-written template families per dialogue act, expanded
over slot surface forms and filtered against the training corpus so every
generated utterance is genuinely unseen.  Generation is deterministic for a
fixed seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from .acts import NO_SLOT, NO_VALUE, VALUE_ALIASES, DialogueAct

DEFAULT_SEED = 11

_ZONES = ("department", "section", "area")
_ROOMS = ("retail", "education", "tourism", "healthcare")

# Surfaces listed per family; the canonical value is recovered through the
# alias table so labels can never drift from what the parser would bind.
_MOVE_SURFACES = ("forward", "ahead", "straight", "backward", "back", "left", "right")
_TURN_SURFACES = ("left", "right", "around")

_GREETING = (
    "hello there robot",
    "hi there robot",
    "hey hello",
    "good morning robot",
    "good morning to you",
    "good afternoon robot",
    "good evening robot",
    "hello how are you",
    "hi how are you today",
    "hey how is it going",
    "hello good morning",
    "hi robot",
    "hey robot",
    "hello hello",
    "well hello there",
)

_THANKING = (
    "thank you for the tour",
    "thank you for everything",
    "thanks very much",
    "thank you kindly",
    "thanks for the help",
    "thank you for showing me around",
    "thanks for showing me",
    "many thanks robot",
    "thanks a bunch",
    "thank you that was great",
    "thanks i appreciate it",
    "thank you so very much",
    "cheers thanks",
    "that was great thank you",
    "lovely thank you",
)

_TAKE_TEMPLATES = (
    "would you show me the {room} {zone}",
    "can you show me the {room} {zone} please",
    "could you bring me to the {room} {zone}",
    "please take me to the {room} {zone}",
    "would you take me to the {room} {zone}",
    "can you guide me to the {room} {zone}",
    "i would like to visit the {room} {zone} please",
    "could we visit the {room} {zone}",
    "show me the {room} {zone} please",
    "take me over to the {room} {zone}",
    "can i see the {room} {zone}",
    "i want to visit the {room} {zone}",
    "could you show me the {room} {zone} now",
    "please show me where the {room} {zone} is",
)

_MOVE_TEMPLATES = (
    "please move {direction}",
    "can you move {direction}",
    "could you go {direction} please",
    "go {direction} now",
    "move {direction} a little",
    "would you move {direction}",
    "could you step {direction}",
    "please walk {direction}",
    "go {direction} a bit",
)

_TURN_TEMPLATES = (
    "please turn {direction}",
    "can you turn {direction} please",
    "could you turn {direction} now",
    "turn {direction} robot",
    "would you turn {direction}",
    "please rotate {direction}",
    "can you rotate {direction}",
)

_ACCEPT = (
    "yes of course",
    "yes please do",
    "yes i would love to",
    "sure i would like that",
    "okay sounds good",
    "yes that sounds good",
    "of course yes",
    "yeah sure",
    "ok yes please",
    "sure let's go",
    "yes let's do it",
    "okay why not",
    "yeah i would like to visit",
    "sure sounds good",
)

_REJECT = (
    "no not now",
    "no not today",
    "no maybe later",
    "not right now",
    "no i'm done",
    "no let's skip it",
    "no i don't want to",
    "nah not today",
    "no thanks maybe later",
    "not this time",
    "no skip this one",
)

_ABORT = (
    "stop right now",
    "please stop now",
    "stop the robot",
    "wait wait",
    "wait stop",
    "hold on a moment",
    "hold on a second",
    "stop please stop",
    "wait a minute",
    "halt now",
    "careful watch out",
    "stop moving please",
    "whoa stop",
)


@dataclass(frozen=True)
class Paraphrase:
    text: str
    da: DialogueAct
    slot: str
    value: str


def _pool() -> list[Paraphrase]:
    out: list[Paraphrase] = []
    for text in _GREETING:
        out.append(Paraphrase(text, DialogueAct.GREETING, NO_SLOT, NO_VALUE))
    for text in _THANKING:
        out.append(Paraphrase(text, DialogueAct.THANKING, NO_SLOT, NO_VALUE))
    for template in _TAKE_TEMPLATES:
        for room in _ROOMS:
            for zone in _ZONES:
                out.append(
                    Paraphrase(
                        template.format(room=room, zone=zone),
                        DialogueAct.TAKE_TO_PLACE,
                        "room",
                        room,
                    )
                )
    aliases = VALUE_ALIASES["direction"]
    for template in _MOVE_TEMPLATES:
        for surface in _MOVE_SURFACES:
            out.append(
                Paraphrase(
                    template.format(direction=surface),
                    DialogueAct.MOVE_ROBOT,
                    "direction",
                    aliases[surface],
                )
            )
    for template in _TURN_TEMPLATES:
        for surface in _TURN_SURFACES:
            out.append(
                Paraphrase(
                    template.format(direction=surface),
                    DialogueAct.TURN_ROBOT,
                    "direction",
                    aliases[surface],
                )
            )
    for text in _ACCEPT:
        out.append(Paraphrase(text, DialogueAct.ACCEPT, NO_SLOT, NO_VALUE))
    for text in _REJECT:
        out.append(Paraphrase(text, DialogueAct.REJECT, NO_SLOT, NO_VALUE))
    for text in _ABORT:
        out.append(Paraphrase(text, DialogueAct.ABORT_ROBOT, NO_SLOT, NO_VALUE))
    return out


def generate_paraphrases(
    n: int = 200,
    seed: int = DEFAULT_SEED,
    exclude: Iterable[str] = (),
) -> tuple[Paraphrase, ...]:
    """Draw n distinct paraphrases, none of whose texts appear in exclude.

    Callers evaluating generalization pass the training corpus texts as
    exclude so the sample is held out by construction.
    """
    banned = {t.strip().lower() for t in exclude}
    candidates = [p for p in _pool() if p.text not in banned]
    seen: set[str] = set()
    unique = [p for p in candidates if not (p.text in seen or seen.add(p.text))]
    if n > len(unique):
        raise ValueError(f"pool holds {len(unique)} distinct paraphrases, need {n}")
    rng = random.Random(seed)
    return tuple(rng.sample(unique, n))
