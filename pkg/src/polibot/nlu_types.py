"""Shared result types for the two understanding paths."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .acts import DialogueAct, SlotValue


class Source(Enum):
    DETERMINISTIC = "deterministic"
    PROBABILISTIC = "probabilistic"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ParseResult:
    """Decoded utterance: dialogue act, slot-value pairs, and confidences.

    ``log`` records provenance notes, e.g. a disagreement between the pattern
    parser and the statistical cascade.
    """

    da: DialogueAct
    slots: tuple[SlotValue, ...]
    da_confidence: float
    slot_confidence: float
    source: Source
    log: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if not 0.0 <= self.da_confidence <= 1.0:
            raise ValueError(f"da_confidence {self.da_confidence} outside [0, 1]")
        if not 0.0 <= self.slot_confidence <= 1.0:
            raise ValueError(f"slot_confidence {self.slot_confidence} outside [0, 1]")
        if self.source is Source.DETERMINISTIC and self.da_confidence != 1.0:
            raise ValueError("deterministic results carry confidence 1.0")
        if self.da is DialogueAct.UNKNOWN and self.slots:
            raise ValueError("Unknown carries no slots")

    @property
    def slot_map(self) -> dict[str, str]:
        return {sv.slot: sv.value for sv in self.slots if sv.slot != "no_slot"}

    def describe(self) -> str:
        pairs = ", ".join(f"{sv.slot} : {sv.value}" for sv in self.slots)
        return f"{{da : {self.da}, {pairs}}}" if pairs else f"{{da : {self.da}}}"
