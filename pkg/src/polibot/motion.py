"""Motion commands exchanged between the dialogue flow and the simulator."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class GoTo:
    location: str

    def __str__(self) -> str:
        return f"GoTo({self.location})"


@dataclass(frozen=True)
class RelativeMove:
    direction: str
    distance: float | None = None  # meters; None = configured default

    def __str__(self) -> str:
        return f"RelativeMove({self.direction})"


@dataclass(frozen=True)
class RelativeTurn:
    direction: str
    angle: float | None = None  # radians; None = configured default

    def __str__(self) -> str:
        return f"RelativeTurn({self.direction})"


@dataclass(frozen=True)
class Teleop:
    direction: str  # forward | backward | left | right | stop

    def __str__(self) -> str:
        return f"Teleop({self.direction})"


@dataclass(frozen=True)
class Stop:
    def __str__(self) -> str:
        return "Stop"


MotionCommand = GoTo | RelativeMove | RelativeTurn | Teleop | Stop
