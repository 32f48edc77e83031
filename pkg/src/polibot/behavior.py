"""Behavioral adaptation: cumulative politeness drives four actuators.

The session keeps a clamped running sum S of the discrete politeness of every
utterance.  S maps linearly onto navigation speed (polite slows the robot
down, impolite speeds it up), head pitch (polite tilts the head up toward the
user), voice pitch (polite raises it slightly), and LED color (red through
white to green).  Endpoint values are attained exactly at S = ±S_max.
"""

from __future__ import annotations

from dataclasses import dataclass

RGB = tuple[int, int, int]


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class BehaviorConfig:
    s_max: int = 5
    v_min: float = 0.25  # m/s, reached when maximally polite
    v_base: float = 0.50
    v_max: float = 0.75  # m/s, reached when maximally impolite
    h_neutral: float = 0.0  # rad
    h_delta: float = 0.20  # rad, negative pitch looks up toward the user
    p_delta: float = 0.10  # voice pitch multiplier swing around 1.0
    color_impolite: RGB = (220, 40, 40)
    color_neutral: RGB = (240, 240, 240)
    color_polite: RGB = (40, 200, 80)

    def __post_init__(self) -> None:
        if self.s_max < 1:
            raise ConfigError(f"s_max must be >= 1, got {self.s_max}")
        if not self.v_min < self.v_base < self.v_max:
            raise ConfigError(
                f"need v_min < v_base < v_max, got {self.v_min}, {self.v_base}, {self.v_max}"
            )
        if self.h_delta < 0 or self.p_delta < 0:
            raise ConfigError("h_delta and p_delta must be nonnegative")
        for color in (self.color_impolite, self.color_neutral, self.color_polite):
            if len(color) != 3 or any(not 0 <= c <= 255 for c in color):
                raise ConfigError(f"bad RGB triple {color}")

    @property
    def h_min(self) -> float:
        return self.h_neutral - self.h_delta

    @property
    def h_max(self) -> float:
        return self.h_neutral + self.h_delta

    @property
    def p_min(self) -> float:
        return 1.0 - self.p_delta

    @property
    def p_max(self) -> float:
        return 1.0 + self.p_delta


@dataclass(frozen=True)
class BehaviorState:
    s: int
    speed: float
    head_pitch: float
    voice_pitch: float
    led_rgb: RGB


def _lerp(a: float, b: float, t: float) -> float:
    # exact at both endpoints: t=0 -> a, t=1 -> b
    return a * (1.0 - t) + b * t


def _lerp_rgb(a: RGB, b: RGB, t: float) -> RGB:
    return tuple(int(round(_lerp(ca, cb, t))) for ca, cb in zip(a, b))  # type: ignore[return-value]


def map_actuators(s: int, cfg: BehaviorConfig) -> tuple[float, float, float, RGB]:
    """Actuator values for a cumulative sum; pure in ``s``."""
    if abs(s) > cfg.s_max:
        raise ValueError(f"sum {s} outside [-{cfg.s_max}, {cfg.s_max}]")
    x = s / cfg.s_max
    if x >= 0.0:
        speed = _lerp(cfg.v_base, cfg.v_min, x)
        led = _lerp_rgb(cfg.color_neutral, cfg.color_polite, x)
    else:
        speed = _lerp(cfg.v_base, cfg.v_max, -x)
        led = _lerp_rgb(cfg.color_neutral, cfg.color_impolite, -x)
    head_pitch = _lerp(cfg.h_neutral, cfg.h_neutral - cfg.h_delta, x) if x >= 0.0 else _lerp(
        cfg.h_neutral, cfg.h_neutral + cfg.h_delta, -x
    )
    voice_pitch = _lerp(1.0, 1.0 + cfg.p_delta, x) if x >= 0.0 else _lerp(
        1.0, 1.0 - cfg.p_delta, -x
    )
    return speed, head_pitch, voice_pitch, led


def make_state(s: int, cfg: BehaviorConfig) -> BehaviorState:
    speed, head_pitch, voice_pitch, led = map_actuators(s, cfg)
    return BehaviorState(
        s=s, speed=speed, head_pitch=head_pitch, voice_pitch=voice_pitch, led_rgb=led
    )


def initial_state(cfg: BehaviorConfig) -> BehaviorState:
    return make_state(0, cfg)


def update(state: BehaviorState, dop: int, cfg: BehaviorConfig) -> BehaviorState:
    """Fold one utterance's discrete politeness into the state."""
    if dop not in (-1, 0, 1):
        raise ValueError(f"discrete politeness must be -1, 0, or +1, got {dop!r}")
    s = max(-cfg.s_max, min(cfg.s_max, state.s + dop))
    return make_state(s, cfg)
