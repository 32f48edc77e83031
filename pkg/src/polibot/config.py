"""Application configuration.

A config file is optional plain text, one ``key = value`` per line with ``#``
comments.  Dotted keys fill the behavior and sim sections; bare keys point at
data files and session constants.  Anything not set falls back to the bundled
defaults, so a fresh checkout runs with no config at all.

Recognized keys::

    behavior.s_max, behavior.v_min, behavior.v_base, behavior.v_max,
    behavior.h_neutral, behavior.h_delta, behavior.p_delta
    sim.dt, sim.omega_max, sim.inflation_radius, sim.move_step, sim.turn_step
    map, rules, responses, cascade_model, politeness_model
    response_seed, port
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from pathlib import Path

from .behavior import BehaviorConfig
from .sim import SimConfig


class ConfigFileError(Exception):
    pass


@dataclass(frozen=True)
class AppConfig:
    behavior: BehaviorConfig = BehaviorConfig()
    sim: SimConfig = SimConfig()
    map_path: str | None = None  # None -> bundled data
    rules_path: str | None = None
    responses_path: str | None = None
    cascade_model_path: str | None = None  # None -> train in memory at startup
    politeness_model_path: str | None = None
    response_seed: int = 7
    port: int = 8080


_FLOAT_BEHAVIOR = ("v_min", "v_base", "v_max", "h_neutral", "h_delta", "p_delta")
_FLOAT_SIM = ("dt", "omega_max", "inflation_radius", "move_step", "turn_step", "eps_pos")
_PATH_KEYS = {
    "map": "map_path",
    "rules": "rules_path",
    "responses": "responses_path",
    "cascade_model": "cascade_model_path",
    "politeness_model": "politeness_model_path",
}


def parse_config(text: str) -> AppConfig:
    behavior_kw: dict[str, object] = {}
    sim_kw: dict[str, object] = {}
    top_kw: dict[str, object] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigFileError(f"line {line_no}: expected key = value")
        key, _, value = (part.strip() for part in line.partition("="))
        try:
            if key.startswith("behavior."):
                field = key.split(".", 1)[1]
                if field == "s_max":
                    behavior_kw[field] = int(value)
                elif field in _FLOAT_BEHAVIOR:
                    behavior_kw[field] = float(value)
                else:
                    raise ConfigFileError(f"line {line_no}: unknown key {key}")
            elif key.startswith("sim."):
                field = key.split(".", 1)[1]
                if field not in _FLOAT_SIM:
                    raise ConfigFileError(f"line {line_no}: unknown key {key}")
                sim_kw[field] = math.pi / 2 if value == "pi/2" else float(value)
            elif key in _PATH_KEYS:
                top_kw[_PATH_KEYS[key]] = value
            elif key in ("response_seed", "port"):
                top_kw[key] = int(value)
            else:
                raise ConfigFileError(f"line {line_no}: unknown key {key}")
        except ValueError:
            raise ConfigFileError(f"line {line_no}: bad value {value!r} for {key}") from None
    return AppConfig(
        behavior=BehaviorConfig(**behavior_kw),
        sim=SimConfig(**sim_kw),
        **top_kw,
    )


def load_config(path: str | Path | None) -> AppConfig:
    if path is None:
        return AppConfig()
    return parse_config(Path(path).read_text(encoding="utf-8"))


def dump_config(cfg: AppConfig) -> str:
    """Inverse of parse_config for the default-valued keys; used by demos."""
    lines = []
    for field in dataclasses.fields(BehaviorConfig):
        if field.name.startswith(("color_",)):
            continue
        lines.append(f"behavior.{field.name} = {getattr(cfg.behavior, field.name)}")
    for name in _FLOAT_SIM:
        value = getattr(cfg.sim, name)
        if value is not None:
            lines.append(f"sim.{name} = {value}")
    lines.append(f"response_seed = {cfg.response_seed}")
    lines.append(f"port = {cfg.port}")
    return "\n".join(lines) + "\n"
