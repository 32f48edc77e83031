"""
From politeness to actuators
============================

The running politeness level S is the clamped sum of per-utterance classes.
Four actuator channels follow it linearly: polite visitors get a slower,
higher-voiced, head-up, green-lit robot; impolite ones get the opposite.
"""

from polibot.behavior import BehaviorConfig, initial_state, map_actuators, update

cfg = BehaviorConfig()

print(f"{'S':>3}  {'speed':>6}  {'head':>6}  {'voice':>6}  led")
for s in range(-cfg.s_max, cfg.s_max + 1):
    speed, head, voice, led = map_actuators(s, cfg)
    bar = "#" * round(speed * 20)
    print(f"{s:+3d}  {speed:6.3f}  {head:+6.3f}  {voice:6.1f}  {led}  {bar}")

# The state object folds one discrete class per utterance into S and clamps
# at the rails, so a long rude streak saturates instead of winding up.
print()
state = initial_state(cfg)
for dop in (-1, -1, -1, -1, -1, -1, -1, 1):
    state = update(state, dop, cfg)
    print(f"after {dop:+d}: S={state.s:+d} speed={state.speed:.3f} m/s")
