"""
Two tours, two temperaments
===========================

The same four-department tour, requested politely and then rudely.  The
dialogue is identical in structure; what changes is the degree-of-politeness
signal, and through it the robot's speed.  Motion runs on the tick-based
kinematic simulator, so each leg takes real (simulated) time.
"""

from polibot.config import AppConfig
from polibot.session import build_session

POLITE = (
    "Hello, could you please show me around?",
    "Could you please show me the retail department?",
    "Yes please, I would love to visit.",
    "Yes please, I would love to visit.",
    "Yes please, I would love to visit.",
    "Thank you very much for the tour!",
)

RUDE = (
    "Show me the retail department.",
    "Yes.",
    "Hurry up.",
    "Yes.",
    "Go faster.",
    "Yes.",
)


def run_tour(label, lines):
    session = build_session(AppConfig())
    print(f"--- {label} ---")
    for text in lines:
        record = session.handle_utterance(text)
        b = session.behavior_state
        dop = record.politeness.discrete
        print(f"you>   {text}")
        if record.response:
            print(f"robot> {record.response}")
        print(f"       [dop {dop:+d} -> S {b.s:+d}, speed {b.speed:.3f} m/s]")
        # let any motion finish before the next line, like a real visit
        session.run_until_motion_done()
    visited = ", ".join(sorted(session.flow_state.visited))
    print(f"visited: {visited}")
    print(f"simulated time: {session.world.t:.1f} s")
    print()
    return session.world.t


polite_t = run_tour("polite visitor", POLITE)
rude_t = run_tour("impolite visitor", RUDE)

# Same route; the polite robot ambles, the rude one rushes.
print(f"polite tour took {polite_t:.1f} simulated seconds, rude tour {rude_t:.1f}")
