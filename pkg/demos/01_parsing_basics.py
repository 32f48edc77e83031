"""
Decoding visitor utterances
===========================

The parser runs two decoders side by side: a deterministic pattern matcher
for the command phrasings we ship, and a three-stage softmax cascade trained
on the bundled corpus for everything else.  A pattern hit always wins; the
cascade fills in when no pattern applies and it is confident enough.
"""

from polibot.nlu import THETA_ACCEPT, parse_text
from polibot.rules import bundled_rules
from polibot.training import default_models

rules = bundled_rules()
cascade, politeness = default_models()  # trains once, in memory

# A few in-grammar commands.  These all hit patterns, so the decode is exact
# and the confidence is pinned to 1.0.
for text in (
    "Take me to the retail department.",
    "Could you turn left?",
    "Please go ahead.",
    "Thank you very much!",
):
    r = parse_text(text, rules, cascade)
    print(f"{text!r}")
    print(f"  -> {r.da.value} {r.slot_map} via {r.source.value} ({r.da_confidence:.2f})")

# Now phrasings that appear in no pattern.  The cascade generalizes from
# n-gram overlap with the training corpus.
print()
for text in (
    "the education department interests me",
    "grateful for the tour thanks",
    "how about the tourism department",
):
    r = parse_text(text, rules, cascade)
    print(f"{text!r}")
    print(f"  -> {r.da.value} {r.slot_map} via {r.source.value} ({r.da_confidence:.2f})")

# Gibberish falls below the acceptance threshold and comes back Unknown,
# carrying the losing confidence so callers can see how close it was.
print()
r = parse_text("purple monkey dishwasher", rules, cascade)
print(f"'purple monkey dishwasher' -> {r.da.value} ({r.da_confidence:.2f} < {THETA_ACCEPT})")
