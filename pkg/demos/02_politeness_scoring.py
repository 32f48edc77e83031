"""
Scoring the degree of politeness
================================

Every utterance gets a continuous degree-of-politeness score in [-1, 1] from
a tanh regressor over nine linguistic strategy markers plus word counts, then
a discrete class: +1 polite, 0 neutral, -1 impolite, with the class
boundaries at +/-0.33.
"""

from polibot.politeness import STRATEGY_NAMES, extract_strategies, score_text
from polibot.tokenizer import tokenize
from polibot.training import default_models

_, model = default_models()

# The three reference phrasings: same request, three registers.
for text in (
    "Could you please show me the education department?",
    "Can you show me the education department?",
    "Show me the education department.",
):
    s = score_text(text, model)
    print(f"{s.discrete:+d}  ({s.continuous:+.3f})  {text}")

# What the model actually sees: strategy markers extracted from the first
# two tokens, the whole token run, and the raw punctuation.
print()
u = tokenize("Could you please show me the education department?")
feats = extract_strategies(u).as_array()
active = [name for name, v in zip(STRATEGY_NAMES, feats) if v]
print("markers in the polite variant:", ", ".join(active))

u = tokenize("Show me the education department.")
feats = extract_strategies(u).as_array()
active = [name for name, v in zip(STRATEGY_NAMES, feats) if v]
print("markers in the impolite variant:", ", ".join(active))

# "please" is weighted positive wherever it lands, so appending it never
# hurts the score.
print()
for text in ("move forward", "move forward please"):
    s = score_text(text, model)
    print(f"{s.continuous:+.3f}  {text!r}")
