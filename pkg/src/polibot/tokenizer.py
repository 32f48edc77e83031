"""Utterance tokenization.

Tokens are lowercased alphanumeric runs (with internal apostrophes), each
remembering its character span in the raw string so downstream features can
refer back to the original text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

_TOKEN_RE = re.compile(r"[A-Za-z0-9]+(?:'[A-Za-z0-9]+)*")


@dataclass(frozen=True)
class Utterance:
    raw: str
    tokens: tuple[str, ...]
    token_spans: tuple[tuple[int, int], ...] = field(repr=False)

    @property
    def text(self) -> str:
        """Normalized token string used by pattern rules and n-gram features."""
        return " ".join(self.tokens)


def tokenize(raw: str) -> Utterance:
    """Split raw text into lowercased tokens with spans.

    Total over all inputs: punctuation-only or empty text yields an
    utterance with no tokens.
    """
    tokens: list[str] = []
    spans: list[tuple[int, int]] = []
    for m in _TOKEN_RE.finditer(raw):
        tokens.append(m.group(0).lower())
        spans.append(m.span())
    return Utterance(raw=raw, tokens=tuple(tokens), token_spans=tuple(spans))
