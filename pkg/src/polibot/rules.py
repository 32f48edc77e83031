"""Deterministic pattern parser.

Rules are token-level templates compiled to anchored regular expressions over
the utterance's normalized token string.  A pattern token is either a literal
word, ``*`` (any possibly-empty token sequence), or ``<slot>`` which matches
any surface form of that slot's vocabulary and binds its canonical value.

Rule file format, one rule per line::

    priority<TAB>dialogue_act<TAB>pattern

Higher priority wins; among equal priorities the earliest line wins.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .acts import (
    NO_SLOT_ACTS,
    NO_SLOT_VALUE,
    SLOT_VOCABULARY,
    VALUE_ALIASES,
    DialogueAct,
    SlotValue,
    act_from_name,
)
from .nlu_types import ParseResult, Source
from .tokenizer import Utterance


class RuleFileError(Exception):
    """Malformed rule file; raised at load time with the offending line."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class PatternRule:
    da: DialogueAct
    pattern: str
    priority: int
    regex: re.Pattern[str]
    slots: tuple[str, ...]


def _compile_pattern(pattern: str, line_no: int) -> tuple[re.Pattern[str], tuple[str, ...]]:
    parts: list[str] = []
    slots: list[str] = []
    tokens = pattern.split()
    if not tokens:
        raise RuleFileError(line_no, "empty pattern")
    for tok in tokens:
        if tok == "*":
            parts.append(r"(?: \S+)*")
        elif tok.startswith("<") and tok.endswith(">"):
            slot = tok[1:-1]
            if slot not in SLOT_VOCABULARY:
                raise RuleFileError(line_no, f"unknown slot {slot!r} in pattern")
            if slot in slots:
                raise RuleFileError(line_no, f"slot {slot!r} appears twice in pattern")
            slots.append(slot)
            alternatives = "|".join(sorted(VALUE_ALIASES[slot], key=len, reverse=True))
            parts.append(f" (?P<{slot}>{alternatives})")
        elif re.fullmatch(r"[a-z0-9']+", tok):
            parts.append(" " + re.escape(tok))
        else:
            raise RuleFileError(line_no, f"bad pattern token {tok!r}")
    # Matching happens against " tok1 tok2 ..." so every element carries its
    # own leading space and empty wildcards cannot break adjacency.
    return re.compile("^" + "".join(parts) + "$"), tuple(slots)


def parse_rule_line(line: str, line_no: int) -> PatternRule:
    fields = line.rstrip("\n").split("\t")
    if len(fields) != 3:
        raise RuleFileError(line_no, f"expected 3 tab-separated fields, got {len(fields)}")
    prio_text, da_name, pattern = fields
    try:
        priority = int(prio_text)
    except ValueError:
        raise RuleFileError(line_no, f"priority {prio_text!r} is not an integer") from None
    try:
        da = act_from_name(da_name)
    except ValueError as exc:
        raise RuleFileError(line_no, str(exc)) from None
    if da in (DialogueAct.FINISHED_ONE, DialogueAct.UNKNOWN):
        raise RuleFileError(line_no, f"{da} cannot be produced by a rule")
    regex, slots = _compile_pattern(pattern, line_no)
    if slots and da in NO_SLOT_ACTS:
        raise RuleFileError(line_no, f"{da} takes no slots but pattern binds {slots}")
    return PatternRule(da=da, pattern=pattern, priority=priority, regex=regex, slots=slots)


def load_rules(path: str | Path) -> list[PatternRule]:
    return parse_rules(Path(path).read_text(encoding="utf-8"))


def parse_rules(text: str) -> list[PatternRule]:
    rules = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        rules.append(parse_rule_line(line, line_no))
    return rules


def bundled_rules() -> list[PatternRule]:
    text = resources.files("polibot.data").joinpath("rules.tsv").read_text(encoding="utf-8")
    return parse_rules(text)


def parse_deterministic(u: Utterance, rules: list[PatternRule]) -> ParseResult | None:
    """Match the full utterance against every rule; best match or None.

    Best = highest priority, then earliest in the file.  A match binds each
    placeholder's surface form to its canonical slot value and carries
    confidence exactly 1.0.
    """
    haystack = "".join(" " + t for t in u.tokens)
    best: tuple[int, int, PatternRule, re.Match[str]] | None = None
    for index, rule in enumerate(rules):
        m = rule.regex.match(haystack)
        if m is None:
            continue
        key = (-rule.priority, index)
        if best is None or key < (best[0], best[1]):
            best = (-rule.priority, index, rule, m)
    if best is None:
        return None
    _, _, rule, m = best
    if rule.slots:
        slots = tuple(
            SlotValue(slot, VALUE_ALIASES[slot][m.group(slot)]) for slot in rule.slots
        )
    else:
        slots = (NO_SLOT_VALUE,)
    return ParseResult(
        da=rule.da,
        slots=slots,
        da_confidence=1.0,
        slot_confidence=1.0,
        source=Source.DETERMINISTIC,
    )
