"""Utterance understanding: pattern parser and statistical cascade combined.

The two parsers validate one another through their confidences: an exact
pattern match is taken as ground truth; otherwise the cascade's answer is
accepted when its act confidence clears ``theta_accept``; anything weaker
falls through to Unknown.  When both paths produce an answer and disagree,
the pattern parser wins and the disagreement is noted in the result log.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .acts import DialogueAct
from .cascade import (
    CascadeModel,
    SoftmaxStage,
    UntrainedModelError,
    classify_cascade,
    encode,
)
from .nlu_types import ParseResult, Source
from .rules import PatternRule, parse_deterministic
from .tokenizer import Utterance, tokenize

THETA_ACCEPT = 0.5

MODEL_FORMAT = "polibot-cascade/1"

UNKNOWN_RESULT = ParseResult(
    da=DialogueAct.UNKNOWN,
    slots=(),
    da_confidence=0.0,
    slot_confidence=0.0,
    source=Source.PROBABILISTIC,
)


def parse(
    u: Utterance,
    rules: list[PatternRule],
    model: CascadeModel | None,
    *,
    theta_accept: float = THETA_ACCEPT,
) -> ParseResult:
    exact = parse_deterministic(u, rules)
    probabilistic: ParseResult | None = None
    if model is not None and len(u.tokens) > 0:
        probabilistic = classify_cascade(encode(u, model.vocab), model)

    if exact is not None:
        if (
            probabilistic is not None
            and probabilistic.da_confidence >= theta_accept
            and probabilistic.da is not exact.da
        ):
            note = (
                f"cascade disagreed: {probabilistic.da} "
                f"({probabilistic.da_confidence:.3f}) vs pattern {exact.da}"
            )
            return ParseResult(
                da=exact.da,
                slots=exact.slots,
                da_confidence=exact.da_confidence,
                slot_confidence=exact.slot_confidence,
                source=exact.source,
                log=(note,),
            )
        return exact

    if probabilistic is not None and probabilistic.da_confidence >= theta_accept:
        return probabilistic

    low = probabilistic.da_confidence if probabilistic is not None else 0.0
    return ParseResult(
        da=DialogueAct.UNKNOWN,
        slots=(),
        da_confidence=low,
        slot_confidence=0.0,
        source=Source.PROBABILISTIC,
    )


def parse_text(
    text: str,
    rules: list[PatternRule],
    model: CascadeModel | None,
    *,
    theta_accept: float = THETA_ACCEPT,
) -> ParseResult:
    return parse(tokenize(text), rules, model, theta_accept=theta_accept)


# ---------------------------------------------------------------------------
# persistence: versioned textual dump with embedded vocabulary


def _stage_to_dict(stage: SoftmaxStage) -> dict:
    return {
        "classes": list(stage.classes),
        "weights": stage.weights.tolist(),
        "bias": stage.bias.tolist(),
    }


def _stage_from_dict(data: dict) -> SoftmaxStage:
    return SoftmaxStage(
        classes=tuple(data["classes"]),
        weights=np.array(data["weights"], dtype=float),
        bias=np.array(data["bias"], dtype=float),
    )


def save_cascade(model: CascadeModel, path: str | Path) -> None:
    doc = {
        "format": MODEL_FORMAT,
        "vocab": sorted(model.vocab, key=model.vocab.get),
        "da_stage": _stage_to_dict(model.da_stage),
        "slot_stage": _stage_to_dict(model.slot_stage),
        "value_stage": _stage_to_dict(model.value_stage),
        "slot_values": {k: list(v) for k, v in model.slot_values.items()},
    }
    Path(path).write_text(json.dumps(doc), encoding="utf-8")


def load_cascade(path: str | Path) -> CascadeModel:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if doc.get("format") != MODEL_FORMAT:
        raise UntrainedModelError(
            f"{path}: expected format {MODEL_FORMAT!r}, found {doc.get('format')!r}"
        )
    return CascadeModel(
        vocab={gram: i for i, gram in enumerate(doc["vocab"])},
        da_stage=_stage_from_dict(doc["da_stage"]),
        slot_stage=_stage_from_dict(doc["slot_stage"]),
        value_stage=_stage_from_dict(doc["value_stage"]),
        slot_values={k: tuple(v) for k, v in doc["slot_values"].items()},
    )


@dataclass
class NluEngine:
    """Loaded rules and model behind one parse call."""

    rules: list[PatternRule]
    model: CascadeModel | None
    theta_accept: float = THETA_ACCEPT

    def parse(self, text: str) -> ParseResult:
        return parse_text(text, self.rules, self.model, theta_accept=self.theta_accept)
