"""Three-stage cascade classifier for dialogue acts, slots, and values.

Stage 1 classifies the dialogue act from bag-of-n-gram counts.  Stage 2
classifies the slot from the same features concatenated with stage 1's score
vector.  Stage 3 picks the value the same way, but its scores are masked to
the vocabulary of the detected slot and renormalized, so a predicted value can
never escape its slot (the switch).

Each stage is a multinomial logistic regression trained by full-batch gradient
descent.  Rows are canonicalized (sorted, exact duplicates dropped) before
training, which makes the fitted parameters independent of corpus order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .acts import (
    NO_SLOT,
    NO_SLOT_ACTS,
    NO_SLOT_VALUE,
    NO_VALUE,
    SLOT_VOCABULARY,
    TRAINABLE_ACTS,
    DialogueAct,
    SlotValue,
    act_from_name,
)
from .nlu_types import ParseResult, Source
from .tokenizer import Utterance, tokenize

LEARNING_RATE = 0.1
EPOCHS = 300
L2_PENALTY = 1e-3
SEED = 42


class CorpusError(Exception):
    """Invalid corpus row; raised at load/validation time with the line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class UntrainedModelError(Exception):
    pass


@dataclass(frozen=True)
class CorpusRow:
    text: str
    da: DialogueAct
    slot: str
    value: str


def parse_corpus_line(line: str, line_no: int) -> CorpusRow:
    fields = line.rstrip("\n").split("\t")
    if len(fields) != 3:
        raise CorpusError(line_no, f"expected 3 tab-separated fields, got {len(fields)}")
    text, da_name, slot_field = fields
    if not text.strip():
        raise CorpusError(line_no, "empty utterance")
    try:
        da = act_from_name(da_name)
    except ValueError as exc:
        raise CorpusError(line_no, str(exc)) from None
    if da not in TRAINABLE_ACTS:
        raise CorpusError(line_no, f"{da} is not a trainable dialogue act")
    if "=" not in slot_field:
        raise CorpusError(line_no, f"slot field {slot_field!r} is not slot=value")
    slot, value = slot_field.split("=", 1)
    if slot == NO_SLOT:
        if value != NO_VALUE:
            raise CorpusError(line_no, f"no_slot must pair with no_value, got {value!r}")
    elif slot in SLOT_VOCABULARY:
        if value not in SLOT_VOCABULARY[slot]:
            raise CorpusError(line_no, f"{value!r} is not a {slot} value")
    else:
        raise CorpusError(line_no, f"unknown slot {slot!r}")
    if da in NO_SLOT_ACTS and slot != NO_SLOT:
        raise CorpusError(line_no, f"{da} takes no slot but row labels {slot}={value}")
    return CorpusRow(text=text, da=da, slot=slot, value=value)


def load_corpus(path: str | Path) -> list[CorpusRow]:
    return parse_corpus(Path(path).read_text(encoding="utf-8"))


def parse_corpus(text: str) -> list[CorpusRow]:
    rows = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        rows.append(parse_corpus_line(line, line_no))
    return rows


# ---------------------------------------------------------------------------
# features


def ngrams_of(tokens: tuple[str, ...]) -> list[str]:
    grams = list(tokens)
    grams.extend(f"{a} {b}" for a, b in zip(tokens, tokens[1:]))
    return grams


def build_vocabulary(texts: list[str]) -> dict[str, int]:
    seen: set[str] = set()
    for text in texts:
        seen.update(ngrams_of(tokenize(text).tokens))
    return {gram: i for i, gram in enumerate(sorted(seen))}


@dataclass
class UtteranceEncoding:
    """Count features plus the per-stage representations filled in by decoding."""

    features: np.ndarray
    stage1_rep: np.ndarray | None = None
    stage2_rep: np.ndarray | None = None


def encode(u: Utterance, vocab: dict[str, int]) -> UtteranceEncoding:
    """Bag of unigram+bigram counts over the trained vocabulary; OOV ignored."""
    x = np.zeros(len(vocab))
    for gram in ngrams_of(u.tokens):
        idx = vocab.get(gram)
        if idx is not None:
            x[idx] += 1.0
    return UtteranceEncoding(features=x)


# ---------------------------------------------------------------------------
# multinomial logistic regression


def _softmax(z: np.ndarray) -> np.ndarray:
    z = z - z.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


@dataclass
class SoftmaxStage:
    classes: tuple[str, ...]
    weights: np.ndarray  # (n_features, n_classes)
    bias: np.ndarray  # (n_classes,)

    def scores(self, x: np.ndarray) -> np.ndarray:
        return _softmax(x @ self.weights + self.bias)


def fit_stage(
    x: np.ndarray,
    labels: list[str],
    *,
    epochs: int = EPOCHS,
    lr: float = LEARNING_RATE,
    l2: float = L2_PENALTY,
) -> SoftmaxStage:
    classes = tuple(sorted(set(labels)))
    index = {c: i for i, c in enumerate(classes)}
    n, d = x.shape
    y = np.zeros((n, len(classes)))
    for row, label in enumerate(labels):
        y[row, index[label]] = 1.0
    w = np.zeros((d, len(classes)))
    b = np.zeros(len(classes))
    for _ in range(epochs):
        p = _softmax(x @ w + b)
        g = (p - y) / n
        w -= lr * (x.T @ g + l2 * w)
        b -= lr * g.sum(axis=0)
    return SoftmaxStage(classes=classes, weights=w, bias=b)


# ---------------------------------------------------------------------------
# cascade


@dataclass
class CascadeModel:
    vocab: dict[str, int]
    da_stage: SoftmaxStage
    slot_stage: SoftmaxStage
    value_stage: SoftmaxStage
    # canonical value set per slot, for the stage-3 mask
    slot_values: dict[str, tuple[str, ...]] = field(
        default_factory=lambda: dict(SLOT_VOCABULARY)
    )


@dataclass(frozen=True)
class TrainReport:
    rows: int
    fit_accuracy: float
    holdout_accuracy: float | None


def _canonicalize(rows: list[CorpusRow]) -> list[CorpusRow]:
    unique = {(r.text, r.da.value, r.slot, r.value): r for r in rows}
    return [unique[k] for k in sorted(unique)]


def train_cascade(
    rows: list[CorpusRow],
    *,
    holdout_fraction: float = 0.0,
    seed: int = SEED,
) -> tuple[CascadeModel, TrainReport]:
    """Fit the three stages bottom-up on a validated corpus.

    Deterministic for a given seed: rows are canonicalized so corpus order and
    exact duplicates cannot perturb the result.  When ``holdout_fraction`` is
    nonzero the report carries dialogue-act accuracy on the held-out rows.
    """
    if not rows:
        raise CorpusError(0, "corpus is empty")
    rows = _canonicalize(rows)

    holdout: list[CorpusRow] = []
    if holdout_fraction > 0.0:
        rng = np.random.default_rng(seed)
        order = rng.permutation(len(rows))
        n_hold = int(round(holdout_fraction * len(rows)))
        holdout = [rows[i] for i in order[:n_hold]]
        rows = [rows[i] for i in sorted(order[n_hold:])]
        if not rows:
            raise CorpusError(0, "holdout fraction leaves no training rows")

    vocab = build_vocabulary([r.text for r in rows])
    x = np.stack([encode(tokenize(r.text), vocab).features for r in rows])

    da_stage = fit_stage(x, [r.da.value for r in rows])
    rep1 = np.hstack([x, da_stage.scores(x)])
    slot_stage = fit_stage(rep1, [r.slot for r in rows])
    rep2 = np.hstack([x, slot_stage.scores(rep1)])

    slotted = [i for i, r in enumerate(rows) if r.slot != NO_SLOT]
    if slotted:
        value_stage = fit_stage(rep2[slotted], [rows[i].value for i in slotted])
    else:
        # degenerate corpus without slots: single dummy value class
        value_stage = SoftmaxStage(
            classes=(NO_VALUE,),
            weights=np.zeros((rep2.shape[1], 1)),
            bias=np.zeros(1),
        )

    model = CascadeModel(
        vocab=vocab, da_stage=da_stage, slot_stage=slot_stage, value_stage=value_stage
    )
    hits = sum(
        1
        for r in rows
        if classify_cascade(encode(tokenize(r.text), vocab), model).da is r.da
    )
    holdout_acc = None
    if holdout:
        holdout_acc = sum(
            1
            for r in holdout
            if classify_cascade(encode(tokenize(r.text), vocab), model).da is r.da
        ) / len(holdout)
    return model, TrainReport(
        rows=len(rows), fit_accuracy=hits / len(rows), holdout_accuracy=holdout_acc
    )


def classify_cascade(enc: UtteranceEncoding, model: CascadeModel | None) -> ParseResult:
    """Decode act, slot, and value; fills ``enc.stage1_rep``/``stage2_rep``."""
    if model is None:
        raise UntrainedModelError("cascade model is not trained or loaded")
    x = enc.features
    if x.shape[0] != len(model.vocab):
        raise ValueError("encoding does not match the model vocabulary")

    da_scores = model.da_stage.scores(x)
    da = act_from_name(model.da_stage.classes[int(np.argmax(da_scores))])
    da_conf = float(np.max(da_scores))
    enc.stage1_rep = np.hstack([x, da_scores])

    slot_scores = model.slot_stage.scores(enc.stage1_rep)
    slot = model.slot_stage.classes[int(np.argmax(slot_scores))]
    slot_conf = float(np.max(slot_scores))
    enc.stage2_rep = np.hstack([x, slot_scores])

    if da in NO_SLOT_ACTS or slot == NO_SLOT:
        if slot != NO_SLOT and NO_SLOT in model.slot_stage.classes:
            # act takes no slot: report stage 2's belief in no_slot instead
            slot_conf = float(slot_scores[model.slot_stage.classes.index(NO_SLOT)])
        return ParseResult(
            da=da,
            slots=(NO_SLOT_VALUE,),
            da_confidence=da_conf,
            slot_confidence=slot_conf,
            source=Source.PROBABILISTIC,
        )

    # The detected slot switches stage 3 onto that slot's vocabulary only.
    value_scores = model.value_stage.scores(enc.stage2_rep)
    allowed = model.slot_values[slot]
    mask = np.array([c in allowed for c in model.value_stage.classes])
    if not mask.any():
        raise UntrainedModelError(f"no trained values for slot {slot!r}")
    masked = np.where(mask, value_scores, 0.0)
    masked = masked / masked.sum()
    value = model.value_stage.classes[int(np.argmax(masked))]
    return ParseResult(
        da=da,
        slots=(SlotValue(slot, value),),
        da_confidence=da_conf,
        slot_confidence=slot_conf * float(np.max(masked)),
        source=Source.PROBABILISTIC,
    )
