"""Degree-of-politeness scoring.

An utterance gets a continuous score in [-1, 1] from a linear model over
politeness-strategy features and unigram counts, squashed through tanh, then
discretized to impolite / neutral / polite (-1 / 0 / +1).  The strategy
features encode the classic markers: sentence-initial "please" or a
counterfactual modal opening ("could you ...") lean polite, a bare imperative
or sentence-initial "you" leans impolite, an indicative modal opening
("can you ...") sits in between.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .tokenizer import Utterance, tokenize

THETA_HI = 0.33
THETA_LO = -0.33

LEARNING_RATE = 0.1
EPOCHS = 500
L2_PENALTY = 1e-4

MODEL_FORMAT = "polibot-politeness/1"

# Action verbs that mark a bare imperative opening in this scenario.
ACTION_VERBS = frozenset(
    {
        "show", "take", "go", "move", "turn", "stop", "bring", "guide",
        "lead", "walk", "come", "hurry", "drive", "head", "halt", "wait",
        "rotate", "get", "follow",
    }
)

GRATITUDE_TERMS = frozenset({"thank", "thanks", "appreciate", "grateful"})
GREETING_TERMS = frozenset({"hello", "hi", "hey", "greetings", "morning", "afternoon", "evening"})

COUNTERFACTUAL_OPENINGS = (("could", "you"), ("would", "you"))
INDICATIVE_OPENINGS = (("can", "you"), ("will", "you"))

STRATEGY_NAMES = (
    "initial_please",
    "mid_please",
    "counterfactual_start",
    "indicative_start",
    "initial_you",
    "imperative_start",
    "gratitude",
    "greeting",
    "question_mark",
)


class PolitenessCorpusError(Exception):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class UntrainedModelError(Exception):
    pass


@dataclass(frozen=True)
class StrategyFeatures:
    initial_please: int
    mid_please: int
    counterfactual_start: int
    indicative_start: int
    initial_you: int
    imperative_start: int
    gratitude: int
    greeting: int
    question_mark: int

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, name) for name in STRATEGY_NAMES], dtype=float)


@dataclass(frozen=True)
class PolitenessScore:
    continuous: float
    discrete: int


def discretize(continuous: float, *, theta_hi: float = THETA_HI, theta_lo: float = THETA_LO) -> int:
    if continuous >= theta_hi:
        return 1
    if continuous <= theta_lo:
        return -1
    return 0


def extract_strategies(u: Utterance) -> StrategyFeatures:
    toks = u.tokens
    opening = toks[:2]
    counterfactual = int(opening in COUNTERFACTUAL_OPENINGS)
    indicative = int(opening in INDICATIVE_OPENINGS)
    initial_you = 0
    imperative = 0
    # the four opening markers are mutually exclusive by construction
    if not counterfactual and not indicative and toks:
        if toks[0] == "you":
            initial_you = 1
        elif toks[0] in ACTION_VERBS:
            imperative = 1
    return StrategyFeatures(
        initial_please=int(bool(toks) and toks[0] == "please"),
        mid_please=sum(1 for t in toks[1:] if t == "please"),
        counterfactual_start=counterfactual,
        indicative_start=indicative,
        initial_you=initial_you,
        imperative_start=imperative,
        gratitude=sum(1 for t in toks if t in GRATITUDE_TERMS),
        greeting=sum(1 for t in toks if t in GREETING_TERMS),
        question_mark=int("?" in u.raw),
    )


@dataclass
class PolitenessModel:
    vocab: dict[str, int]
    strategy_weights: np.ndarray
    ngram_weights: np.ndarray
    bias: float

    def features(self, u: Utterance) -> tuple[np.ndarray, np.ndarray]:
        counts = np.zeros(len(self.vocab))
        for tok in u.tokens:
            idx = self.vocab.get(tok)
            if idx is not None:
                counts[idx] += 1.0
        return extract_strategies(u).as_array(), counts


def score(u: Utterance, model: PolitenessModel | None) -> PolitenessScore:
    """Continuous degree of politeness and its discrete class."""
    if model is None:
        raise UntrainedModelError("politeness model is not trained or loaded")
    if not u.tokens:
        return PolitenessScore(continuous=0.0, discrete=0)
    strategies, counts = model.features(u)
    z = float(
        strategies @ model.strategy_weights + counts @ model.ngram_weights + model.bias
    )
    continuous = math.tanh(z)
    return PolitenessScore(continuous=continuous, discrete=discretize(continuous))


def score_text(text: str, model: PolitenessModel | None) -> PolitenessScore:
    return score(tokenize(text), model)


# ---------------------------------------------------------------------------
# training


def parse_politeness_corpus(text: str) -> list[tuple[str, int]]:
    rows: list[tuple[str, int]] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.rstrip("\n").split("\t")
        if len(fields) != 2:
            raise PolitenessCorpusError(
                line_no, f"expected 2 tab-separated fields, got {len(fields)}"
            )
        utterance, label_text = fields
        if not utterance.strip():
            raise PolitenessCorpusError(line_no, "empty utterance")
        try:
            label = int(label_text)
        except ValueError:
            raise PolitenessCorpusError(line_no, f"label {label_text!r} is not an integer") from None
        if label not in (-1, 0, 1):
            raise PolitenessCorpusError(line_no, f"label {label} outside {{-1, 0, 1}}")
        rows.append((utterance, label))
    return rows


def load_politeness_corpus(path: str | Path) -> list[tuple[str, int]]:
    return parse_politeness_corpus(Path(path).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class PolitenessTrainReport:
    rows: int
    fit_accuracy: float


def train_politeness(
    rows: list[tuple[str, int]],
    *,
    epochs: int = EPOCHS,
    lr: float = LEARNING_RATE,
    l2: float = L2_PENALTY,
) -> tuple[PolitenessModel, PolitenessTrainReport]:
    """Fit tanh(w.x + b) to the labels by squared-error gradient descent.

    Rows are canonicalized (sorted, exact duplicates dropped) so the fitted
    parameters do not depend on corpus order or duplication.
    """
    if not rows:
        raise PolitenessCorpusError(0, "corpus is empty")
    for i, (_, label) in enumerate(rows, start=1):
        if label not in (-1, 0, 1):
            raise PolitenessCorpusError(i, f"label {label} outside {{-1, 0, 1}}")
    rows = sorted(set(rows))

    utterances = [tokenize(text) for text, _ in rows]
    vocab_tokens = sorted({t for u in utterances for t in u.tokens})
    vocab = {tok: i for i, tok in enumerate(vocab_tokens)}

    model = PolitenessModel(
        vocab=vocab,
        strategy_weights=np.zeros(len(STRATEGY_NAMES)),
        ngram_weights=np.zeros(len(vocab)),
        bias=0.0,
    )
    feats = np.stack(
        [np.concatenate(model.features(u)) for u in utterances]
    )  # (n, strategies + vocab)
    y = np.array([label for _, label in rows], dtype=float)
    n = len(rows)

    w = np.zeros(feats.shape[1])
    b = 0.0
    for _ in range(epochs):
        z = feats @ w + b
        out = np.tanh(z)
        # d/dz of (out - y)^2 = 2 (out - y) (1 - out^2)
        delta = 2.0 * (out - y) * (1.0 - out * out) / n
        w -= lr * (feats.T @ delta + l2 * w)
        b -= lr * float(delta.sum())

    model.strategy_weights = w[: len(STRATEGY_NAMES)]
    model.ngram_weights = w[len(STRATEGY_NAMES):]
    model.bias = b

    hits = sum(1 for u, (_, label) in zip(utterances, rows) if score(u, model).discrete == label)
    return model, PolitenessTrainReport(rows=n, fit_accuracy=hits / n)


# ---------------------------------------------------------------------------
# persistence


def save_politeness(model: PolitenessModel, path: str | Path) -> None:
    doc = {
        "format": MODEL_FORMAT,
        "vocab": sorted(model.vocab, key=model.vocab.get),
        "strategy_weights": model.strategy_weights.tolist(),
        "ngram_weights": model.ngram_weights.tolist(),
        "bias": model.bias,
    }
    Path(path).write_text(json.dumps(doc), encoding="utf-8")


def load_politeness(path: str | Path) -> PolitenessModel:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if doc.get("format") != MODEL_FORMAT:
        raise UntrainedModelError(
            f"{path}: expected format {MODEL_FORMAT!r}, found {doc.get('format')!r}"
        )
    return PolitenessModel(
        vocab={tok: i for i, tok in enumerate(doc["vocab"])},
        strategy_weights=np.array(doc["strategy_weights"], dtype=float),
        ngram_weights=np.array(doc["ngram_weights"], dtype=float),
        bias=float(doc["bias"]),
    )
