"""Bundled corpora and the models trained from them.

The corpora under ``polibot/data`` are organized around a canonical command
set for the four-department tour scenario; ``ANCHOR_DECODES`` lists those
reference utterances with their expected decodes and ``POLITENESS_ANCHORS``
the three phrasings that define the polite / neutral / impolite classes.
``default_models`` trains both models once per process, so sessions come up
without model artifacts on disk.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .acts import NO_SLOT, NO_VALUE, DialogueAct
from .cascade import CascadeModel, CorpusRow, TrainReport, parse_corpus, train_cascade
from .politeness import (
    PolitenessModel,
    PolitenessTrainReport,
    parse_politeness_corpus,
    train_politeness,
)

# (utterance, act, slot, value) for the reference command set.
ANCHOR_DECODES: tuple[tuple[str, DialogueAct, str, str], ...] = (
    ("Hello.", DialogueAct.GREETING, NO_SLOT, NO_VALUE),
    ("Hi, how are you?", DialogueAct.GREETING, NO_SLOT, NO_VALUE),
    ("Thank you.", DialogueAct.THANKING, NO_SLOT, NO_VALUE),
    ("Thank you very much.", DialogueAct.THANKING, NO_SLOT, NO_VALUE),
    ("Could you show me the education department?", DialogueAct.TAKE_TO_PLACE, "room", "education"),
    ("Take me to the retail section.", DialogueAct.TAKE_TO_PLACE, "room", "retail"),
    ("Can you take me to tourism department?", DialogueAct.TAKE_TO_PLACE, "room", "tourism"),
    ("Please go ahead.", DialogueAct.MOVE_ROBOT, "direction", "forward"),
    ("Could you move ahead?", DialogueAct.MOVE_ROBOT, "direction", "forward"),
    ("Go back please.", DialogueAct.MOVE_ROBOT, "direction", "backward"),
    ("Can you turn right?", DialogueAct.TURN_ROBOT, "direction", "right"),
    ("Could you turn left.", DialogueAct.TURN_ROBOT, "direction", "left"),
    ("could you please show me the retail department", DialogueAct.TAKE_TO_PLACE, "room", "retail"),
    ("Yes, I would like to visit.", DialogueAct.ACCEPT, NO_SLOT, NO_VALUE),
    ("Stop!", DialogueAct.ABORT_ROBOT, NO_SLOT, NO_VALUE),
)

# (utterance, expected discrete class)
POLITENESS_ANCHORS: tuple[tuple[str, int], ...] = (
    ("Could you please show me the education department?", 1),
    ("Can you show me the education department?", 0),
    ("Show me the education department.", -1),
)


def _read_data(name: str) -> str:
    return resources.files("polibot.data").joinpath(name).read_text(encoding="utf-8")


def bundled_nlu_corpus() -> list[CorpusRow]:
    return parse_corpus(_read_data("nlu_corpus.tsv"))


def bundled_politeness_corpus() -> list[tuple[str, int]]:
    return parse_politeness_corpus(_read_data("politeness_corpus.tsv"))


def train_default_cascade(holdout_fraction: float = 0.0) -> tuple[CascadeModel, TrainReport]:
    return train_cascade(bundled_nlu_corpus(), holdout_fraction=holdout_fraction)


def train_default_politeness() -> tuple[PolitenessModel, PolitenessTrainReport]:
    return train_politeness(bundled_politeness_corpus())


@lru_cache(maxsize=1)
def default_models() -> tuple[CascadeModel, PolitenessModel]:
    cascade, _ = train_default_cascade()
    politeness, _ = train_default_politeness()
    return cascade, politeness
