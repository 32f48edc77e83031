"""Politeness-adaptive dialogue navigation for a simulated tour-guide robot.

The public surface mirrors the processing pipeline: parse an utterance, score
its degree of politeness, fold both into the dialogue flow, map the running
politeness score onto actuator settings, and drive the simulated world.
"""

from .acts import NO_SLOT, NO_VALUE, SLOT_VOCABULARY, DialogueAct, SlotValue
from .behavior import BehaviorConfig, BehaviorState, initial_state as initial_behavior_state, map_actuators, update
from .cascade import CascadeModel, CorpusError, CorpusRow, classify_cascade, load_corpus, train_cascade
from .config import AppConfig, ConfigFileError, load_config
from .flow import DialogueState, FlowOutput, initial_state as initial_dialogue_state, step
from .grid import Costmap, MapError, OccupancyGrid, bundled_map, inflate, load_map
from .motion import GoTo, MotionCommand, RelativeMove, RelativeTurn, Stop, Teleop
from .nlu import NluEngine, load_cascade, parse, parse_text, save_cascade
from .nlu_types import ParseResult, Source
from .paraphrase import Paraphrase, generate_paraphrases
from .planner import NoPath, NotTraversable, Plan, plan
from .politeness import (
    PolitenessModel,
    PolitenessScore,
    load_politeness,
    save_politeness,
    score,
    score_text,
    train_politeness,
)
from .responses import ResponseStore, TemplateError, bundled_store, fetch_response, load_store, validate_store
from .rules import PatternRule, RuleFileError, bundled_rules, load_rules, parse_deterministic
from .session import Session, build_session
from .sim import Arrived, Blocked, Pose, SimConfig, World
from .tokenizer import Utterance, tokenize

__version__ = "0.1.0"

__all__ = [
    "AppConfig",
    "Arrived",
    "BehaviorConfig",
    "BehaviorState",
    "Blocked",
    "CascadeModel",
    "ConfigFileError",
    "CorpusError",
    "CorpusRow",
    "Costmap",
    "DialogueAct",
    "DialogueState",
    "FlowOutput",
    "GoTo",
    "MapError",
    "MotionCommand",
    "NluEngine",
    "NoPath",
    "NotTraversable",
    "NO_SLOT",
    "NO_VALUE",
    "OccupancyGrid",
    "Paraphrase",
    "ParseResult",
    "PatternRule",
    "Plan",
    "PolitenessModel",
    "PolitenessScore",
    "Pose",
    "RelativeMove",
    "RelativeTurn",
    "ResponseStore",
    "RuleFileError",
    "Session",
    "SimConfig",
    "SlotValue",
    "SLOT_VOCABULARY",
    "Source",
    "Stop",
    "Teleop",
    "TemplateError",
    "Utterance",
    "World",
    "bundled_map",
    "bundled_rules",
    "bundled_store",
    "build_session",
    "classify_cascade",
    "fetch_response",
    "generate_paraphrases",
    "inflate",
    "initial_behavior_state",
    "initial_dialogue_state",
    "load_cascade",
    "load_config",
    "load_corpus",
    "load_map",
    "load_politeness",
    "load_rules",
    "load_store",
    "map_actuators",
    "parse",
    "parse_deterministic",
    "parse_text",
    "plan",
    "save_cascade",
    "save_politeness",
    "score",
    "score_text",
    "step",
    "tokenize",
    "train_cascade",
    "train_politeness",
    "update",
    "validate_store",
]
