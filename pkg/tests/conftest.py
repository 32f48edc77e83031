import pytest

from polibot.acts import DialogueAct, SlotValue
from polibot.nlu import NluEngine
from polibot.nlu_types import ParseResult, Source
from polibot.politeness import PolitenessScore
from polibot.responses import bundled_store
from polibot.rules import bundled_rules
from polibot.training import default_models

# Acceptance criteria report: each test in test_acceptance.py appends its
# verdict here; the summary hook prints the block at the end of the run so
# the pass/fail lines are visible without -s.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def models():
    return default_models()


@pytest.fixture(scope="session")
def cascade(models):
    return models[0]


@pytest.fixture(scope="session")
def politeness_model(models):
    return models[1]


@pytest.fixture(scope="session")
def rules():
    return bundled_rules()


@pytest.fixture(scope="session")
def engine(rules, cascade):
    return NluEngine(rules=rules, model=cascade)


@pytest.fixture(scope="session")
def store():
    return bundled_store()


def user_event(da: DialogueAct, dop: int = 0, t: float = 0.0, **slots):
    """Hand-built UserUtterance event for flow tests."""
    from polibot import flow

    slot_values = tuple(SlotValue(k, v) for k, v in slots.items()) or (
        SlotValue("no_slot", "no_value"),
    )
    if da is DialogueAct.UNKNOWN:
        slot_values = ()
    result = ParseResult(
        da=da,
        slots=slot_values,
        da_confidence=1.0,
        slot_confidence=1.0,
        source=Source.DETERMINISTIC,
    )
    return flow.UserUtterance(
        result=result, politeness=PolitenessScore(float(dop), dop), t=t
    )
