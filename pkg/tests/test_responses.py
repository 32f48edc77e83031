"""Response template store: parsing, validation, and variant selection."""

import random

import pytest

from polibot.flow import REACHABLE_RESPONSE_KEYS
from polibot.responses import (
    DOP_CLASSES,
    ResponseStore,
    TemplateError,
    fetch_response,
    parse_store,
    validate_store,
)


def test_bundled_store_is_fully_covered(store):
    assert validate_store(store) == []


def test_every_reachable_key_fetches(store):
    bindings = {"room": "retail", "direction": "left", "next_room": "education"}
    for key in REACHABLE_RESPONSE_KEYS:
        for dop_class in DOP_CLASSES:
            text = fetch_response(store, (key, dop_class), bindings, rng=0)
            assert text
            assert "{" not in text and "}" not in text


def test_missing_key_is_one_defect():
    store = ResponseStore({("Greeting", None): ("hello.",)})
    defects = validate_store(store)
    assert "no template for (FinishedOne, +1)" in defects
    fine = [d for d in defects if "FinishedOne" in d]
    assert len(fine) == 3  # one per politeness class


def test_unknown_key_is_flagged():
    store = ResponseStore({("Nonexistent", None): ("boo",)})
    defects = validate_store(store)
    assert any("never emitted" in d for d in defects)


def test_unbindable_placeholder_is_flagged():
    store = ResponseStore({("Greeting", None): ("hello {room}",)})
    defects = validate_store(store)
    assert any("cannot be bound" in d for d in defects)


def test_exact_class_preferred_over_any():
    store = ResponseStore(
        {
            ("Greeting", None): ("generic",),
            ("Greeting", 1): ("polite",),
        }
    )
    assert store.variants_for("Greeting", 1) == ("polite",)
    assert store.variants_for("Greeting", 0) == ("generic",)
    assert fetch_response(store, ("Greeting", 1), {}, rng=0) == "polite"
    assert fetch_response(store, ("Greeting", -1), {}, rng=0) == "generic"


def test_single_variant_ignores_the_rng():
    store = ResponseStore({("Greeting", None): ("only one",)})
    rng = random.Random(7)
    before = rng.getstate()
    assert fetch_response(store, ("Greeting", 0), {}, rng) == "only one"
    assert rng.getstate() == before


def test_variant_choice_is_seed_deterministic(store):
    a = [fetch_response(store, ("Greeting", 0), {}, rng=5) for _ in range(4)]
    b = [fetch_response(store, ("Greeting", 0), {}, rng=5) for _ in range(4)]
    assert a == b


def test_bindings_are_substituted(store):
    text = fetch_response(
        store, ("TakeToPlace", 1), {"room": "tourism"}, rng=0
    )
    assert "tourism" in text


def test_polite_and_terse_variants_differ(store):
    for key in REACHABLE_RESPONSE_KEYS:
        polite = store.variants_for(key, 1)
        brusque = store.variants_for(key, -1)
        assert set(polite) != set(brusque), key


def test_missing_binding_raises():
    store = ResponseStore({("TakeToPlace", None): ("to {room} then",)})
    with pytest.raises(TemplateError, match="binding"):
        fetch_response(store, ("TakeToPlace", 0), {}, rng=0)


def test_unresolvable_key_raises():
    store = ResponseStore({})
    with pytest.raises(TemplateError, match="no template"):
        fetch_response(store, ("Greeting", 0), {}, rng=0)


# ---------------------------------------------------------------------------
# file parsing


def test_parse_accepts_repeat_lines_as_variants():
    store = parse_store(
        "# comment\n"
        "Greeting\tany\thi.\n"
        "Greeting\tany\thello.\n"
    )
    assert store.variants_for("Greeting", 0) == ("hi.", "hello.")


@pytest.mark.parametrize(
    "line,fragment",
    [
        ("Greeting\tany", "3 tab-separated fields"),
        ("Greeting\tmaybe\thi", "not -1, 0, 1, or any"),
        ("Greeting\t2\thi", "out of range"),
        ("Greeting\tany\t ", "empty template"),
    ],
)
def test_parse_rejects_malformed_lines(line, fragment):
    with pytest.raises(TemplateError, match=fragment):
        parse_store(line + "\n")


def test_parse_rejects_author_errors_but_not_gaps():
    # an unknown key is an author error even in a partial store
    with pytest.raises(TemplateError, match="never emitted"):
        parse_store("Bogus\tany\thello\n")
    with pytest.raises(TemplateError, match="cannot be bound"):
        parse_store("Greeting\tany\thello {next_room}\n")
    # coverage gaps are fine at parse time; validate_store reports them
    partial = parse_store("Greeting\tany\thello\n")
    assert any(d.startswith("no template") for d in validate_store(partial))
