"""Response templates keyed by intention and politeness class.

Store file format, one variant per line (repeat lines for alternatives)::

    key<TAB>dop_class<TAB>template

``dop_class`` is -1, 0, 1, or ``any``; an exact class entry is preferred over
``any``.  Templates may use ``{room}``, ``{direction}``, and ``{next_room}``
placeholders where the flow provides those bindings.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .flow import KEY_PLACEHOLDERS, REACHABLE_RESPONSE_KEYS

DOP_CLASSES = (-1, 0, 1)
_PLACEHOLDER_RE = re.compile(r"\{([a-z_]+)\}")


class TemplateError(Exception):
    pass


@dataclass(frozen=True)
class ResponseTemplate:
    key: str
    dop_class: int | None  # None = any
    variants: tuple[str, ...]


class ResponseStore:
    def __init__(self, entries: dict[tuple[str, int | None], tuple[str, ...]]):
        self._entries = entries

    @property
    def entries(self) -> dict[tuple[str, int | None], tuple[str, ...]]:
        return dict(self._entries)

    def variants_for(self, key: str, dop_class: int) -> tuple[str, ...] | None:
        exact = self._entries.get((key, dop_class))
        if exact:
            return exact
        return self._entries.get((key, None))


def parse_store(text: str) -> ResponseStore:
    entries: dict[tuple[str, int | None], list[str]] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.rstrip("\n").split("\t")
        if len(fields) != 3:
            raise TemplateError(f"line {line_no}: expected 3 tab-separated fields")
        key, class_text, template = fields
        if class_text == "any":
            dop_class: int | None = None
        else:
            try:
                dop_class = int(class_text)
            except ValueError:
                raise TemplateError(
                    f"line {line_no}: politeness class {class_text!r} is not -1, 0, 1, or any"
                ) from None
            if dop_class not in DOP_CLASSES:
                raise TemplateError(f"line {line_no}: politeness class {dop_class} out of range")
        if not template.strip():
            raise TemplateError(f"line {line_no}: empty template")
        entries.setdefault((key, dop_class), []).append(template)
    store = ResponseStore({k: tuple(v) for k, v in entries.items()})
    # Placeholder and unknown-key problems are author errors, caught at load.
    # Coverage gaps are left to validate_store so partial stores can be probed.
    hard = [d for d in validate_store(store) if not d.startswith("no template")]
    if hard:
        raise TemplateError("; ".join(hard))
    return store


def load_store(path: str | Path) -> ResponseStore:
    return parse_store(Path(path).read_text(encoding="utf-8"))


def bundled_store() -> ResponseStore:
    text = resources.files("polibot.data").joinpath("responses.tsv").read_text(encoding="utf-8")
    return parse_store(text)


def validate_store(store: ResponseStore) -> list[str]:
    """Every reachable (key, class) must resolve and every placeholder must bind."""
    defects = []
    for key in REACHABLE_RESPONSE_KEYS:
        for dop_class in DOP_CLASSES:
            if store.variants_for(key, dop_class) is None:
                defects.append(f"no template for ({key}, {dop_class:+d})")
    allowed_keys = set(REACHABLE_RESPONSE_KEYS)
    for (key, dop_class), variants in store.entries.items():
        if key not in allowed_keys:
            defects.append(f"template key {key!r} is never emitted by the flow")
            continue
        bindable = KEY_PLACEHOLDERS.get(key, frozenset())
        for variant in variants:
            for name in _PLACEHOLDER_RE.findall(variant):
                if name not in bindable:
                    defects.append(
                        f"placeholder {{{name}}} in ({key}, "
                        f"{'any' if dop_class is None else dop_class}) cannot be bound"
                    )
    return defects


def fetch_response(
    store: ResponseStore,
    key: tuple[str, int],
    bindings: dict[str, str],
    rng: random.Random | int,
) -> str:
    """Pick one variant for the (intention, politeness class) key.

    Deterministic given the key, bindings, and RNG state; a fresh
    ``random.Random(seed)`` may be passed directly.
    """
    intent, dop_class = key
    variants = store.variants_for(intent, dop_class)
    if variants is None:
        raise TemplateError(f"no template for key ({intent}, {dop_class:+d})")
    if isinstance(rng, int):
        rng = random.Random(rng)
    template = variants[0] if len(variants) == 1 else rng.choice(variants)
    try:
        return template.format(**bindings)
    except KeyError as exc:
        raise TemplateError(
            f"binding {exc} missing for template {template!r}"
        ) from None
