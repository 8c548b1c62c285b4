"""Grammar-based parsing of free-text prompts into a ComponentIntent.

The deterministic replacement for a learned prompt-to-JSON stage: a synonym
lexicon, a tokenizer that merges multiword phrases, and a small bounded
grammar (numbers bind to the nearest preceding property phrase). Unknown
filler words are ignored.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

from .model import (
    CogenError,
    ColorValue,
    ComponentIntent,
    ComponentKind,
    StyleTheme,
)

logger = logging.getLogger(__name__)

# A number may bind to a property phrase at most this many tokens back.
NUMBER_BIND_WINDOW = 3

# Properties whose value is the following number token.
NUMERIC_PROPERTIES = frozenset(
    {"border_radius", "stroke_weight", "font_size", "font_weight", "height", "width"}
)

_TOKEN_RE = re.compile(r"#[0-9a-f]{6,8}|\d+(?:\.\d+)?|[a-z][a-z0-9_]*")


class NoComponentKindError(CogenError, ValueError):
    """The prompt names no recognizable component kind."""


@dataclass(frozen=True)
class Lexicon:
    """Immutable synonym table mapping surface phrases to canonical targets."""

    version: int
    kinds: Mapping[str, ComponentKind]
    styles: Mapping[str, StyleTheme]
    properties: Mapping[str, str]
    effects: Mapping[str, str]
    sizes: Mapping[str, str]
    subtypes: Mapping[str, str]
    colors: Mapping[str, str]

    def __post_init__(self) -> None:
        seen: dict[str, tuple[str, Any]] = {}
        for table_name in ("kinds", "styles", "properties", "effects", "sizes", "subtypes", "colors"):
            for surface, target in getattr(self, table_name).items():
                if surface in seen and seen[surface][1] != target:
                    raise ValueError(
                        f"lexicon surface {surface!r} maps to both "
                        f"{seen[surface][1]!r} and {target!r}"
                    )
                seen[surface] = (table_name, target)
        # Multiword surfaces, longest first, for greedy merging.
        phrases = sorted(
            {tuple(s.split()) for s in seen if " " in s},
            key=len,
            reverse=True,
        )
        object.__setattr__(self, "_phrases", phrases)

    @property
    def phrases(self) -> list[tuple[str, ...]]:
        return list(self._phrases)  # type: ignore[attr-defined]

    def lookup(self, table: str, token: str) -> Any | None:
        """Look a token up in one table; merged tokens use '_' for spaces."""
        return getattr(self, table).get(token.replace("_", " "))


def load_lexicon(path: str | Path | None = None) -> Lexicon:
    """Load the lexicon from a JSON config file (packaged default when omitted)."""
    if path is None:
        raw = resources.files("cogen.data").joinpath("lexicon.json").read_text("utf-8")
    else:
        raw = Path(path).read_text("utf-8")
    data = json.loads(raw)
    return Lexicon(
        version=data.get("version", 1),
        kinds={k.lower(): ComponentKind.parse(v) for k, v in data["kinds"].items()},
        styles={k.lower(): StyleTheme.parse(v) for k, v in data["styles"].items()},
        properties={k.lower(): v for k, v in data["properties"].items()},
        effects={k.lower(): v for k, v in data["effects"].items()},
        sizes={k.lower(): v for k, v in data["sizes"].items()},
        subtypes={k.lower(): v for k, v in data["subtypes"].items()},
        colors={k.lower(): v for k, v in data["colors"].items()},
    )


_DEFAULT_LEXICON: Lexicon | None = None


def default_lexicon() -> Lexicon:
    global _DEFAULT_LEXICON
    if _DEFAULT_LEXICON is None:
        _DEFAULT_LEXICON = load_lexicon()
    return _DEFAULT_LEXICON


def tokenize(prompt: str, lexicon: Lexicon | None = None) -> list[str]:
    """Lowercase word/number/hex tokens with punctuation dropped.

    Multiword lexicon phrases are greedily merged into single underscore-joined
    tokens, longest match first ("border radius" -> "border_radius").
    """
    lexicon = lexicon or default_lexicon()
    words = _TOKEN_RE.findall(prompt.lower())
    phrases = lexicon.phrases
    merged: list[str] = []
    i = 0
    while i < len(words):
        match_len = 0
        for phrase in phrases:
            n = len(phrase)
            if n <= len(words) - i and tuple(words[i : i + n]) == phrase:
                match_len = n
                break
        if match_len:
            merged.append("_".join(words[i : i + match_len]))
            i += match_len
        else:
            merged.append(words[i])
            i += 1
    return merged


def parse_intent(prompt: str, lexicon: Lexicon | None = None) -> ComponentIntent:
    """Parse a free-text prompt into a ComponentIntent.

    The first kind token wins (error when none is found); the first style
    token wins, defaulting to Basic; numbers bind to the nearest preceding
    numeric property phrase within NUMBER_BIND_WINDOW tokens; unknown tokens
    are ignored. Contradictory repeated values keep the first and warn.
    """
    lexicon = lexicon or default_lexicon()
    tokens = tokenize(prompt, lexicon)

    kind: ComponentKind | None = None
    style: StyleTheme | None = None
    subtype: str | None = None
    props: dict[str, Any] = {}

    def _set_prop(key: str, value: Any) -> None:
        if key in props:
            if props[key] != value:
                logger.warning(
                    "contradictory %s in prompt %r: keeping %r, ignoring %r",
                    key, prompt, props[key], value,
                )
            return
        props[key] = value

    for i, token in enumerate(tokens):
        found_kind = lexicon.lookup("kinds", token)
        if found_kind is not None:
            kind = kind or found_kind
            continue
        found_style = lexicon.lookup("styles", token)
        if found_style is not None:
            style = style or found_style
            continue
        found_size = lexicon.lookup("sizes", token)
        if found_size is not None:
            _set_prop("size", found_size.lower())
            continue
        found_subtype = lexicon.lookup("subtypes", token)
        if found_subtype is not None:
            subtype = subtype or found_subtype
            continue
        found_effect = lexicon.lookup("effects", token)
        if found_effect is not None:
            _set_prop("effect", found_effect)
            continue
        found_color = lexicon.lookup("colors", token)
        if found_color is not None:
            _set_prop("color", ColorValue.from_hex(found_color))
            continue
        if token.startswith("#"):
            _set_prop("color", ColorValue.from_hex(token))
            continue
        if token[0].isdigit():
            prop = _nearest_numeric_property(tokens, i, lexicon)
            if prop is not None:
                _set_prop(prop, float(token))
            continue

    if kind is None:
        raise NoComponentKindError(f"no component kind found in prompt: {prompt!r}")
    return ComponentIntent(
        kind=kind,
        style=style or StyleTheme.BASIC,
        subtype=subtype,
        explicit_properties=props,
    )


def _nearest_numeric_property(tokens: list[str], index: int, lexicon: Lexicon) -> str | None:
    lo = max(0, index - NUMBER_BIND_WINDOW)
    for j in range(index - 1, lo - 1, -1):
        prop = lexicon.lookup("properties", tokens[j])
        if prop in NUMERIC_PROPERTIES:
            return prop
    return None


def first_kind_token(text: str, lexicon: Lexicon | None = None) -> ComponentKind | None:
    """The first component kind mentioned in a text, or None.

    Shared by the evaluation harness to grade component-name identification
    on arbitrary generated output (prompts or serialized JSON).
    """
    lexicon = lexicon or default_lexicon()
    for token in tokenize(text, lexicon):
        kind = lexicon.lookup("kinds", token)
        if kind is not None:
            return kind
    return None
