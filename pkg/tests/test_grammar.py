from __future__ import annotations

import logging

import pytest

from cogen.grammar import (
    Lexicon,
    NoComponentKindError,
    parse_intent,
    tokenize,
)
from cogen.model import ColorValue, ComponentKind, StyleTheme


def test_tokenize_drops_punctuation_and_lowercases() -> None:
    assert tokenize("Generate a Professional Button.") == [
        "generate",
        "a",
        "professional",
        "button",
    ]


def test_tokenize_merges_multiword_phrases() -> None:
    assert tokenize("border radius of 10.0") == ["border_radius", "of", "10.0"]
    assert tokenize("a drop shadow effect") == ["a", "drop_shadow", "effect"]


def test_tokenize_empty() -> None:
    assert tokenize("") == []


def test_parse_paper_border_radius_prompt() -> None:
    intent = parse_intent("Generate a Professional Button with a border radius of 10.0")
    assert intent.kind is ComponentKind.BUTTON
    assert intent.style is StyleTheme.PROFESSIONAL
    assert intent.explicit_properties == {"border_radius": 10.0}


def test_parse_paper_size_prompt() -> None:
    intent = parse_intent("generate a professional button with a size of small")
    assert intent.kind is ComponentKind.BUTTON
    assert intent.style is StyleTheme.PROFESSIONAL
    assert intent.explicit_properties == {"size": "small"}


def test_parse_no_kind_raises() -> None:
    with pytest.raises(NoComponentKindError):
        parse_intent("make something nice")


def test_first_kind_wins() -> None:
    assert parse_intent("button label").kind is ComponentKind.BUTTON
    assert parse_intent("label button").kind is ComponentKind.LABEL


def test_default_style_is_basic() -> None:
    assert parse_intent("create a button").style is StyleTheme.BASIC


def test_kind_synonyms() -> None:
    assert parse_intent("make a text field").kind is ComponentKind.INPUT_FIELD
    assert parse_intent("an icon button please").kind is ComponentKind.ICON_BUTTON
    assert parse_intent("a menu would be nice").kind is ComponentKind.MENU_LIST


def test_number_binds_to_nearest_preceding_property() -> None:
    intent = parse_intent("playful button with stroke weight 3 and border radius 12")
    assert intent.explicit_properties == {"stroke_weight": 3.0, "border_radius": 12.0}


def test_number_outside_window_is_ignored() -> None:
    # Four filler tokens between the property phrase and the number.
    intent = parse_intent("button border radius is really very quite near 10")
    assert "border_radius" not in intent.explicit_properties


def test_bare_number_is_ignored() -> None:
    assert parse_intent("basic button 10").explicit_properties == {}


def test_contradiction_keeps_first_and_warns(caplog: pytest.LogCaptureFixture) -> None:
    with caplog.at_level(logging.WARNING, logger="cogen.grammar"):
        intent = parse_intent("a small large button")
    assert intent.explicit_properties["size"] == "small"
    assert any("contradictory" in record.message for record in caplog.records)


def test_effect_words() -> None:
    intent = parse_intent("trendy icon button with a drop shadow")
    assert intent.explicit_properties["effect"] == "DROP_SHADOW"
    intent = parse_intent("button with layer blur")
    assert intent.explicit_properties["effect"] == "LAYER_BLUR"


def test_color_word_and_hex() -> None:
    by_word = parse_intent("a red button")
    assert by_word.explicit_properties["color"] == ColorValue.from_hex("#FF0000")
    by_hex = parse_intent("a button colored #00ff00")
    assert by_hex.explicit_properties["color"] == ColorValue.from_hex("#00FF00")


def test_subtype_capture() -> None:
    assert parse_intent("a dark input field").subtype == "Dark"
    assert parse_intent("a button").subtype is None


def test_parse_is_idempotent_over_token_text(lexicon: Lexicon) -> None:
    prompts = [
        "Generate a Professional Button with a border radius of 10.0",
        "make a playful menu list with a drop shadow",
        "create a basic label",
    ]
    for prompt in prompts:
        retokenized = " ".join(tokenize(prompt, lexicon))
        assert parse_intent(retokenized, lexicon) == parse_intent(prompt, lexicon)


def test_lexicon_rejects_ambiguous_surface() -> None:
    with pytest.raises(ValueError):
        Lexicon(
            version=1,
            kinds={"button": ComponentKind.BUTTON},
            styles={"button": StyleTheme.BASIC},
            properties={},
            effects={},
            sizes={},
            subtypes={},
            colors={},
        )


def test_size_large_synonym() -> None:
    assert parse_intent("a big button").explicit_properties["size"] == "large"
