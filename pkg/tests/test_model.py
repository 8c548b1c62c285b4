from __future__ import annotations

import json
import random

import pytest

from cogen.model import (
    ColorValue,
    ComponentIntent,
    ComponentKind,
    EffectSpec,
    FlatComponentSpec,
    FullComponentName,
    NestedNode,
    NodeKind,
    StyleTheme,
    UnknownKindError,
    UnknownStyleError,
    WrongPartCountError,
    canonical_dumps,
    norm_number,
    parse_full_name,
    serialize_full_name,
    summarize_nested,
)

KIND_DISPLAY = {
    ComponentKind.BUTTON: "Button",
    ComponentKind.INPUT_FIELD: "Input field",
    ComponentKind.ICON_BUTTON: "Icon button",
    ComponentKind.MENU_LIST: "Menu list",
    ComponentKind.LIST_ITEM: "List items",
    ComponentKind.LABEL: "Label",
}


def test_norm_number_two_decimals() -> None:
    assert norm_number(10) == 10.0
    assert norm_number(0.145098) == 0.15
    assert norm_number("3.999") == 4.0
    assert isinstance(norm_number(1), float)


def test_kind_display_spellings() -> None:
    for kind, display in KIND_DISPLAY.items():
        assert kind.display == display


@pytest.mark.parametrize(
    "alias,kind",
    [
        ("Button", ComponentKind.BUTTON),
        ("input field", ComponentKind.INPUT_FIELD),
        ("InputField", ComponentKind.INPUT_FIELD),
        ("Icon button", ComponentKind.ICON_BUTTON),
        ("menu list", ComponentKind.MENU_LIST),
        ("List items", ComponentKind.LIST_ITEM),
        ("list item", ComponentKind.LIST_ITEM),
        ("label", ComponentKind.LABEL),
    ],
)
def test_kind_parse_aliases(alias: str, kind: ComponentKind) -> None:
    assert ComponentKind.parse(alias) is kind


def test_parse_full_name_three_parts() -> None:
    name = parse_full_name("Professional/Button/Default")
    assert name.style is StyleTheme.PROFESSIONAL
    assert name.kind is ComponentKind.BUTTON
    assert name.subtype == "Default"


def test_parse_full_name_two_parts_and_case() -> None:
    name = parse_full_name("basic/label")
    assert name.style is StyleTheme.BASIC
    assert name.kind is ComponentKind.LABEL
    assert name.subtype is None


def test_parse_full_name_trims_segments() -> None:
    name = parse_full_name(" Trendy / Input field / Dark ")
    assert name.kind is ComponentKind.INPUT_FIELD
    assert name.subtype == "Dark"


@pytest.mark.parametrize(
    "raw,error",
    [
        ("Button", WrongPartCountError),
        ("a/b/c/d", WrongPartCountError),
        ("", WrongPartCountError),
        ("Fancy/Button/Default", UnknownStyleError),
        ("Basic/Widget/Default", UnknownKindError),
    ],
)
def test_parse_full_name_errors(raw: str, error: type[Exception]) -> None:
    with pytest.raises(error):
        parse_full_name(raw)


def test_serialize_uses_display_spelling() -> None:
    name = FullComponentName(StyleTheme.TRENDY, ComponentKind.INPUT_FIELD, "Dark")
    assert serialize_full_name(name) == "Trendy/Input field/Dark"
    assert serialize_full_name(parse_full_name("Basic/Label")) == "Basic/Label"


def test_full_name_round_trip_all_combinations() -> None:
    for style in StyleTheme:
        for kind in ComponentKind:
            name = FullComponentName(style, kind, "Default")
            assert parse_full_name(serialize_full_name(name)) == name


def test_subtype_rejects_slash() -> None:
    with pytest.raises(ValueError):
        FullComponentName(StyleTheme.BASIC, ComponentKind.BUTTON, "a/b")


def test_color_channels_normalized_and_bounded() -> None:
    color = ColorValue(r=0.145098, g=0.388235, b=0.921568)
    assert (color.r, color.g, color.b, color.a) == (0.15, 0.39, 0.92, 1.0)
    with pytest.raises(ValueError):
        ColorValue(r=1.2, g=0, b=0)


def test_color_hex_alpha_rule() -> None:
    assert ColorValue(r=0.2, g=0.4, b=0.8).to_hex() == "#3366CC"
    assert ColorValue(r=0, g=0, b=0, a=0.25).to_hex() == "#00000040"


def test_color_hex_round_trip_within_one_255th() -> None:
    rng = random.Random(11)
    for _ in range(100):
        color = ColorValue(rng.random(), rng.random(), rng.random(), rng.random())
        back = ColorValue.from_hex(color.to_hex())
        for channel in ("r", "g", "b", "a"):
            assert abs(getattr(back, channel) - getattr(color, channel)) <= 1 / 255 + 1e-9


def test_effect_requires_name() -> None:
    with pytest.raises(ValueError):
        EffectSpec(effect_name="", effect_color=ColorValue(0, 0, 0))


def _sample_flat() -> FlatComponentSpec:
    return FlatComponentSpec(
        name=parse_full_name("Professional/Button/Default"),
        variant_properties={"State": "Default"},
        height=40,
        width=120,
        color=ColorValue.from_hex("#2563EB"),
        text_color=ColorValue.from_hex("#FFFFFF"),
        font_family="Inter",
        font_weight=600,
        font_size=14,
        border_radius=8,
    )


def test_flat_spec_round_trip_exact() -> None:
    spec = _sample_flat()
    text = spec.to_canonical_json()
    again = FlatComponentSpec.from_json_dict(json.loads(text))
    assert again.to_canonical_json() == text
    assert again == spec


def test_flat_spec_omits_absent_fields() -> None:
    spec = FlatComponentSpec(name=parse_full_name("Basic/Label"), height=20, width=80)
    doc = spec.to_json_dict()
    assert set(doc) == {"name", "variant_properties", "height", "width", "x", "y"}


def test_flat_spec_validation() -> None:
    name = parse_full_name("Basic/Button/Default")
    with pytest.raises(ValueError):
        FlatComponentSpec(name=name, height=-1, width=10)
    with pytest.raises(ValueError):
        FlatComponentSpec(name=name, height=10, width=10, stroke_weight=-2)
    with pytest.raises(ValueError):
        FlatComponentSpec(name=name, height=10, width=10, font_size=0)


def test_nested_leaf_rejects_children() -> None:
    child = NestedNode(kind=NodeKind.TEXT, name="t", height=10, width=10)
    with pytest.raises(ValueError):
        NestedNode(kind=NodeKind.TEXT, name="t", height=10, width=10, children=(child,))
    with pytest.raises(ValueError):
        NestedNode(kind=NodeKind.VECTOR, name="v", height=10, width=10, children=(child,))


def _sample_tree() -> NestedNode:
    return NestedNode(
        kind=NodeKind.FRAME,
        name="Basic/Button/Default",
        height=40,
        width=120,
        color=ColorValue.from_hex("#E5E7EB"),
        border_radius=4,
        children=(
            NestedNode(
                kind=NodeKind.TEXT,
                name="Button",
                height=24,
                width=104,
                x=8,
                y=8,
                text_color=ColorValue.from_hex("#111827"),
                font_family="Arial",
                font_weight=400,
                font_size=14,
            ),
        ),
    )


def test_nested_walk_preorder_and_count() -> None:
    tree = _sample_tree()
    names = [node.name for node in tree.walk()]
    assert names == ["Basic/Button/Default", "Button"]
    assert tree.node_count() == 2


def test_nested_round_trip_exact() -> None:
    tree = _sample_tree()
    text = tree.to_canonical_json()
    again = NestedNode.from_json_dict(json.loads(text))
    assert again.to_canonical_json() == text
    assert again == tree


def test_nested_children_key_always_present() -> None:
    leaf = NestedNode(kind=NodeKind.TEXT, name="t", height=10, width=10)
    assert leaf.to_json_dict()["children"] == []


def test_summarize_nested_takes_first_text_fonts() -> None:
    flat = summarize_nested(_sample_tree())
    assert flat.name.kind is ComponentKind.BUTTON
    assert flat.font_family == "Arial"
    assert flat.font_size == 14.0
    assert flat.text_color == ColorValue.from_hex("#111827")
    assert flat.height == 40.0


def test_intent_rejects_unknown_properties() -> None:
    with pytest.raises(ValueError):
        ComponentIntent(
            kind=ComponentKind.BUTTON,
            style=StyleTheme.BASIC,
            explicit_properties={"bogus": 1},
        )


def test_serialization_normalizes_numbers_property() -> None:
    rng = random.Random(5)
    name = parse_full_name("Playful/Icon button/Default")
    for _ in range(50):
        spec = FlatComponentSpec(
            name=name,
            height=rng.uniform(0, 500),
            width=rng.uniform(0, 500),
            x=rng.uniform(-100, 100),
            y=rng.uniform(-100, 100),
            border_radius=rng.uniform(0, 40),
        )
        text = spec.to_canonical_json()
        again = FlatComponentSpec.from_json_dict(json.loads(text))
        assert again.to_canonical_json() == text


def test_canonical_dumps_sorted_compact() -> None:
    assert canonical_dumps({"b": 1, "a": [1.5, 2]}) == '{"a":[1.5,2],"b":1}'
    with pytest.raises(ValueError):
        canonical_dumps({"x": float("nan")})
