"""Component emission, strict JSON validation, and plugin-instruction mapping.

Intents become concrete components by overlaying explicitly requested
properties on a style preset table. Emitted documents always satisfy
:func:`validate_json`, and nested trees map to an ordered instruction list
a canvas plugin can replay.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

from .model import (
    FLAT_KEYS,
    FLAT_REQUIRED_KEYS,
    GROUPING_KINDS,
    NESTED_KEYS,
    NESTED_REQUIRED_KEYS,
    CogenError,
    ColorValue,
    ComponentIntent,
    ComponentKind,
    EffectSpec,
    FlatComponentSpec,
    FullComponentName,
    NestedNode,
    NodeKind,
    StyleTheme,
    canonical_dumps,
    serialize_full_name,
)

logger = logging.getLogger(__name__)

# Inner padding and vertical gap used by the nested node templates.
PAD = 8.0
GAP = 4.0

# Geometry scale factors for the size property.
SIZE_SCALE = {"small": 0.75, "large": 1.25}

MENU_ITEM_COUNT = 3

_DEFAULT_EFFECT_COLOR = "#00000026"


class ValidationError(CogenError, ValueError):
    """Base for document validation failures."""


class JsonSyntaxError(ValidationError):
    """Input is not syntactically valid JSON."""

    def __init__(self, message: str, offset: int | None = None) -> None:
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class InvalidCharacterError(ValidationError):
    """Input contains a raw control character."""


class SchemaViolationError(ValidationError):
    """Document parses as JSON but breaks the component schema."""


@dataclass(frozen=True)
class StylePresetTable:
    """Default field values for every (style, kind) combination.

    Loaded once from a JSON document keyed by ``"<Style>/<Kind>"``; immutable
    afterwards, so a table can be shared across threads.
    """

    entries: Mapping[str, Mapping[str, Any]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", dict(self.entries))
        missing = [
            f"{style.value}/{kind.display}"
            for style in StyleTheme
            for kind in ComponentKind
            if f"{style.value}/{kind.display}" not in self.entries
        ]
        if missing:
            raise ValueError(f"preset table incomplete, missing: {missing}")

    def get(self, style: StyleTheme, kind: ComponentKind) -> dict[str, Any]:
        """Preset field values as FlatComponentSpec keyword arguments."""
        raw = self.entries[f"{style.value}/{kind.display}"]
        fields: dict[str, Any] = {}
        for key, value in raw.items():
            if key in ("color", "stroke_color", "text_color"):
                fields[key] = ColorValue.from_hex(value)
            elif key == "effect":
                fields[key] = EffectSpec(
                    effect_name=value["effect_name"],
                    effect_color=ColorValue.from_hex(value["effect_color"]),
                )
            else:
                fields[key] = value
        return fields


def load_presets(path: str | Path | None = None) -> StylePresetTable:
    """Load the preset table from ``path`` or the packaged default."""
    if path is None:
        text = resources.files("cogen.data").joinpath("presets.json").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    table = StylePresetTable(json.loads(text))
    for style in StyleTheme:
        for kind in ComponentKind:
            # Surface bad preset values at load time, not at first emit.
            FlatComponentSpec(
                name=FullComponentName(style, kind, "Default"),
                **table.get(style, kind),
            )
    return table


_default_presets: StylePresetTable | None = None


def default_presets() -> StylePresetTable:
    global _default_presets
    if _default_presets is None:
        _default_presets = load_presets()
    return _default_presets


def emit_flat(intent: ComponentIntent, presets: StylePresetTable | None = None) -> FlatComponentSpec:
    """Build a flat component from an intent by overlaying it on a preset.

    Explicit properties always win over preset values; ``size`` scales the
    preset geometry instead of overwriting it and is recorded as a variant.
    """
    if presets is None:
        presets = default_presets()
    fields = presets.get(intent.style, intent.kind)
    variant_properties = {"State": "Default"}

    props = dict(intent.explicit_properties)
    size = props.pop("size", None)
    if size is not None:
        scale = SIZE_SCALE[size]
        fields["height"] = fields["height"] * scale
        fields["width"] = fields["width"] * scale
        variant_properties["Size"] = size.capitalize()

    effect_name = props.pop("effect", None)
    if effect_name is not None:
        previous = fields.get("effect")
        fields["effect"] = EffectSpec(
            effect_name=effect_name,
            effect_color=previous.effect_color
            if previous is not None
            else ColorValue.from_hex(_DEFAULT_EFFECT_COLOR),
        )

    fields.update(props)
    return FlatComponentSpec(
        name=FullComponentName(intent.style, intent.kind, intent.subtype or "Default"),
        variant_properties=variant_properties,
        **fields,
    )


def _text_node(name: str, flat: FlatComponentSpec, x: float, y: float, w: float, h: float) -> NestedNode:
    return NestedNode(
        kind=NodeKind.TEXT,
        name=name,
        height=h,
        width=w,
        x=x,
        y=y,
        text_color=flat.text_color,
        font_family=flat.font_family,
        font_weight=flat.font_weight,
        font_size=flat.font_size,
    )


def _frame_fields(flat: FlatComponentSpec) -> dict[str, Any]:
    return {
        "color": flat.color,
        "stroke_color": flat.stroke_color,
        "stroke_weight": flat.stroke_weight,
        "effect": flat.effect,
        "border_radius": flat.border_radius,
    }


def emit_nested(intent: ComponentIntent, presets: StylePresetTable | None = None) -> NestedNode:
    """Build the nested node tree for an intent.

    Templates per kind: Button, InputField and ListItem are a frame with one
    text child; Label is a bare text node; IconButton is a frame with a
    placeholder vector; MenuList is a vertical auto-layout of three list
    items. Coordinates are absolute, anchored at the flat spec's origin.
    """
    flat = emit_flat(intent, presets)
    name = serialize_full_name(flat.name)
    kind = intent.kind
    x, y, w, h = flat.x, flat.y, flat.width, flat.height

    if kind is ComponentKind.LABEL:
        text = _text_node(name, flat, x, y, w, h)
        return text

    if kind is ComponentKind.MENU_LIST:
        item_w = w - 2 * PAD
        item_h = (h - 2 * PAD - (MENU_ITEM_COUNT - 1) * GAP) / MENU_ITEM_COUNT
        items = []
        for index in range(MENU_ITEM_COUNT):
            item_x = x + PAD
            item_y = y + PAD + index * (item_h + GAP)
            label = f"Item {index + 1}"
            items.append(
                NestedNode(
                    kind=NodeKind.FRAME,
                    name=label,
                    height=item_h,
                    width=item_w,
                    x=item_x,
                    y=item_y,
                    color=flat.color,
                    children=(
                        _text_node(
                            label,
                            flat,
                            item_x + PAD,
                            item_y + PAD / 2,
                            item_w - 2 * PAD,
                            item_h - PAD,
                        ),
                    ),
                )
            )
        return NestedNode(
            kind=NodeKind.AUTO_LAYOUT,
            name=name,
            height=h,
            width=w,
            x=x,
            y=y,
            children=tuple(items),
            **_frame_fields(flat),
        )

    if kind is ComponentKind.ICON_BUTTON:
        side = min(w, h) - 2 * PAD
        icon = NestedNode(
            kind=NodeKind.VECTOR,
            name="Icon",
            height=side,
            width=side,
            x=x + (w - side) / 2,
            y=y + (h - side) / 2,
            color=ColorValue.from_hex("#FFFFFF"),
        )
        children: tuple[NestedNode, ...] = (icon,)
    else:
        # Button, InputField, ListItem: one text child in the inner box.
        text_label = {
            ComponentKind.BUTTON: "Button",
            ComponentKind.INPUT_FIELD: "Placeholder",
            ComponentKind.LIST_ITEM: "Item",
        }[kind]
        children = (
            _text_node(text_label, flat, x + PAD, y + PAD, w - 2 * PAD, h - 2 * PAD),
        )

    return NestedNode(
        kind=NodeKind.FRAME,
        name=name,
        height=h,
        width=w,
        x=x,
        y=y,
        children=children,
        **_frame_fields(flat),
    )


_COLOR_FIELD_KEYS = frozenset({"color", "stroke_color", "text_color"})
_NUMBER_FIELD_KEYS = frozenset(
    {"height", "width", "x", "y", "stroke_weight", "font_weight", "font_size", "border_radius"}
)


def _reject_duplicate_keys(pairs: list[tuple[str, Any]]) -> dict[str, Any]:
    seen: dict[str, Any] = {}
    for key, value in pairs:
        if key in seen:
            raise SchemaViolationError(f"duplicate key: {key!r}")
        seen[key] = value
    return seen


def _reject_constant(token: str) -> Any:
    raise JsonSyntaxError(f"{token} is not valid JSON")


def _check_value_types(doc: Mapping[str, Any], nested: bool, path: str, warnings: list[str]) -> None:
    known = NESTED_KEYS if nested else frozenset(FLAT_KEYS)
    required = NESTED_REQUIRED_KEYS if nested else FLAT_REQUIRED_KEYS
    for key in required:
        if key not in doc:
            raise SchemaViolationError(f"missing required key {key!r} at {path}")
    for key, value in doc.items():
        if key not in known:
            warnings.append(f"unknown key {key!r} at {path}")
            continue
        if key in _NUMBER_FIELD_KEYS and not isinstance(value, (int, float)):
            raise SchemaViolationError(f"key {key!r} at {path} must be a number")
        if key in _COLOR_FIELD_KEYS and not isinstance(value, dict):
            raise SchemaViolationError(f"key {key!r} at {path} must be an object")
        if key in ("name", "font_family", "kind") and not isinstance(value, str):
            raise SchemaViolationError(f"key {key!r} at {path} must be a string")
        if key == "variant_properties" and not isinstance(value, dict):
            raise SchemaViolationError(f"key {key!r} at {path} must be an object")
        if key == "children" and not isinstance(value, list):
            raise SchemaViolationError(f"key {key!r} at {path} must be an array")
        if key == "effect" and not isinstance(value, dict):
            raise SchemaViolationError(f"key {key!r} at {path} must be an object")
    if nested:
        for index, child in enumerate(doc.get("children", [])):
            if not isinstance(child, dict):
                raise SchemaViolationError(f"child {index} at {path} must be an object")
            _check_value_types(child, nested=True, path=f"{path}.children[{index}]", warnings=warnings)


def validate_json(raw: str) -> tuple[dict[str, Any], list[str]]:
    """Strictly parse and schema-check one component document.

    Returns the parsed document and a list of unknown-key warnings. Raises
    JsonSyntaxError for malformed JSON (with byte offset where known),
    InvalidCharacterError for raw control characters, and
    SchemaViolationError for schema breaks (missing keys, wrong types,
    duplicate keys, bad values).
    """
    for position, char in enumerate(raw):
        if ord(char) < 0x20 and char not in "\t\n\r":
            raise InvalidCharacterError(
                f"raw control character {char!r} at offset {position}"
            )
    try:
        document = json.loads(
            raw,
            object_pairs_hook=_reject_duplicate_keys,
            parse_constant=_reject_constant,
        )
    except json.JSONDecodeError as exc:
        if "control character" in exc.msg.lower():
            raise InvalidCharacterError(f"{exc.msg} at offset {exc.pos}") from exc
        raise JsonSyntaxError(exc.msg, offset=exc.pos) from exc

    if not isinstance(document, dict):
        raise SchemaViolationError("document root must be an object")

    nested = "kind" in document or "children" in document
    warnings: list[str] = []
    _check_value_types(document, nested=nested, path="$", warnings=warnings)
    try:
        if nested:
            NestedNode.from_json_dict(document)
        else:
            FlatComponentSpec.from_json_dict(document)
    except (ValueError, KeyError, TypeError) as exc:
        raise SchemaViolationError(str(exc)) from exc
    for message in warnings:
        logger.warning("validate_json: %s", message)
    return document, warnings


@dataclass(frozen=True)
class PluginInstruction:
    """One node-creation command in the plugin wire format."""

    op: str
    parent: int | None
    fields: Mapping[str, Any] = field(default_factory=dict)

    def to_json_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {"op": self.op, "parent": self.parent}
        doc.update(self.fields)
        return doc


_OP_BY_KIND = {
    NodeKind.FRAME: "create_frame",
    NodeKind.AUTO_LAYOUT: "create_frame",
    NodeKind.GROUP: "create_frame",
    NodeKind.TEXT: "create_text",
    NodeKind.VECTOR: "create_rectangle",
}


def map_to_figma(tree: NestedNode) -> list[PluginInstruction]:
    """Flatten a nested tree into ordered plugin instructions.

    Pre-order traversal, so every instruction's parent index refers to an
    earlier instruction. Coordinates are converted from absolute to
    parent-relative, which is what canvas APIs expect of child nodes.
    """
    instructions: list[PluginInstruction] = []

    def visit(node: NestedNode, parent_index: int | None, origin_x: float, origin_y: float) -> None:
        fields: dict[str, Any] = {
            "name": node.name,
            "x": node.x - origin_x,
            "y": node.y - origin_y,
            "width": node.width,
            "height": node.height,
        }
        if node.kind in GROUPING_KINDS:
            fields["autolayout"] = node.kind is NodeKind.AUTO_LAYOUT
        if node.kind is NodeKind.TEXT:
            fields["text"] = node.name
            if node.text_color is not None:
                fields["text_color"] = node.text_color.to_hex()
            if node.font_family is not None:
                fields["font_family"] = node.font_family
            if node.font_size is not None:
                fields["font_size"] = node.font_size
            if node.font_weight is not None:
                fields["font_weight"] = node.font_weight
        else:
            if node.color is not None:
                fields["color"] = node.color.to_hex()
            if node.stroke_color is not None:
                fields["stroke_color"] = node.stroke_color.to_hex()
            if node.stroke_weight is not None:
                fields["stroke_weight"] = node.stroke_weight
            if node.border_radius is not None:
                fields["border_radius"] = node.border_radius
            if node.effect is not None:
                fields["effect"] = {
                    "effect_name": node.effect.effect_name,
                    "effect_color": node.effect.effect_color.to_hex(),
                }
        index = len(instructions)
        instructions.append(
            PluginInstruction(op=_OP_BY_KIND[node.kind], parent=parent_index, fields=fields)
        )
        for child in node.children:
            visit(child, index, node.x, node.y)

    visit(tree, None, 0.0, 0.0)
    return instructions


def instructions_to_json(instructions: list[PluginInstruction]) -> list[dict[str, Any]]:
    return [instruction.to_json_dict() for instruction in instructions]


def serialize_instructions(instructions: list[PluginInstruction]) -> str:
    return canonical_dumps(instructions_to_json(instructions))
