"""Core vocabulary for atomic UI components.

Every other module builds on the types here: the six component kinds, the
four style themes, the ``Style/ComponentName/Subtype`` naming convention,
and the two JSON shapes a component can take (flat property map and nested
node tree). All types are immutable value objects; numeric fields are
normalized to at most two decimal places at construction so serialization
round-trips are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterator, Mapping

import json


class CogenError(Exception):
    """Base class for all errors raised by this package."""


class FullNameError(CogenError, ValueError):
    """A component-set name does not follow the naming convention."""


class WrongPartCountError(FullNameError):
    """Name has fewer than 2 or more than 3 slash-separated parts."""


class UnknownStyleError(FullNameError):
    """Style segment is not one of the four known themes."""


class UnknownKindError(FullNameError):
    """Component segment is not one of the six known kinds."""


class EmptyInputError(CogenError, ValueError):
    """An operation that requires input received none."""


def norm_number(value: float) -> float:
    """Normalize a numeric value to the canonical 2-decimal precision."""
    return round(float(value), 2)


def canonical_dumps(obj: Any) -> str:
    """Serialize to canonical JSON: sorted keys, compact separators."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


class ComponentKind(Enum):
    """The six supported atomic component kinds (closed set)."""

    BUTTON = "Button"
    INPUT_FIELD = "InputField"
    ICON_BUTTON = "IconButton"
    MENU_LIST = "MenuList"
    LIST_ITEM = "ListItem"
    LABEL = "Label"

    @property
    def display(self) -> str:
        return _KIND_DISPLAY[self]

    @classmethod
    def parse(cls, raw: str) -> "ComponentKind":
        key = " ".join(raw.lower().split())
        try:
            return _KIND_ALIASES[key]
        except KeyError:
            raise UnknownKindError(f"unknown component kind: {raw!r}") from None


# Display spellings used in component-set names ("Menu list", not "MenuList").
_KIND_DISPLAY: dict[ComponentKind, str] = {
    ComponentKind.BUTTON: "Button",
    ComponentKind.INPUT_FIELD: "Input field",
    ComponentKind.ICON_BUTTON: "Icon button",
    ComponentKind.MENU_LIST: "Menu list",
    ComponentKind.LIST_ITEM: "List items",
    ComponentKind.LABEL: "Label",
}

_KIND_ALIASES: dict[str, ComponentKind] = {}
for _kind, _disp in _KIND_DISPLAY.items():
    for _alias in (_disp, _kind.value, _disp.replace(" ", "")):
        _KIND_ALIASES[_alias.lower()] = _kind
# Singular/plural drift seen in real design-system files.
_KIND_ALIASES["list item"] = ComponentKind.LIST_ITEM
_KIND_ALIASES["input fields"] = ComponentKind.INPUT_FIELD


class StyleTheme(Enum):
    """The four supported style themes (closed set)."""

    BASIC = "Basic"
    TRENDY = "Trendy"
    PLAYFUL = "Playful"
    PROFESSIONAL = "Professional"

    @classmethod
    def parse(cls, raw: str) -> "StyleTheme":
        key = raw.strip().lower()
        for theme in cls:
            if theme.value.lower() == key:
                return theme
        raise UnknownStyleError(f"unknown style theme: {raw!r}")


@dataclass(frozen=True)
class FullComponentName:
    """Parsed ``Style/ComponentName/Subtype`` triple identifying a component set.

    The subtype segment is optional; when present it must not contain a slash.
    """

    style: StyleTheme
    kind: ComponentKind
    subtype: str | None = None

    def __post_init__(self) -> None:
        if self.subtype is not None and "/" in self.subtype:
            raise FullNameError(f"subtype must not contain '/': {self.subtype!r}")


def parse_full_name(raw: str) -> FullComponentName:
    """Parse a component-set name into its style/kind/subtype parts.

    Parts are separated by ``/`` and matched case-insensitively; surrounding
    whitespace is trimmed. Two parts mean no subtype, three parts carry one.
    """
    if not raw or not raw.strip():
        raise WrongPartCountError("component name is empty")
    parts = [p.strip() for p in raw.split("/")]
    if len(parts) < 2 or len(parts) > 3:
        raise WrongPartCountError(
            f"expected 2 or 3 '/'-separated parts, got {len(parts)}: {raw!r}"
        )
    style = StyleTheme.parse(parts[0])
    kind = ComponentKind.parse(parts[1])
    subtype = parts[2] if len(parts) == 3 else None
    return FullComponentName(style=style, kind=kind, subtype=subtype)


def serialize_full_name(name: FullComponentName) -> str:
    """Inverse of :func:`parse_full_name`, using display kind spellings."""
    base = f"{name.style.value}/{name.kind.display}"
    if name.subtype is not None:
        return f"{base}/{name.subtype}"
    return base


@dataclass(frozen=True)
class ColorValue:
    """An RGBA color with channels as fractions in [0, 1]."""

    r: float
    g: float
    b: float
    a: float = 1.0

    def __post_init__(self) -> None:
        for channel in ("r", "g", "b", "a"):
            value = norm_number(getattr(self, channel))
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"color channel {channel}={value} outside [0, 1]")
            object.__setattr__(self, channel, value)

    def to_hex(self) -> str:
        """Hex form ``#RRGGBB``; alpha appended as ``AA`` only when a < 1."""
        rgb = "".join(f"{round(c * 255):02X}" for c in (self.r, self.g, self.b))
        if self.a < 1.0:
            return f"#{rgb}{round(self.a * 255):02X}"
        return f"#{rgb}"

    @classmethod
    def from_hex(cls, text: str) -> "ColorValue":
        raw = text.strip().lstrip("#")
        if len(raw) not in (6, 8):
            raise ValueError(f"expected #RRGGBB or #RRGGBBAA, got {text!r}")
        channels = [int(raw[i : i + 2], 16) / 255 for i in range(0, len(raw), 2)]
        if len(channels) == 3:
            channels.append(1.0)
        return cls(*channels)

    def to_json_dict(self) -> dict[str, Any]:
        return {"r": self.r, "g": self.g, "b": self.b, "a": self.a, "hex": self.to_hex()}

    @classmethod
    def from_json_dict(cls, data: Mapping[str, Any]) -> "ColorValue":
        return cls(r=data["r"], g=data["g"], b=data["b"], a=data.get("a", 1.0))


@dataclass(frozen=True)
class EffectSpec:
    """A visual effect (e.g. DROP_SHADOW) and its color."""

    effect_name: str
    effect_color: ColorValue

    def __post_init__(self) -> None:
        if not self.effect_name:
            raise ValueError("effect_name must be nonempty")

    def to_json_dict(self) -> dict[str, Any]:
        return {"effect_name": self.effect_name, "effect_color": self.effect_color.to_json_dict()}

    @classmethod
    def from_json_dict(cls, data: Mapping[str, Any]) -> "EffectSpec":
        return cls(
            effect_name=data["effect_name"],
            effect_color=ColorValue.from_json_dict(data["effect_color"]),
        )


# Keys a flat component document may carry, in canonical emission order.
FLAT_KEYS: tuple[str, ...] = (
    "name",
    "variant_properties",
    "color",
    "stroke_color",
    "stroke_weight",
    "text_color",
    "font_family",
    "font_weight",
    "font_size",
    "effect",
    "height",
    "width",
    "x",
    "y",
    "border_radius",
)

FLAT_REQUIRED_KEYS: frozenset[str] = frozenset(
    {"name", "variant_properties", "height", "width", "x", "y"}
)

_COLOR_KEYS = ("color", "stroke_color", "text_color")
_NUMBER_KEYS = ("stroke_weight", "font_weight", "font_size", "height", "width", "x", "y", "border_radius")


@dataclass(frozen=True)
class FlatComponentSpec:
    """Flat property map of one component variant, no hierarchy.

    Optional fields are ``None`` when the underlying component has no such
    property; serialization omits them entirely so the emitted key set stays
    within :data:`FLAT_KEYS`.
    """

    name: FullComponentName
    height: float
    width: float
    x: float = 0.0
    y: float = 0.0
    variant_properties: Mapping[str, str] = field(default_factory=dict)
    color: ColorValue | None = None
    stroke_color: ColorValue | None = None
    stroke_weight: float | None = None
    text_color: ColorValue | None = None
    font_family: str | None = None
    font_weight: float | None = None
    font_size: float | None = None
    effect: EffectSpec | None = None
    border_radius: float | None = None

    def __post_init__(self) -> None:
        for key in ("height", "width", "x", "y"):
            object.__setattr__(self, key, norm_number(getattr(self, key)))
        for key in ("stroke_weight", "font_weight", "font_size", "border_radius"):
            value = getattr(self, key)
            if value is not None:
                object.__setattr__(self, key, norm_number(value))
        object.__setattr__(self, "variant_properties", dict(self.variant_properties))
        if self.height < 0 or self.width < 0:
            raise ValueError("height and width must be >= 0")
        if self.stroke_weight is not None and self.stroke_weight < 0:
            raise ValueError("stroke_weight must be >= 0")
        if self.font_size is not None and self.font_size <= 0:
            raise ValueError("font_size must be > 0")

    def to_json_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "name": serialize_full_name(self.name),
            "variant_properties": dict(self.variant_properties),
            "height": self.height,
            "width": self.width,
            "x": self.x,
            "y": self.y,
        }
        for key in _COLOR_KEYS:
            value = getattr(self, key)
            if value is not None:
                doc[key] = value.to_json_dict()
        for key in ("stroke_weight", "font_weight", "font_size", "border_radius"):
            value = getattr(self, key)
            if value is not None:
                doc[key] = value
        if self.font_family is not None:
            doc["font_family"] = self.font_family
        if self.effect is not None:
            doc["effect"] = self.effect.to_json_dict()
        return doc

    @classmethod
    def from_json_dict(cls, data: Mapping[str, Any]) -> "FlatComponentSpec":
        kwargs: dict[str, Any] = {
            "name": parse_full_name(data["name"]),
            "variant_properties": dict(data.get("variant_properties", {})),
            "height": data["height"],
            "width": data["width"],
            "x": data.get("x", 0.0),
            "y": data.get("y", 0.0),
        }
        for key in _COLOR_KEYS:
            if key in data:
                kwargs[key] = ColorValue.from_json_dict(data[key])
        for key in ("stroke_weight", "font_weight", "font_size", "border_radius"):
            if key in data:
                kwargs[key] = data[key]
        if "font_family" in data:
            kwargs["font_family"] = data["font_family"]
        if "effect" in data:
            kwargs["effect"] = EffectSpec.from_json_dict(data["effect"])
        return cls(**kwargs)

    def to_canonical_json(self) -> str:
        return canonical_dumps(self.to_json_dict())


class NodeKind(Enum):
    """Node kinds in the nested representation."""

    FRAME = "Frame"
    AUTO_LAYOUT = "AutoLayout"
    GROUP = "Group"
    TEXT = "Text"
    VECTOR = "Vector"

    @classmethod
    def parse(cls, raw: str) -> "NodeKind":
        for kind in cls:
            if kind.value == raw:
                return kind
        raise ValueError(f"unknown node kind: {raw!r}")


# Kinds that may carry children; Text and Vector are always leaves.
GROUPING_KINDS: frozenset[NodeKind] = frozenset(
    {NodeKind.FRAME, NodeKind.AUTO_LAYOUT, NodeKind.GROUP}
)

NESTED_REQUIRED_KEYS: frozenset[str] = frozenset(
    {"kind", "name", "height", "width", "x", "y", "children"}
)

NESTED_KEYS: frozenset[str] = frozenset(FLAT_KEYS) - {"variant_properties"} | {"kind", "children"}


@dataclass(frozen=True)
class NestedNode:
    """One node of the recursive tree mirroring the Figma hierarchy.

    Children are stored as a tuple, so a constructed tree is immutable and
    necessarily acyclic. Leaf kinds (Text, Vector) reject children.
    """

    kind: NodeKind
    name: str
    height: float
    width: float
    x: float = 0.0
    y: float = 0.0
    color: ColorValue | None = None
    stroke_color: ColorValue | None = None
    stroke_weight: float | None = None
    text_color: ColorValue | None = None
    font_family: str | None = None
    font_weight: float | None = None
    font_size: float | None = None
    effect: EffectSpec | None = None
    border_radius: float | None = None
    children: tuple["NestedNode", ...] = ()

    def __post_init__(self) -> None:
        for key in ("height", "width", "x", "y"):
            object.__setattr__(self, key, norm_number(getattr(self, key)))
        for key in ("stroke_weight", "font_weight", "font_size", "border_radius"):
            value = getattr(self, key)
            if value is not None:
                object.__setattr__(self, key, norm_number(value))
        object.__setattr__(self, "children", tuple(self.children))
        if self.kind not in GROUPING_KINDS and self.children:
            raise ValueError(f"{self.kind.value} nodes are leaves and cannot have children")

    def walk(self) -> Iterator["NestedNode"]:
        """Yield this node and all descendants in pre-order."""
        yield self
        for child in self.children:
            yield from child.walk()

    def node_count(self) -> int:
        return sum(1 for _ in self.walk())

    def to_json_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "kind": self.kind.value,
            "name": self.name,
            "height": self.height,
            "width": self.width,
            "x": self.x,
            "y": self.y,
        }
        for key in _COLOR_KEYS:
            value = getattr(self, key)
            if value is not None:
                doc[key] = value.to_json_dict()
        for key in ("stroke_weight", "font_weight", "font_size", "border_radius"):
            value = getattr(self, key)
            if value is not None:
                doc[key] = value
        if self.font_family is not None:
            doc["font_family"] = self.font_family
        if self.effect is not None:
            doc["effect"] = self.effect.to_json_dict()
        doc["children"] = [child.to_json_dict() for child in self.children]
        return doc

    @classmethod
    def from_json_dict(cls, data: Mapping[str, Any]) -> "NestedNode":
        kwargs: dict[str, Any] = {
            "kind": NodeKind.parse(data["kind"]),
            "name": data["name"],
            "height": data["height"],
            "width": data["width"],
            "x": data.get("x", 0.0),
            "y": data.get("y", 0.0),
            "children": tuple(
                cls.from_json_dict(child) for child in data.get("children", ())
            ),
        }
        for key in _COLOR_KEYS:
            if key in data:
                kwargs[key] = ColorValue.from_json_dict(data[key])
        for key in ("stroke_weight", "font_weight", "font_size", "border_radius"):
            if key in data:
                kwargs[key] = data[key]
        if "font_family" in data:
            kwargs["font_family"] = data["font_family"]
        if "effect" in data:
            kwargs["effect"] = EffectSpec.from_json_dict(data["effect"])
        return cls(**kwargs)

    def to_canonical_json(self) -> str:
        return canonical_dumps(self.to_json_dict())


# Property names allowed in ComponentIntent.explicit_properties.
INTENT_PROPERTY_KEYS: frozenset[str] = frozenset(FLAT_KEYS) - {"name", "variant_properties"} | {"size"}


@dataclass(frozen=True)
class ComponentIntent:
    """Parsed meaning of a textual prompt."""

    kind: ComponentKind
    style: StyleTheme
    subtype: str | None = None
    explicit_properties: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "explicit_properties", dict(self.explicit_properties))
        unknown = set(self.explicit_properties) - INTENT_PROPERTY_KEYS
        if unknown:
            raise ValueError(f"unknown intent properties: {sorted(unknown)}")


def summarize_nested(node: NestedNode) -> FlatComponentSpec:
    """Derive a flat view of a nested tree whose root name follows the naming convention.

    Used when a flat property bundle is needed (prompt synthesis, adapters)
    but only the nested form is at hand. Font fields come from the first
    Text descendant; variant properties are not recoverable and stay empty.
    """
    name = parse_full_name(node.name)
    text = next((n for n in node.walk() if n.kind is NodeKind.TEXT), None)
    return FlatComponentSpec(
        name=name,
        height=node.height,
        width=node.width,
        x=node.x,
        y=node.y,
        color=node.color,
        stroke_color=node.stroke_color,
        stroke_weight=node.stroke_weight,
        text_color=text.text_color if text else None,
        font_family=text.font_family if text else None,
        font_weight=text.font_weight if text else None,
        font_size=text.font_size if text else None,
        effect=node.effect,
        border_radius=node.border_radius,
    )
