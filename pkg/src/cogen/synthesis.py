"""Rule-based prompt generation and JSON-prompt dataset construction.

Each component spec is verbalized through a small template inventory; the
wording is chosen by a seeded RNG so a corpus gets varied surface forms
while staying fully reproducible. Every phrase the templates can emit is
known to the prompt grammar, so synthesized prompts always parse back.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Sequence

from .model import (
    CogenError,
    ComponentIntent,
    ComponentKind,
    EmptyInputError,
    FlatComponentSpec,
    NestedNode,
    StyleTheme,
    canonical_dumps,
    summarize_nested,
)


class NoApplicableTemplateError(CogenError):
    """No template fits the requested property count (defensive; the shipped
    inventory always has a kind-only fallback)."""


@dataclass(frozen=True)
class PromptTemplate:
    """A surface pattern with {style}/{kind}/{props} slots."""

    template_id: str
    arity: int
    pattern: str

    def render(self, style: str, kind: str, props: Sequence[str]) -> str:
        return self.pattern.format(style=style, kind=kind, props=" and ".join(props))


# Ordered inventory; selection indexes into the per-arity sublist with a
# seeded RNG, so this order is part of the deterministic contract.
TEMPLATES: tuple[PromptTemplate, ...] = (
    PromptTemplate("create_plain", 0, "Create a {style} {kind}"),
    PromptTemplate("generate_plain", 0, "Generate a {style} {kind}"),
    PromptTemplate("make_plain", 0, "Make a {style} {kind}"),
    PromptTemplate("create_with", 1, "Create a {style} {kind} with {props}"),
    PromptTemplate("generate_with", 1, "Generate a {style} {kind} with {props}"),
    PromptTemplate("make_has", 1, "Make a {style} {kind} that has {props}"),
    PromptTemplate("create_with_2", 2, "Create a {style} {kind} with {props}"),
    PromptTemplate("generate_with_2", 2, "Generate a {style} {kind} with {props}"),
    PromptTemplate("make_has_2", 2, "Make a {style} {kind} that has {props}"),
)

# Optional properties a prompt may mention, and the cap per prompt.
MENTION_CANDIDATES: tuple[str, ...] = ("border_radius", "size", "effect", "stroke_weight")
MAX_MENTIONS = 2

_EFFECT_PHRASES = {
    "DROP_SHADOW": "drop shadow",
    "INNER_SHADOW": "inner shadow",
    "LAYER_BLUR": "layer blur",
    "BACKGROUND_BLUR": "background blur",
}


def _number_text(value: float) -> str:
    return str(float(value))


def _mention_candidates(spec: FlatComponentSpec) -> list[tuple[str, Any]]:
    found: list[tuple[str, Any]] = []
    if spec.border_radius is not None:
        found.append(("border_radius", spec.border_radius))
    size = next(
        (v for k, v in spec.variant_properties.items() if k.lower() == "size"),
        None,
    )
    if size is not None and size.lower() in ("small", "large"):
        found.append(("size", size.lower()))
    if spec.effect is not None and spec.effect.effect_name in _EFFECT_PHRASES:
        found.append(("effect", spec.effect.effect_name))
    if spec.stroke_weight is not None:
        found.append(("stroke_weight", spec.stroke_weight))
    return found


def _verbalize(key: str, value: Any) -> str:
    if key == "border_radius":
        return f"a border radius of {_number_text(value)}"
    if key == "stroke_weight":
        return f"a stroke weight of {_number_text(value)}"
    if key == "size":
        return f"a size of {value}"
    if key == "effect":
        return f"a {_EFFECT_PHRASES[value]} effect"
    raise ValueError(f"no verbalization for property {key!r}")


@dataclass(frozen=True)
class SynthesizedPrompt:
    """A rendered prompt plus the properties it chose to mention."""

    text: str
    template_id: str
    mentions: tuple[tuple[str, Any], ...]


def synthesize(spec: FlatComponentSpec, seed: int) -> SynthesizedPrompt:
    """Deterministically render one prompt for a spec.

    The kind is always mentioned, the style always accompanies it, and up to
    MAX_MENTIONS of the spec's present optional properties are verbalized.
    """
    rng = random.Random(seed)
    candidates = _mention_candidates(spec)
    if len(candidates) > MAX_MENTIONS:
        mentions = rng.sample(candidates, MAX_MENTIONS)
    else:
        mentions = candidates
    applicable = [t for t in TEMPLATES if t.arity == len(mentions)]
    if not applicable:
        raise NoApplicableTemplateError(f"no template with arity {len(mentions)}")
    template = applicable[rng.randrange(len(applicable))]
    text = template.render(
        style=spec.name.style.value,
        kind=spec.name.kind.display,
        props=[_verbalize(k, v) for k, v in mentions],
    )
    return SynthesizedPrompt(text=text, template_id=template.template_id, mentions=tuple(mentions))


def synthesize_prompt(spec: FlatComponentSpec, seed: int) -> str:
    """Prompt text only; see :func:`synthesize`."""
    return synthesize(spec, seed).text


@dataclass(frozen=True)
class DatasetRecord:
    """One JSON-prompt pair with its train/val/test tag."""

    json: dict[str, Any]
    prompt: str
    split: str

    def to_json_line(self) -> str:
        return canonical_dumps({"json": self.json, "prompt": self.prompt, "split": self.split})


def build_dataset(
    specs: Sequence[FlatComponentSpec | NestedNode],
    seed: int = 0,
    split_ratios: tuple[float, float, float] = (0.8, 0.1, 0.1),
    variants: int = 1,
) -> list[DatasetRecord]:
    """Pair every spec with synthesized prompts and split deterministically.

    Produces ``variants`` records per spec (each with a different derived
    seed), shuffles them with the master seed, and tags train/val/test by
    position. Same inputs and seed give byte-identical output.
    """
    if not specs:
        raise EmptyInputError("no specs to build a dataset from")
    if abs(sum(split_ratios) - 1.0) > 1e-9:
        raise ValueError(f"split ratios must sum to 1, got {split_ratios}")
    if variants < 1:
        raise ValueError("variants must be >= 1")

    records: list[tuple[dict[str, Any], str]] = []
    for index, spec in enumerate(specs):
        if isinstance(spec, NestedNode):
            flat = summarize_nested(spec)
            doc = spec.to_json_dict()
        else:
            flat = spec
            doc = spec.to_json_dict()
        for variant in range(variants):
            record_seed = seed * 1_000_003 + index * 101 + variant
            records.append((doc, synthesize_prompt(flat, record_seed)))

    rng = random.Random(seed)
    rng.shuffle(records)

    total = len(records)
    n_train = int(total * split_ratios[0])
    n_val = int(total * split_ratios[1])
    out: list[DatasetRecord] = []
    for position, (doc, prompt) in enumerate(records):
        if position < n_train:
            split = "train"
        elif position < n_train + n_val:
            split = "val"
        else:
            split = "test"
        out.append(DatasetRecord(json=doc, prompt=prompt, split=split))
    return out


def write_jsonl(records: Iterable[DatasetRecord], path: str | Path) -> int:
    """Write records as JSONL; returns the record count."""
    count = 0
    with open(path, "w", encoding="utf-8") as handle:
        for record in records:
            handle.write(record.to_json_line() + "\n")
            count += 1
    return count


_FUZZ_EFFECTS = tuple(_EFFECT_PHRASES)


def fuzz_specs(
    count: int,
    seed: int = 0,
    presets: Any = None,
    schema: str = "flat",
) -> list[FlatComponentSpec | NestedNode]:
    """Deterministic synthetic corpus spanning all kinds, styles, and
    mentionable properties; the raw material for datasets and round-trip
    checks."""
    from .emitter import emit_flat, emit_nested

    if count < 1:
        raise EmptyInputError("count must be >= 1")
    if schema not in ("flat", "nested"):
        raise ValueError(f"schema must be 'flat' or 'nested', got {schema!r}")
    rng = random.Random(seed)
    kinds = list(ComponentKind)
    styles = list(StyleTheme)
    specs: list[FlatComponentSpec | NestedNode] = []
    for index in range(count):
        # Cycle kind and style for even coverage; fuzz the properties.
        kind = kinds[index % len(kinds)]
        style = styles[(index // len(kinds)) % len(styles)]
        props: dict[str, Any] = {}
        if rng.random() < 0.5:
            props["border_radius"] = round(rng.uniform(0.0, 32.0), 1)
        if rng.random() < 0.4:
            props["size"] = rng.choice(["small", "large"])
        if rng.random() < 0.3:
            props["effect"] = rng.choice(_FUZZ_EFFECTS)
        if rng.random() < 0.3:
            props["stroke_weight"] = round(rng.uniform(0.5, 6.0), 1)
        intent = ComponentIntent(kind=kind, style=style, explicit_properties=props)
        if schema == "nested":
            specs.append(emit_nested(intent, presets))
        else:
            specs.append(emit_flat(intent, presets))
    return specs


def read_jsonl(path: str | Path) -> list[DatasetRecord]:
    records = []
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line:
                continue
            data = json.loads(line)
            records.append(
                DatasetRecord(json=data["json"], prompt=data["prompt"], split=data.get("split", "train"))
            )
    return records
