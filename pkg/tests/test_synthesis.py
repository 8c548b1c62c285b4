from __future__ import annotations

from collections import Counter
from pathlib import Path

import pytest

from cogen.emitter import emit_flat
from cogen.grammar import parse_intent
from cogen.model import (
    ComponentIntent,
    ComponentKind,
    EmptyInputError,
    FlatComponentSpec,
    StyleTheme,
    norm_number,
    parse_full_name,
)
from cogen.synthesis import (
    TEMPLATES,
    build_dataset,
    fuzz_specs,
    read_jsonl,
    synthesize,
    synthesize_prompt,
    write_jsonl,
)


def _professional_button_radius() -> FlatComponentSpec:
    intent = ComponentIntent(
        kind=ComponentKind.BUTTON,
        style=StyleTheme.PROFESSIONAL,
        explicit_properties={"border_radius": 10.0},
    )
    return emit_flat(intent)


def test_seed_zero_prompt_exact() -> None:
    spec = _professional_button_radius()
    assert (
        synthesize_prompt(spec, 0)
        == "Generate a Professional Button with a border radius of 10.0"
    )


def test_kind_only_fallback_template() -> None:
    spec = FlatComponentSpec(name=parse_full_name("Basic/Label"), height=20, width=80)
    for seed in range(10):
        prompt = synthesize_prompt(spec, seed)
        assert prompt in (
            "Create a Basic Label",
            "Generate a Basic Label",
            "Make a Basic Label",
        )


def test_same_seed_same_text() -> None:
    spec = _professional_button_radius()
    assert synthesize_prompt(spec, 42) == synthesize_prompt(spec, 42)


def test_mentions_capped_at_two() -> None:
    intent = ComponentIntent(
        kind=ComponentKind.BUTTON,
        style=StyleTheme.TRENDY,
        explicit_properties={
            "border_radius": 12.0,
            "size": "small",
            "stroke_weight": 2.0,
        },
    )
    spec = emit_flat(intent)
    for seed in range(20):
        assert len(synthesize(spec, seed).mentions) == 2


def test_round_trip_recovers_everything() -> None:
    for index, spec in enumerate(fuzz_specs(100, seed=13)):
        result = synthesize(spec, seed=index)
        intent = parse_intent(result.text)
        assert intent.kind is spec.name.kind, result.text
        assert intent.style is spec.name.style, result.text
        for key, value in result.mentions:
            got = intent.explicit_properties.get(key)
            if key in ("border_radius", "stroke_weight"):
                assert got == norm_number(value), result.text
            else:
                assert got == value, result.text


def test_template_coverage() -> None:
    spec = _professional_button_radius()
    used = {synthesize(spec, seed).template_id for seed in range(60)}
    arity_one = {t.template_id for t in TEMPLATES if t.arity == 1}
    assert used == arity_one


def test_build_dataset_split_arithmetic() -> None:
    records = build_dataset(fuzz_specs(10, seed=1), seed=1)
    counts = Counter(record.split for record in records)
    assert counts == {"train": 8, "val": 1, "test": 1}


def test_build_dataset_deterministic(tmp_path: Path) -> None:
    specs = fuzz_specs(30, seed=2)
    first = tmp_path / "a.jsonl"
    second = tmp_path / "b.jsonl"
    write_jsonl(build_dataset(specs, seed=9), first)
    write_jsonl(build_dataset(specs, seed=9), second)
    assert first.read_bytes() == second.read_bytes()


def test_build_dataset_validates_inputs() -> None:
    with pytest.raises(EmptyInputError):
        build_dataset([], seed=0)
    with pytest.raises(ValueError):
        build_dataset(fuzz_specs(5), split_ratios=(0.5, 0.2, 0.2))
    with pytest.raises(ValueError):
        build_dataset(fuzz_specs(5), variants=0)


def test_build_dataset_variants_multiply_records() -> None:
    records = build_dataset(fuzz_specs(5, seed=4), seed=4, variants=3)
    assert len(records) == 15


def test_jsonl_round_trip(tmp_path: Path) -> None:
    records = build_dataset(fuzz_specs(12, seed=6), seed=6)
    path = tmp_path / "data.jsonl"
    assert write_jsonl(records, path) == 12
    assert read_jsonl(path) == records


def test_nested_specs_allowed() -> None:
    records = build_dataset(fuzz_specs(6, seed=8, schema="nested"), seed=8)
    assert all("children" in record.json for record in records)
    for record in records:
        intent = parse_intent(record.prompt)
        assert intent.kind is parse_full_name(record.json["name"]).kind


def test_fuzz_specs_covers_all_kinds_and_styles() -> None:
    specs = fuzz_specs(24, seed=0)
    assert {s.name.kind for s in specs} == set(ComponentKind)
    assert {s.name.style for s in specs} == set(StyleTheme)


def test_fuzz_specs_deterministic() -> None:
    first = fuzz_specs(40, seed=3)
    second = fuzz_specs(40, seed=3)
    assert first == second


def test_number_rendering_keeps_decimal_point() -> None:
    spec = _professional_button_radius()
    for seed in range(5):
        text = synthesize_prompt(spec, seed)
        assert "10.0" in text
