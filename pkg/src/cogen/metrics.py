"""Evaluation metrics and protocols for the translation engine.

BLEU and ROUGE for prompt quality, support-weighted classification metrics
for component-name identification, subset sweeps over growing sample sizes,
and the four-criterion success-rate scorer for generated JSON. All metrics
are hand-rolled on one shared tokenizer so scores stay comparable.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass
from statistics import fmean
from typing import Any, Mapping, Sequence

from .adapters import Adapter, AdapterError, Direction, GenerationRequest
from .emitter import SIZE_SCALE, StylePresetTable, ValidationError, default_presets, validate_json
from .grammar import Lexicon, NoComponentKindError, default_lexicon, first_kind_token, parse_intent, tokenize
from .model import (
    FLAT_REQUIRED_KEYS,
    NESTED_REQUIRED_KEYS,
    CogenError,
    ColorValue,
    ComponentKind,
    EmptyInputError,
    FullNameError,
    canonical_dumps,
    norm_number,
    parse_full_name,
)
from .synthesis import DatasetRecord

logger = logging.getLogger(__name__)

BLEU_EPSILON = 1e-9
BLEU_MAX_N = 4
DEFAULT_SUBSET_SIZES = (100, 200, 300, 400, 500)
SUITE_SIZE = 5


class InsufficientDataError(CogenError):
    """Dataset smaller than the largest requested subset."""


class WrongSuiteShapeError(CogenError):
    """Success-rate suite is empty or has the wrong prompts-per-kind count."""


class UnparseablePromptError(CogenError):
    """Success-rate scoring needs a prompt the grammar can parse."""


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def bleu(
    candidate: str,
    references: Sequence[str],
    max_n: int = BLEU_MAX_N,
    lexicon: Lexicon | None = None,
) -> float:
    """Sentence BLEU: clipped n-gram precisions, brevity penalty, epsilon floor.

    Zero precisions are floored at 1e-9 instead of zeroing the whole score,
    so short texts still compare meaningfully.
    """
    lexicon = lexicon or default_lexicon()
    cand = tokenize(candidate, lexicon)
    refs = [tokenize(reference, lexicon) for reference in references]
    if not cand or not refs or any(not r for r in refs):
        raise EmptyInputError("bleu needs a nonempty candidate and references")

    log_sum = 0.0
    for n in range(1, max_n + 1):
        counts = _ngrams(cand, n)
        total = sum(counts.values())
        clipped = 0
        if total:
            max_ref_counts: Counter = Counter()
            for ref in refs:
                for gram, count in _ngrams(ref, n).items():
                    if count > max_ref_counts[gram]:
                        max_ref_counts[gram] = count
            clipped = sum(min(count, max_ref_counts[gram]) for gram, count in counts.items())
        precision = clipped / total if total and clipped else BLEU_EPSILON
        log_sum += math.log(precision)

    cand_len = len(cand)
    # Closest reference length; ties favor the shorter reference.
    ref_len = min((abs(len(r) - cand_len), len(r)) for r in refs)[1]
    brevity = 1.0 if cand_len > ref_len else math.exp(1.0 - ref_len / cand_len)
    return brevity * math.exp(log_sum / max_n)


def rouge_n(
    candidate: str,
    reference: str,
    n: int = 1,
    lexicon: Lexicon | None = None,
) -> dict[str, float]:
    """ROUGE-N: clipped n-gram overlap precision/recall/F1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    lexicon = lexicon or default_lexicon()
    cand = _ngrams(tokenize(candidate, lexicon), n)
    ref = _ngrams(tokenize(reference, lexicon), n)
    cand_total = sum(cand.values())
    ref_total = sum(ref.values())
    if not cand_total or not ref_total:
        return {"precision": 0.0, "recall": 0.0, "f1": 0.0}
    overlap = sum(min(count, ref[gram]) for gram, count in cand.items())
    precision = overlap / cand_total
    recall = overlap / ref_total
    f1 = 2 * precision * recall / (precision + recall) if overlap else 0.0
    return {"precision": precision, "recall": recall, "f1": f1}


def _lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    if not a or not b:
        return 0
    previous = [0] * (len(b) + 1)
    for token in a:
        current = [0]
        for j, other in enumerate(b, start=1):
            if token == other:
                current.append(previous[j - 1] + 1)
            else:
                current.append(max(previous[j], current[j - 1]))
        previous = current
    return previous[-1]


def rouge_l(candidate: str, reference: str, lexicon: Lexicon | None = None) -> dict[str, float]:
    """ROUGE-L: longest-common-subsequence precision/recall/F1."""
    lexicon = lexicon or default_lexicon()
    cand = tokenize(candidate, lexicon)
    ref = tokenize(reference, lexicon)
    if not cand or not ref:
        return {"precision": 0.0, "recall": 0.0, "f1": 0.0}
    lcs = _lcs_length(cand, ref)
    precision = lcs / len(cand)
    recall = lcs / len(ref)
    f1 = 2 * precision * recall / (precision + recall) if lcs else 0.0
    return {"precision": precision, "recall": recall, "f1": f1}


@dataclass(frozen=True)
class ClassificationReport:
    """Support-weighted multi-class metrics.

    Under weighted averaging of single-label classification, recall equals
    accuracy; the averaging convention is recorded so reports are
    self-describing.
    """

    accuracy: float
    precision: float
    recall: float
    f1: float
    support: Mapping[str, int]
    per_class: Mapping[str, Mapping[str, float]]
    averaging: str = "weighted"

    def __post_init__(self) -> None:
        for name in ("accuracy", "precision", "recall", "f1"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} out of [0,1]: {value}")

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "support": dict(self.support),
            "per_class": {k: dict(v) for k, v in self.per_class.items()},
            "averaging": self.averaging,
        }


def classification_report(pairs: Sequence[tuple[str, str]]) -> ClassificationReport:
    """Build a report from (predicted label, gold label) pairs."""
    if not pairs:
        raise EmptyInputError("no classification pairs")
    labels = sorted({gold for _, gold in pairs} | {pred for pred, _ in pairs})
    total = len(pairs)
    correct = sum(1 for pred, gold in pairs if pred == gold)

    support: dict[str, int] = {}
    per_class: dict[str, dict[str, float]] = {}
    weighted = {"precision": 0.0, "recall": 0.0, "f1": 0.0}
    for label in labels:
        tp = sum(1 for pred, gold in pairs if pred == label and gold == label)
        fp = sum(1 for pred, gold in pairs if pred == label and gold != label)
        fn = sum(1 for pred, gold in pairs if pred != label and gold == label)
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        count = tp + fn
        support[label] = count
        per_class[label] = {"precision": precision, "recall": recall, "f1": f1, "support": count}
        weighted["precision"] += precision * count
        weighted["recall"] += recall * count
        weighted["f1"] += f1 * count

    return ClassificationReport(
        accuracy=correct / total,
        precision=weighted["precision"] / total,
        recall=weighted["recall"] / total,
        f1=weighted["f1"] / total,
        support=support,
        per_class=per_class,
    )


def component_name_accuracy(
    pairs: Sequence[tuple[str, ComponentKind]],
    lexicon: Lexicon | None = None,
) -> ClassificationReport:
    """Grade component-kind identification on generated text.

    The predicted kind is the first kind token the lexicon finds in the
    text; texts without one land in a distinct "none" class.
    """
    if not pairs:
        raise EmptyInputError("no (text, kind) pairs")
    lexicon = lexicon or default_lexicon()
    labeled = []
    for text, gold in pairs:
        predicted = first_kind_token(text, lexicon)
        labeled.append((predicted.value if predicted else "none", gold.value))
    return classification_report(labeled)


@dataclass(frozen=True)
class CriterionResult:
    """Binary outcome of the four success criteria for one prompt."""

    properties_pass: bool
    kind_pass: bool
    style_pass: bool
    keys_pass: bool

    @property
    def success_rate(self) -> float:
        passed = sum((self.properties_pass, self.kind_pass, self.style_pass, self.keys_pass))
        return 0.25 * passed

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "properties_pass": self.properties_pass,
            "kind_pass": self.kind_pass,
            "style_pass": self.style_pass,
            "keys_pass": self.keys_pass,
            "success_rate": self.success_rate,
        }


def _color_close(document_value: Any, expected: ColorValue) -> bool:
    if not isinstance(document_value, Mapping):
        return False
    tolerance = 1 / 255 + 1e-9
    return all(
        abs(float(document_value.get(channel, -1.0)) - getattr(expected, channel)) <= tolerance
        for channel in ("r", "g", "b", "a")
    )


def _property_satisfied(
    document: Mapping[str, Any],
    nested: bool,
    key: str,
    value: Any,
    intent_style: Any,
    intent_kind: Any,
    presets: StylePresetTable,
) -> bool:
    if key == "size":
        scale = SIZE_SCALE[value]
        if nested:
            base = presets.get(intent_style, intent_kind)
            return (
                abs(float(document.get("height", -1.0)) - base["height"] * scale) < 0.01
                and abs(float(document.get("width", -1.0)) - base["width"] * scale) < 0.01
            )
        variants = document.get("variant_properties", {})
        stated = next((v for k, v in variants.items() if k.lower() == "size"), "")
        return stated.lower() == value
    if key == "effect":
        effect = document.get("effect")
        return isinstance(effect, Mapping) and effect.get("effect_name") == value
    if key in ("color", "stroke_color", "text_color"):
        return _color_close(document.get(key), value)
    if key == "font_family":
        return document.get(key) == value
    stated = document.get(key)
    if not isinstance(stated, (int, float)):
        return False
    return abs(float(stated) - norm_number(value)) <= 1e-6


def success_rate_score(
    prompt: str,
    generated: str | Mapping[str, Any],
    dataset_keys: frozenset[str] | None = None,
    presets: StylePresetTable | None = None,
    lexicon: Lexicon | None = None,
) -> CriterionResult:
    """Score one generated document against its prompt on four criteria.

    Each criterion is binary and worth 0.25: mentioned properties landed
    with their stated values, component kind matches, style matches, and
    the document carries the dataset's required keys.
    """
    lexicon = lexicon or default_lexicon()
    presets = presets if presets is not None else default_presets()
    try:
        intent = parse_intent(prompt, lexicon)
    except NoComponentKindError as exc:
        raise UnparseablePromptError(str(exc)) from exc
    if isinstance(generated, str):
        document, _ = validate_json(generated)
    else:
        document = generated

    nested = "kind" in document
    try:
        name = parse_full_name(document.get("name", ""))
    except FullNameError:
        name = None

    kind_pass = name is not None and name.kind is intent.kind
    style_pass = name is not None and name.style is intent.style
    required = dataset_keys if dataset_keys is not None else (
        NESTED_REQUIRED_KEYS if nested else FLAT_REQUIRED_KEYS
    )
    keys_pass = set(document.keys()) >= set(required)
    properties_pass = all(
        _property_satisfied(document, nested, key, value, intent.style, intent.kind, presets)
        for key, value in intent.explicit_properties.items()
    )
    return CriterionResult(
        properties_pass=properties_pass,
        kind_pass=kind_pass,
        style_pass=style_pass,
        keys_pass=keys_pass,
    )


def success_rate_table(
    suite: Mapping[str, Sequence[str]],
    adapter: Adapter,
    dataset_keys: frozenset[str] | None = None,
    presets: StylePresetTable | None = None,
    lexicon: Lexicon | None = None,
) -> dict[str, dict[str, float]]:
    """Run a 5-prompts-per-kind suite through an adapter and tally rates.

    ``pass`` is the summed per-prompt success rate on a 0..5 scale, ``fail``
    its complement, and ``rate`` the fraction passed. Generation or
    validation failures score 0 for that prompt.
    """
    if not suite or any(len(prompts) != SUITE_SIZE for prompts in suite.values()):
        raise WrongSuiteShapeError(f"suite must map each kind to exactly {SUITE_SIZE} prompts")
    table: dict[str, dict[str, float]] = {}
    for kind_label, prompts in suite.items():
        passed = 0.0
        for prompt in prompts:
            try:
                generated = adapter.generate(
                    GenerationRequest(direction=Direction.PROMPT_TO_JSON, input=prompt)
                )
                passed += success_rate_score(
                    prompt, generated, dataset_keys=dataset_keys, presets=presets, lexicon=lexicon
                ).success_rate
            except (AdapterError, ValidationError) as exc:
                logger.warning("prompt %r scored 0: %s", prompt, exc)
        table[kind_label] = {
            "pass": passed,
            "fail": SUITE_SIZE - passed,
            "rate": passed / SUITE_SIZE,
        }
    return table


@dataclass(frozen=True)
class EvalReport:
    """Per-size metric rows plus the conventions that produced them."""

    direction: str
    rows: tuple[Mapping[str, Any], ...]
    metadata: Mapping[str, Any]

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "direction": self.direction,
            "rows": [dict(row) for row in self.rows],
            "metadata": dict(self.metadata),
        }

    def to_json(self) -> str:
        return canonical_dumps(self.to_json_dict())

    def to_text_table(self) -> str:
        columns = ["size", "accuracy", "precision", "recall", "f1", "bleu", "rouge_1", "rouge_2", "rouge_l"]
        widths = {c: max(len(c), 9) for c in columns}
        lines = ["  ".join(c.rjust(widths[c]) for c in columns)]
        for row in self.rows:
            cells = [str(row["size"]).rjust(widths["size"])]
            cells += [f"{row[c]:.4f}".rjust(widths[c]) for c in columns[1:]]
            lines.append("  ".join(cells))
        return "\n".join(lines)


def _gold_kind(record: DatasetRecord, lexicon: Lexicon) -> ComponentKind | None:
    try:
        return parse_full_name(record.json.get("name", "")).kind
    except FullNameError:
        return first_kind_token(record.prompt, lexicon)


def subset_eval(
    dataset: Sequence[DatasetRecord],
    adapter: Adapter,
    sizes: Sequence[int] = DEFAULT_SUBSET_SIZES,
    direction: Direction = Direction.JSON_TO_PROMPT,
    lexicon: Lexicon | None = None,
) -> EvalReport:
    """Evaluate an adapter on growing prefixes of a dataset.

    Record order is stable, so each subset extends the previous one and the
    whole sweep is reproducible for deterministic adapters.
    """
    lexicon = lexicon or default_lexicon()
    sizes = list(sizes)
    if not sizes:
        raise ValueError("sizes must be nonempty")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError(f"sizes must be strictly ascending, got {sizes}")
    if len(dataset) < sizes[-1]:
        raise InsufficientDataError(
            f"dataset has {len(dataset)} records, need {sizes[-1]}"
        )

    candidates: list[str] = []
    references: list[str] = []
    golds: list[ComponentKind | None] = []
    for record in dataset[: sizes[-1]]:
        if direction is Direction.JSON_TO_PROMPT:
            request_input = canonical_dumps(record.json)
            reference = record.prompt
        else:
            request_input = record.prompt
            reference = canonical_dumps(record.json)
        try:
            candidate = adapter.generate(GenerationRequest(direction=direction, input=request_input))
        except AdapterError as exc:
            logger.warning("generation failed, scoring empty output: %s", exc)
            candidate = ""
        candidates.append(candidate)
        references.append(reference)
        golds.append(_gold_kind(record, lexicon))

    rows = []
    for size in sizes:
        labeled = []
        bleu_scores = []
        rouge_scores = {"rouge_1": [], "rouge_2": [], "rouge_l": []}
        for candidate, reference, gold in zip(candidates[:size], references[:size], golds[:size]):
            predicted = first_kind_token(candidate, lexicon)
            labeled.append((predicted.value if predicted else "none", gold.value if gold else "none"))
            try:
                bleu_scores.append(bleu(candidate, [reference], lexicon=lexicon))
            except EmptyInputError:
                bleu_scores.append(0.0)
            rouge_scores["rouge_1"].append(rouge_n(candidate, reference, 1, lexicon)["f1"])
            rouge_scores["rouge_2"].append(rouge_n(candidate, reference, 2, lexicon)["f1"])
            rouge_scores["rouge_l"].append(rouge_l(candidate, reference, lexicon)["f1"])
        report = classification_report(labeled)
        rows.append(
            {
                "size": size,
                "accuracy": round(report.accuracy, 6),
                "precision": round(report.precision, 6),
                "recall": round(report.recall, 6),
                "f1": round(report.f1, 6),
                "bleu": round(fmean(bleu_scores), 6),
                "rouge_1": round(fmean(rouge_scores["rouge_1"]), 6),
                "rouge_2": round(fmean(rouge_scores["rouge_2"]), 6),
                "rouge_l": round(fmean(rouge_scores["rouge_l"]), 6),
            }
        )

    return EvalReport(
        direction=direction.value,
        rows=tuple(rows),
        metadata={
            "smoothing": f"epsilon-{BLEU_EPSILON}",
            "averaging": "weighted",
            "tokenizer": "lexicon",
            "bleu_max_n": BLEU_MAX_N,
            "sizes": sizes,
        },
    )
