"""Bidirectional translation between textual commands and Figma-compatible
UI component JSON."""

from .adapters import (
    Adapter,
    AdapterError,
    AdapterTimeoutError,
    DescriberAdapter,
    Direction,
    ExternalAdapter,
    GenerationRequest,
    GeneratorAdapter,
    ProtocolError,
    SpawnError,
    make_adapter,
)
from .emitter import (
    InvalidCharacterError,
    JsonSyntaxError,
    PluginInstruction,
    SchemaViolationError,
    StylePresetTable,
    ValidationError,
    default_presets,
    emit_flat,
    emit_nested,
    instructions_to_json,
    load_presets,
    map_to_figma,
    serialize_instructions,
    validate_json,
)
from .figma import (
    AuthError,
    DepthLimitExceededError,
    FigmaApiError,
    FigmaClient,
    MalformedDocumentError,
    MissingGeometryError,
    NotFoundError,
    RateLimitedError,
    RawDocument,
    TransportError,
    extract_flat,
    extract_nested,
    find_component_sets,
    load_file,
    parse_variant_name,
)
from .grammar import (
    Lexicon,
    NoComponentKindError,
    default_lexicon,
    load_lexicon,
    parse_intent,
    tokenize,
)
from .metrics import (
    ClassificationReport,
    CriterionResult,
    EvalReport,
    InsufficientDataError,
    UnparseablePromptError,
    WrongSuiteShapeError,
    bleu,
    classification_report,
    component_name_accuracy,
    rouge_l,
    rouge_n,
    subset_eval,
    success_rate_score,
    success_rate_table,
)
from .model import (
    CogenError,
    ColorValue,
    ComponentIntent,
    ComponentKind,
    EffectSpec,
    EmptyInputError,
    FlatComponentSpec,
    FullComponentName,
    NestedNode,
    NodeKind,
    StyleTheme,
    canonical_dumps,
    parse_full_name,
    serialize_full_name,
    summarize_nested,
)
from .synthesis import (
    DatasetRecord,
    PromptTemplate,
    SynthesizedPrompt,
    build_dataset,
    fuzz_specs,
    read_jsonl,
    synthesize,
    synthesize_prompt,
    write_jsonl,
)

__version__ = "0.1.0"
