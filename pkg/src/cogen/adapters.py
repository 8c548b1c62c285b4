"""Uniform text-to-text adapter contract over the translation engine.

The evaluation harness only ever sees this interface, so the deterministic
built-in engine and external processes (e.g. neural models behind a small
wrapper script) are interchangeable.
"""

from __future__ import annotations

import json
import logging
import queue
import shlex
import subprocess
import threading
import zlib
from dataclasses import dataclass
from enum import Enum

from .emitter import (
    StylePresetTable,
    ValidationError,
    default_presets,
    emit_flat,
    emit_nested,
)
from .grammar import Lexicon, NoComponentKindError, default_lexicon, parse_intent
from .model import (
    CogenError,
    FlatComponentSpec,
    NestedNode,
    summarize_nested,
)
from .synthesis import synthesize_prompt
from . import emitter

DEFAULT_MAX_LENGTH = 4096
DEFAULT_TIMEOUT = 10.0

logger = logging.getLogger(__name__)


class AdapterError(CogenError):
    """Generation failed; wraps the underlying parse/validation error."""


class SpawnError(AdapterError):
    """External adapter command could not be started."""


class ProtocolError(AdapterError):
    """External adapter wrote a line that is not a valid response frame."""


class AdapterTimeoutError(AdapterError, TimeoutError):
    """External adapter did not answer within the deadline."""


class Direction(Enum):
    """Which way a request translates."""

    JSON_TO_PROMPT = "json_to_prompt"
    PROMPT_TO_JSON = "prompt_to_json"

    @classmethod
    def parse(cls, raw: str) -> "Direction":
        for direction in cls:
            if direction.value == raw:
                return direction
        raise ValueError(f"unknown direction: {raw!r}")


@dataclass(frozen=True)
class GenerationRequest:
    """One translation request."""

    direction: Direction
    input: str
    max_length: int = DEFAULT_MAX_LENGTH

    def __post_init__(self) -> None:
        if not self.input.strip():
            raise ValueError("request input must be nonempty")
        if self.max_length <= 0:
            raise ValueError("max_length must be positive")


class Adapter:
    """Interface: one generate() call per request."""

    def generate(self, request: GenerationRequest) -> str:
        raise NotImplementedError

    def close(self) -> None:
        pass

    def __enter__(self) -> "Adapter":
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.close()


class DescriberAdapter(Adapter):
    """JSON to prompt: validate the document, then verbalize it.

    Template choice is derived from the seed and a checksum of the input,
    so distinct documents get varied phrasing while runs stay reproducible.
    """

    def __init__(self, seed: int = 0) -> None:
        self.seed = seed

    def generate(self, request: GenerationRequest) -> str:
        if request.direction is not Direction.JSON_TO_PROMPT:
            raise AdapterError("describer only supports json_to_prompt")
        try:
            document, _ = emitter.validate_json(request.input)
            if "kind" in document:
                spec = summarize_nested(NestedNode.from_json_dict(document))
            else:
                spec = FlatComponentSpec.from_json_dict(document)
        except (ValidationError, ValueError, KeyError) as exc:
            raise AdapterError(f"input is not a component document: {exc}") from exc
        record_seed = self.seed ^ zlib.crc32(request.input.encode("utf-8"))
        return synthesize_prompt(spec, record_seed)[: request.max_length]


class GeneratorAdapter(Adapter):
    """Prompt to JSON: parse the intent, then emit a component document."""

    def __init__(
        self,
        schema: str = "flat",
        presets: StylePresetTable | None = None,
        lexicon: Lexicon | None = None,
    ) -> None:
        if schema not in ("flat", "nested"):
            raise ValueError(f"schema must be 'flat' or 'nested', got {schema!r}")
        self.schema = schema
        self.presets = presets if presets is not None else default_presets()
        self.lexicon = lexicon if lexicon is not None else default_lexicon()

    def generate(self, request: GenerationRequest) -> str:
        if request.direction is not Direction.PROMPT_TO_JSON:
            raise AdapterError("generator only supports prompt_to_json")
        try:
            intent = parse_intent(request.input, self.lexicon)
        except NoComponentKindError as exc:
            raise AdapterError(str(exc)) from exc
        if self.schema == "nested":
            return emit_nested(intent, self.presets).to_canonical_json()[: request.max_length]
        return emit_flat(intent, self.presets).to_canonical_json()[: request.max_length]


class ExternalAdapter(Adapter):
    """Adapter speaking a line protocol with a child process.

    One JSON request object per stdin line, one JSON response object per
    stdout line: ``{"output": "..."}`` or ``{"error": "..."}``. A reader
    thread feeds a queue so a silent child turns into a timeout instead of
    a hang. One request is in flight at a time.
    """

    def __init__(self, command: str, timeout: float = DEFAULT_TIMEOUT) -> None:
        self.command = command
        self.timeout = timeout
        self._lock = threading.Lock()
        self._responses: queue.Queue[str | None] = queue.Queue()
        try:
            self._process = subprocess.Popen(
                shlex.split(command),
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                text=True,
                bufsize=1,
            )
        except OSError as exc:
            raise SpawnError(f"cannot start {command!r}: {exc}") from exc
        self._reader = threading.Thread(target=self._pump, daemon=True)
        self._reader.start()

    def _pump(self) -> None:
        assert self._process.stdout is not None
        for line in self._process.stdout:
            self._responses.put(line)
        self._responses.put(None)

    def generate(self, request: GenerationRequest) -> str:
        frame = json.dumps(
            {"direction": request.direction.value, "input": request.input}
        )
        with self._lock:
            if self._process.poll() is not None:
                raise ProtocolError("external adapter process has exited")
            assert self._process.stdin is not None
            try:
                self._process.stdin.write(frame + "\n")
                self._process.stdin.flush()
            except (BrokenPipeError, OSError) as exc:
                raise ProtocolError(f"external adapter pipe closed: {exc}") from exc
            try:
                line = self._responses.get(timeout=self.timeout)
            except queue.Empty:
                raise AdapterTimeoutError(
                    f"no response within {self.timeout}s from {self.command!r}"
                ) from None
        if line is None:
            raise ProtocolError("external adapter closed stdout")
        try:
            response = json.loads(line)
        except ValueError as exc:
            raise ProtocolError(f"non-JSON response line: {line!r}") from exc
        if not isinstance(response, dict):
            raise ProtocolError(f"response frame must be an object: {line!r}")
        if "error" in response:
            raise AdapterError(f"external adapter error: {response['error']}")
        if "output" not in response or not isinstance(response["output"], str):
            raise ProtocolError(f"response frame missing 'output': {line!r}")
        return response["output"][: request.max_length]

    def close(self) -> None:
        if self._process.poll() is None:
            if self._process.stdin is not None:
                try:
                    self._process.stdin.close()
                except OSError:
                    pass
            try:
                self._process.wait(timeout=2)
            except subprocess.TimeoutExpired:
                self._process.kill()
                self._process.wait()


def make_adapter(spec: str, timeout: float = DEFAULT_TIMEOUT) -> Adapter:
    """Build an adapter from a CLI-style spec string.

    ``describer``, ``generator``, ``generator:nested``, or ``exec:<cmd>``.
    """
    if spec == "describer":
        return DescriberAdapter()
    if spec == "generator":
        return GeneratorAdapter(schema="flat")
    if spec == "generator:nested":
        return GeneratorAdapter(schema="nested")
    if spec.startswith("exec:"):
        return ExternalAdapter(spec[len("exec:") :], timeout=timeout)
    raise ValueError(f"unknown adapter spec {spec!r}")
