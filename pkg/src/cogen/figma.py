"""Figma REST access and extraction into flat and nested component forms.

Supports live fetches (with retry/backoff and an on-disk cache) and fully
offline runs against previously cached or hand-authored file dumps. All
extraction operations are pure functions over the parsed file JSON.
"""

from __future__ import annotations

import json
import logging
import os
import random
import tempfile
import threading
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable, Iterator, Mapping

import requests

from .model import (
    CogenError,
    ColorValue,
    EffectSpec,
    FlatComponentSpec,
    FullComponentName,
    FullNameError,
    NestedNode,
    NodeKind,
    parse_full_name,
)

logger = logging.getLogger(__name__)

FIGMA_BASE_URL = "https://api.figma.com"
DEFAULT_DEPTH_LIMIT = 32
MAX_RETRIES = 3


class FigmaApiError(CogenError):
    """Base for REST-layer failures."""


class AuthError(FigmaApiError):
    """Token missing, invalid, or lacking access (401/403)."""


class NotFoundError(FigmaApiError):
    """Unknown file key (404)."""


class RateLimitedError(FigmaApiError):
    """Throttled (429) and retries exhausted."""

    def __init__(self, message: str, retry_after: float | None = None) -> None:
        super().__init__(message)
        self.retry_after = retry_after


class TransportError(FigmaApiError):
    """Network failure, server error, or offline cache miss."""


class MalformedDocumentError(FigmaApiError):
    """Response or file is not a Figma file document."""


class MissingGeometryError(CogenError):
    """Component node lacks an absolute bounding box."""


class DepthLimitExceededError(CogenError):
    """Nested extraction hit the recursion depth cap."""


@dataclass(frozen=True)
class RawDocument:
    """A parsed Figma file response plus retrieval metadata."""

    data: Mapping[str, Any]
    file_key: str
    retrieved_at: str

    def __post_init__(self) -> None:
        if "document" not in self.data:
            raise MalformedDocumentError("missing 'document' root object")


def _now_iso() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


class FigmaClient:
    """File fetcher with retry, backoff, and a replayable disk cache.

    A single client may be shared across threads; the cache manifest is
    lock-guarded so concurrent writers serialize.
    """

    def __init__(
        self,
        token: str = "",
        cache_dir: str | Path | None = None,
        offline: bool = False,
        session: requests.Session | None = None,
        max_retries: int = MAX_RETRIES,
        sleep: Callable[[float], None] = time.sleep,
        rng: random.Random | None = None,
        base_url: str = FIGMA_BASE_URL,
    ) -> None:
        self.token = token
        self.cache_dir = Path(cache_dir) if cache_dir is not None else None
        self.offline = offline
        self.session = session if session is not None else requests.Session()
        self.max_retries = max_retries
        self.base_url = base_url.rstrip("/")
        self._sleep = sleep
        self._rng = rng if rng is not None else random.Random()
        self._cache_lock = threading.Lock()

    def fetch_file(self, file_key: str) -> RawDocument:
        """GET /v1/files/{file_key}, or replay the cache in offline mode."""
        if self.offline:
            cached = self._read_cache(file_key)
            if cached is None:
                raise TransportError(f"offline and no cached copy for {file_key!r}")
            return cached
        if not self.token:
            raise AuthError("a Figma API token is required (set FIGMA_TOKEN or --token)")

        url = f"{self.base_url}/v1/files/{file_key}"
        last_error: Exception | None = None
        retry_after: float | None = None
        for attempt in range(self.max_retries + 1):
            if attempt:
                self._sleep(self._backoff(attempt, retry_after))
                retry_after = None
            try:
                response = self.session.get(
                    url, headers={"X-Figma-Token": self.token}, timeout=30
                )
            except requests.RequestException as exc:
                last_error = exc
                logger.warning("figma fetch attempt %d failed: %s", attempt + 1, exc)
                continue
            status = response.status_code
            if status in (401, 403):
                raise AuthError(f"Figma rejected the token (HTTP {status})")
            if status == 404:
                raise NotFoundError(f"no Figma file {file_key!r} (HTTP 404)")
            if status == 429:
                header = response.headers.get("Retry-After")
                retry_after = float(header) if header else None
                last_error = RateLimitedError("rate limited by Figma", retry_after)
                logger.warning("figma rate limit hit, attempt %d", attempt + 1)
                continue
            if status >= 500:
                last_error = TransportError(f"Figma server error (HTTP {status})")
                continue
            try:
                data = response.json()
            except ValueError as exc:
                raise MalformedDocumentError(f"non-JSON response: {exc}") from exc
            document = RawDocument(data=data, file_key=file_key, retrieved_at=_now_iso())
            self._write_cache(document)
            return document
        if isinstance(last_error, RateLimitedError):
            raise last_error
        raise TransportError(f"giving up after {self.max_retries + 1} attempts: {last_error}")

    def _backoff(self, attempt: int, retry_after: float | None) -> float:
        if retry_after is not None:
            return retry_after
        return min(0.5 * 2 ** (attempt - 1), 8.0) + self._rng.uniform(0.0, 0.25)

    def _cache_file(self, file_key: str) -> Path | None:
        if self.cache_dir is None:
            return None
        return self.cache_dir / f"{file_key}.json"

    def _read_cache(self, file_key: str) -> RawDocument | None:
        path = self._cache_file(file_key)
        if path is None or not path.exists():
            return None
        data = json.loads(path.read_text("utf-8"))
        manifest = self._read_manifest()
        entry = manifest.get("files", {}).get(file_key, {})
        return RawDocument(
            data=data,
            file_key=file_key,
            retrieved_at=entry.get("retrieved_at", _now_iso()),
        )

    def _read_manifest(self) -> dict[str, Any]:
        if self.cache_dir is None:
            return {}
        path = self.cache_dir / "manifest.json"
        if not path.exists():
            return {}
        return json.loads(path.read_text("utf-8"))

    def _write_cache(self, document: RawDocument) -> None:
        path = self._cache_file(document.file_key)
        if path is None:
            return
        with self._cache_lock:
            self.cache_dir.mkdir(parents=True, exist_ok=True)
            _atomic_write(path, json.dumps(dict(document.data)))
            manifest = self._read_manifest() or {"version": 1, "files": {}}
            manifest.setdefault("files", {})[document.file_key] = {
                "path": path.name,
                "retrieved_at": document.retrieved_at,
            }
            _atomic_write(self.cache_dir / "manifest.json", json.dumps(manifest, indent=2))


def _atomic_write(path: Path, text: str) -> None:
    handle = tempfile.NamedTemporaryFile(
        "w", dir=path.parent, prefix=path.name, suffix=".tmp", delete=False, encoding="utf-8"
    )
    try:
        handle.write(text)
        handle.close()
        os.replace(handle.name, path)
    except BaseException:
        handle.close()
        os.unlink(handle.name)
        raise


def load_file(path: str | Path) -> RawDocument:
    """Read a Figma file dump from disk; offline twin of fetch_file."""
    path = Path(path)
    try:
        text = path.read_text("utf-8")
        data = json.loads(text)
    except OSError:
        raise
    except ValueError as exc:
        raise MalformedDocumentError(f"{path}: {exc}") from exc
    if not isinstance(data, dict):
        raise MalformedDocumentError(f"{path}: root must be an object")
    return RawDocument(data=data, file_key=path.stem, retrieved_at=_now_iso())


def _walk_figma(node: Mapping[str, Any]) -> Iterator[Mapping[str, Any]]:
    yield node
    for child in node.get("children", ()):
        yield from _walk_figma(child)


def find_component_sets(
    document: RawDocument | Mapping[str, Any],
) -> list[tuple[FullComponentName, Mapping[str, Any]]]:
    """All COMPONENT_SET nodes whose names follow Style/Kind/Subtype.

    Document order; sets with non-conforming names are skipped with a
    warning rather than failing the whole export.
    """
    data = document.data if isinstance(document, RawDocument) else document
    root = data.get("document", data)
    found: list[tuple[FullComponentName, Mapping[str, Any]]] = []
    for node in _walk_figma(root):
        if node.get("type") != "COMPONENT_SET":
            continue
        raw_name = node.get("name", "")
        try:
            name = parse_full_name(raw_name)
        except FullNameError as exc:
            logger.warning("skipping component set %r: %s", raw_name, exc)
            continue
        found.append((name, node))
    return found


def parse_variant_name(raw: str) -> dict[str, str]:
    """Split "State=Default, Size=Large" into an ordered key-value map."""
    variants: dict[str, str] = {}
    for segment in raw.split(","):
        segment = segment.strip()
        if not segment:
            continue
        if "=" in segment:
            key, _, value = segment.partition("=")
            variants[key.strip()] = value.strip()
        else:
            logger.warning("variant segment %r has no '=', storing empty value", segment)
            variants[segment] = ""
    return variants


def _paint_color(paint: Mapping[str, Any]) -> ColorValue | None:
    if paint.get("visible", True) is False:
        return None
    if paint.get("type", "SOLID") != "SOLID":
        return None
    color = paint.get("color")
    if color is None:
        return None
    alpha = color.get("a", 1.0) * paint.get("opacity", 1.0)
    return ColorValue(r=color.get("r", 0.0), g=color.get("g", 0.0), b=color.get("b", 0.0), a=alpha)


def _first_paint_color(paints: Any) -> ColorValue | None:
    # The flat schema has one scalar slot, so only the first visible solid
    # paint is used.
    for paint in paints or ():
        color = _paint_color(paint)
        if color is not None:
            return color
    return None


def _first_effect(node: Mapping[str, Any]) -> EffectSpec | None:
    for effect in node.get("effects", ()):
        if effect.get("visible", True) is False:
            continue
        name = effect.get("type")
        if not name:
            continue
        color = effect.get("color") or {}
        return EffectSpec(
            effect_name=name,
            effect_color=ColorValue(
                r=color.get("r", 0.0),
                g=color.get("g", 0.0),
                b=color.get("b", 0.0),
                a=color.get("a", 1.0),
            ),
        )
    return None


def _first_text_descendant(node: Mapping[str, Any]) -> Mapping[str, Any] | None:
    for candidate in _walk_figma(node):
        if candidate.get("type") == "TEXT":
            return candidate
    return None


def _geometry(node: Mapping[str, Any]) -> tuple[float, float, float, float] | None:
    box = node.get("absoluteBoundingBox")
    if box is None:
        return None
    return (
        float(box.get("height", 0.0)),
        float(box.get("width", 0.0)),
        float(box.get("x", 0.0)),
        float(box.get("y", 0.0)),
    )


def extract_flat(node: Mapping[str, Any], set_name: FullComponentName) -> FlatComponentSpec:
    """Flatten one COMPONENT variant node into a property map."""
    geometry = _geometry(node)
    if geometry is None:
        raise MissingGeometryError(f"node {node.get('name')!r} has no absoluteBoundingBox")
    height, width, x, y = geometry

    stroke_color = _first_paint_color(node.get("strokes"))
    text = _first_text_descendant(node)
    style = (text or {}).get("style", {})
    border_radius = node.get("cornerRadius")

    return FlatComponentSpec(
        name=set_name,
        variant_properties=parse_variant_name(node.get("name", "")),
        height=height,
        width=width,
        x=x,
        y=y,
        color=_first_paint_color(node.get("fills")),
        stroke_color=stroke_color,
        stroke_weight=node.get("strokeWeight") if stroke_color is not None else None,
        text_color=_first_paint_color((text or {}).get("fills")),
        font_family=style.get("fontFamily"),
        font_weight=style.get("fontWeight"),
        font_size=style.get("fontSize"),
        effect=_first_effect(node),
        border_radius=border_radius,
    )


_VECTOR_TYPES = frozenset(
    {"VECTOR", "RECTANGLE", "ELLIPSE", "LINE", "REGULAR_POLYGON", "STAR", "BOOLEAN_OPERATION"}
)
_FRAME_TYPES = frozenset({"FRAME", "COMPONENT", "COMPONENT_SET", "INSTANCE"})


def _node_kind(node: Mapping[str, Any]) -> NodeKind | None:
    node_type = node.get("type")
    if node_type in _FRAME_TYPES:
        if node.get("layoutMode") in ("HORIZONTAL", "VERTICAL"):
            return NodeKind.AUTO_LAYOUT
        return NodeKind.FRAME
    if node_type == "GROUP":
        return NodeKind.GROUP
    if node_type == "TEXT":
        return NodeKind.TEXT
    if node_type in _VECTOR_TYPES:
        return NodeKind.VECTOR
    return None


def count_supported_nodes(node: Mapping[str, Any]) -> int:
    """How many nodes extract_nested keeps: supported nodes reachable
    through supported grouping ancestors."""
    kind = _node_kind(node)
    if kind is None:
        return 0
    if kind not in (NodeKind.FRAME, NodeKind.AUTO_LAYOUT, NodeKind.GROUP):
        return 1
    return 1 + sum(count_supported_nodes(child) for child in node.get("children", ()))


def extract_nested(node: Mapping[str, Any], depth_limit: int = DEFAULT_DEPTH_LIMIT) -> NestedNode:
    """Mirror a Figma subtree as a NestedNode tree.

    Unsupported node types are skipped (with a warning) together with their
    subtrees; the root itself must be a supported type.
    """
    result = _extract_nested(node, depth_limit, depth=0)
    if result is None:
        raise ValueError(f"unsupported root node type {node.get('type')!r}")
    return result


def _extract_nested(node: Mapping[str, Any], depth_limit: int, depth: int) -> NestedNode | None:
    if depth > depth_limit:
        raise DepthLimitExceededError(f"nesting deeper than {depth_limit}")
    kind = _node_kind(node)
    if kind is None:
        logger.warning("skipping unsupported node type %r (%r)", node.get("type"), node.get("name"))
        return None

    geometry = _geometry(node)
    if geometry is None:
        logger.warning("node %r has no geometry, defaulting to 0", node.get("name"))
        geometry = (0.0, 0.0, 0.0, 0.0)
    height, width, x, y = geometry
    common: dict[str, Any] = {
        "kind": kind,
        "name": node.get("name", ""),
        "height": height,
        "width": width,
        "x": x,
        "y": y,
    }

    if kind is NodeKind.TEXT:
        style = node.get("style", {})
        return NestedNode(
            **common,
            text_color=_first_paint_color(node.get("fills")),
            font_family=style.get("fontFamily"),
            font_weight=style.get("fontWeight"),
            font_size=style.get("fontSize"),
        )
    if kind is NodeKind.VECTOR:
        return NestedNode(**common, color=_first_paint_color(node.get("fills")))

    children = []
    for child in node.get("children", ()):
        extracted = _extract_nested(child, depth_limit, depth + 1)
        if extracted is not None:
            children.append(extracted)
    stroke_color = _first_paint_color(node.get("strokes"))
    return NestedNode(
        **common,
        color=_first_paint_color(node.get("fills")),
        stroke_color=stroke_color,
        stroke_weight=node.get("strokeWeight") if stroke_color is not None else None,
        effect=_first_effect(node),
        border_radius=node.get("cornerRadius"),
        children=tuple(children),
    )
