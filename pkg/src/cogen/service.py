"""Local HTTP bridge between the plugin panel and the translation engine.

Three routes: POST /generate (prompt to JSON plus plugin instructions),
POST /describe (JSON to prompt), GET /health. Bodies and error payloads are
JSON; CORS is open because Figma plugin iframes have an opaque origin.
"""

from __future__ import annotations

import logging
from typing import Any

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .adapters import AdapterError, DescriberAdapter, Direction, GenerationRequest
from .emitter import (
    StylePresetTable,
    default_presets,
    emit_flat,
    emit_nested,
    instructions_to_json,
    map_to_figma,
)
from .grammar import Lexicon, NoComponentKindError, default_lexicon, parse_intent
from .model import canonical_dumps

logger = logging.getLogger(__name__)


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": message})


def create_app(
    schema: str = "flat",
    presets: StylePresetTable | None = None,
    lexicon: Lexicon | None = None,
    seed: int = 0,
) -> FastAPI:
    """Build the service; all state is immutable, so requests may overlap."""
    if schema not in ("flat", "nested"):
        raise ValueError(f"schema must be 'flat' or 'nested', got {schema!r}")
    presets = presets if presets is not None else default_presets()
    lexicon = lexicon if lexicon is not None else default_lexicon()
    describer = DescriberAdapter(seed=seed)

    app = FastAPI(title="cogen", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(Exception)
    async def internal_error(request: Request, exc: Exception) -> JSONResponse:
        logger.exception("unhandled error on %s", request.url.path)
        return _error(500, "internal error")

    @app.get("/health")
    async def health() -> dict[str, str]:
        return {"status": "ok"}

    @app.post("/generate")
    async def generate(request: Request) -> Any:
        try:
            body = await request.json()
        except ValueError:
            return _error(400, "request body must be JSON")
        if not isinstance(body, dict) or not isinstance(body.get("prompt"), str):
            return _error(400, "body must be an object with a 'prompt' string")
        prompt = body["prompt"]
        if not prompt.strip():
            return _error(400, "prompt must be nonempty")
        body_schema = body.get("schema", schema)
        if body_schema not in ("flat", "nested"):
            return _error(400, f"schema must be 'flat' or 'nested', got {body_schema!r}")
        try:
            intent = parse_intent(prompt, lexicon)
        except NoComponentKindError as exc:
            return _error(422, str(exc))
        tree = emit_nested(intent, presets)
        if body_schema == "nested":
            document = tree.to_json_dict()
        else:
            document = emit_flat(intent, presets).to_json_dict()
        return {
            "json": document,
            "instructions": instructions_to_json(map_to_figma(tree)),
        }

    @app.post("/describe")
    async def describe(request: Request) -> Any:
        try:
            body = await request.json()
        except ValueError:
            return _error(400, "request body must be JSON")
        if not isinstance(body, dict) or "json" not in body:
            return _error(400, "body must be an object with a 'json' field")
        raw = body["json"]
        text = raw if isinstance(raw, str) else canonical_dumps(raw)
        if not text.strip():
            return _error(400, "'json' must be nonempty")
        try:
            prompt = describer.generate(
                GenerationRequest(direction=Direction.JSON_TO_PROMPT, input=text)
            )
        except AdapterError as exc:
            return _error(422, str(exc))
        return {"prompt": prompt}

    return app
