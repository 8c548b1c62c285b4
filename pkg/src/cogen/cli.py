"""Command-line interface for the component translation pipeline.

Exit codes: 0 success, 2 authentication, 3 parse/validation, 4 no
component kind in the prompt.
"""

from __future__ import annotations

import functools
import json
import logging
import sys
from dataclasses import dataclass, fields
from pathlib import Path

import click

from .adapters import Direction, make_adapter
from .emitter import (
    ValidationError,
    default_presets,
    emit_flat,
    emit_nested,
    load_presets,
    map_to_figma,
    serialize_instructions,
    validate_json,
)
from .figma import (
    AuthError,
    FigmaApiError,
    FigmaClient,
    extract_flat,
    extract_nested,
    find_component_sets,
    load_file,
)
from .grammar import NoComponentKindError, default_lexicon, load_lexicon, parse_intent
from .metrics import InsufficientDataError, subset_eval
from .model import (
    FlatComponentSpec,
    FullNameError,
    NestedNode,
    serialize_full_name,
    summarize_nested,
)
from .synthesis import build_dataset, fuzz_specs, read_jsonl, synthesize_prompt, write_jsonl

logger = logging.getLogger(__name__)

EXIT_AUTH = 2
EXIT_PARSE = 3
EXIT_INTENT = 4


@dataclass(frozen=True)
class RunConfig:
    """Option defaults from a config file; flags beat env, env beats this."""

    adapter: str = "generator"
    schema: str = "flat"
    presets_path: str | None = None
    lexicon_path: str | None = None
    seed: int = 0
    token: str = ""
    cache_dir: str | None = None
    port: int = 8765

    def __post_init__(self) -> None:
        if not 1024 <= self.port <= 65535:
            raise ValueError(f"port must be in [1024, 65535], got {self.port}")


def _load_config(path: str | None) -> RunConfig:
    if path is None:
        return RunConfig()
    data = json.loads(Path(path).read_text("utf-8"))
    known = {f.name for f in fields(RunConfig)}
    return RunConfig(**{k: v for k, v in data.items() if k in known})


def _fail(code: int, message: object) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def run_guarded(fn):
    """Map pipeline errors to the documented exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except AuthError as exc:
            _fail(EXIT_AUTH, exc)
        except NoComponentKindError as exc:
            _fail(EXIT_INTENT, f"{exc} (name a component, e.g. 'create a basic button')")
        except (
            ValidationError,
            FigmaApiError,
            FullNameError,
            InsufficientDataError,
            json.JSONDecodeError,
            OSError,
            ValueError,
        ) as exc:
            _fail(EXIT_PARSE, exc)

    return wrapper


def _tables(presets_path: str | None, lexicon_path: str | None, config: RunConfig):
    presets_path = presets_path or config.presets_path
    lexicon_path = lexicon_path or config.lexicon_path
    presets = load_presets(presets_path) if presets_path else default_presets()
    lexicon = load_lexicon(lexicon_path) if lexicon_path else default_lexicon()
    return presets, lexicon


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="JSON file with option defaults.",
)
@click.option("-v", "--verbose", is_flag=True, help="Enable debug logging.")
@click.pass_context
def main(ctx: click.Context, config_path: str | None, verbose: bool) -> None:
    """Translate between textual commands and Figma-compatible component JSON."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        ctx.obj = _load_config(config_path)
    except (ValueError, OSError) as exc:
        _fail(EXIT_PARSE, exc)


@main.command()
@click.argument("source")
@click.option("--token", envvar="FIGMA_TOKEN", default=None, help="Figma API token.")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=".", show_default=True)
@click.option("--offline", is_flag=True, help="Serve from the cache; no network.")
@click.option("--cache-dir", type=click.Path(file_okay=False), default=None)
@click.pass_obj
@run_guarded
def extract(
    config: RunConfig,
    source: str,
    token: str | None,
    out_dir: str,
    offline: bool,
    cache_dir: str | None,
) -> None:
    """Extract components from a Figma file key or local dump SOURCE."""
    if Path(source).exists():
        document = load_file(source)
    else:
        client = FigmaClient(
            token=token or config.token,
            cache_dir=cache_dir or config.cache_dir,
            offline=offline,
        )
        document = client.fetch_file(source)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = 0
    for name, node in find_component_sets(document):
        variant = next(
            (c for c in node.get("children", ()) if c.get("type") == "COMPONENT"), None
        )
        if variant is None:
            logger.warning("component set %r has no variants, skipping", node.get("name"))
            continue
        stem = serialize_full_name(name).replace("/", "_").replace(" ", "-")
        (out / f"{stem}.flat.json").write_text(
            extract_flat(variant, name).to_canonical_json() + "\n", "utf-8"
        )
        (out / f"{stem}.nested.json").write_text(
            extract_nested(variant).to_canonical_json() + "\n", "utf-8"
        )
        written += 2
    click.echo(f"wrote {written} files to {out}")


@main.command()
@click.option("--count", default=500, show_default=True, help="Specs to fuzz.")
@click.option("--seed", default=None, type=int, help="RNG seed.  [default: 0]")
@click.option("--schema", type=click.Choice(["flat", "nested"]), default=None)
@click.option("--variants", default=1, show_default=True, help="Prompts per spec.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), required=True)
@click.option("--presets", "presets_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.pass_obj
@run_guarded
def synth(
    config: RunConfig,
    count: int,
    seed: int | None,
    schema: str | None,
    variants: int,
    out_path: str,
    presets_path: str | None,
) -> None:
    """Build a JSON-prompt dataset (JSONL) from fuzzed component specs."""
    presets, _ = _tables(presets_path, None, config)
    seed = seed if seed is not None else config.seed
    specs = fuzz_specs(count, seed=seed, presets=presets, schema=schema or config.schema)
    records = build_dataset(specs, seed=seed, variants=variants)
    total = write_jsonl(records, out_path)
    click.echo(f"wrote {total} records to {out_path}")


@main.command()
@click.argument("prompt")
@click.option("--schema", type=click.Choice(["flat", "nested"]), default=None)
@click.option(
    "--emit-instructions",
    "instructions_path",
    type=click.Path(dir_okay=False),
    default=None,
    help="Also write the plugin-instruction payload here.",
)
@click.option("--presets", "presets_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--lexicon", "lexicon_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.pass_obj
@run_guarded
def generate(
    config: RunConfig,
    prompt: str,
    schema: str | None,
    instructions_path: str | None,
    presets_path: str | None,
    lexicon_path: str | None,
) -> None:
    """Turn PROMPT into component JSON on stdout."""
    presets, lexicon = _tables(presets_path, lexicon_path, config)
    intent = parse_intent(prompt, lexicon)
    tree = emit_nested(intent, presets)
    if (schema or config.schema) == "nested":
        payload = tree.to_canonical_json()
    else:
        payload = emit_flat(intent, presets).to_canonical_json()
    validate_json(payload)
    click.echo(payload)
    if instructions_path:
        Path(instructions_path).write_text(
            serialize_instructions(map_to_figma(tree)) + "\n", "utf-8"
        )


@main.command()
@click.argument("json_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", default=None, type=int, help="Template selection seed.  [default: 0]")
@click.pass_obj
@run_guarded
def describe(config: RunConfig, json_path: str, seed: int | None) -> None:
    """Synthesize one prompt for the component JSON file at JSON_PATH."""
    document, _ = validate_json(Path(json_path).read_text("utf-8"))
    if "kind" in document:
        spec = summarize_nested(NestedNode.from_json_dict(document))
    else:
        spec = FlatComponentSpec.from_json_dict(document)
    click.echo(synthesize_prompt(spec, seed if seed is not None else config.seed))


@main.command(name="eval")
@click.option("--dataset", "dataset_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--adapter", "adapter_spec", default=None, help="describer | generator | generator:nested | exec:<cmd>")
@click.option("--sizes", default="100,200,300,400,500", show_default=True)
@click.option(
    "--direction",
    type=click.Choice([d.value for d in Direction]),
    default=Direction.JSON_TO_PROMPT.value,
    show_default=True,
)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None)
@click.option("--timeout", default=10.0, show_default=True, help="External adapter timeout (s).")
@click.pass_obj
@run_guarded
def eval_cmd(
    config: RunConfig,
    dataset_path: str,
    adapter_spec: str | None,
    sizes: str,
    direction: str,
    out_path: str | None,
    timeout: float,
) -> None:
    """Evaluate an adapter over growing dataset subsets."""
    records = read_jsonl(dataset_path)
    size_list = [int(s) for s in sizes.split(",") if s.strip()]
    with make_adapter(adapter_spec or config.adapter, timeout=timeout) as adapter:
        report = subset_eval(
            records, adapter, sizes=size_list, direction=Direction.parse(direction)
        )
    if out_path:
        Path(out_path).write_text(report.to_json() + "\n", "utf-8")
        click.echo(report.to_text_table())
    else:
        click.echo(report.to_json())


@main.command()
@click.option("--port", default=None, type=int, help="Service port.  [default: 8765]")
@click.option("--bind", default="127.0.0.1", show_default=True)
@click.option("--schema", type=click.Choice(["flat", "nested"]), default=None)
@click.option("--seed", default=None, type=int, help="Describer seed.  [default: 0]")
@click.pass_obj
@run_guarded
def serve(
    config: RunConfig,
    port: int | None,
    bind: str,
    schema: str | None,
    seed: int | None,
) -> None:
    """Run the local HTTP service the plugin panel talks to."""
    import uvicorn

    from .service import create_app

    port = port if port is not None else config.port
    if not 1024 <= port <= 65535:
        raise ValueError(f"port must be in [1024, 65535], got {port}")
    app = create_app(
        schema=schema or config.schema,
        seed=seed if seed is not None else config.seed,
    )
    uvicorn.run(app, host=bind, port=port)


if __name__ == "__main__":
    main()
