"""Regenerate the plugin's golden fixtures from the cogen package.

One entry per component kind: the prompt, the nested tree the engine emits
for it, and the instructions payload the service would return. Run from
anywhere; requires cogen installed (pip install -e .).

    python3 tools/make_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

from cogen.emitter import default_presets, emit_nested, instructions_to_json, map_to_figma
from cogen.grammar import default_lexicon, parse_intent

PROMPTS = (
    "generate a professional button with a size of small",
    "create a trendy input field",
    "make a basic icon button",
    "generate a playful menu list",
    "create a basic list item with a drop shadow",
    "generate a trendy label",
)

OUT_PATH = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "golden_components.json"


def main() -> None:
    lexicon = default_lexicon()
    presets = default_presets()
    entries = []
    for prompt in PROMPTS:
        intent = parse_intent(prompt, lexicon)
        tree = emit_nested(intent, presets)
        entries.append(
            {
                "kind": intent.kind.value,
                "style": intent.style.value,
                "prompt": prompt,
                "tree": tree.to_json_dict(),
                "instructions": instructions_to_json(map_to_figma(tree)),
            }
        )
    OUT_PATH.parent.mkdir(parents=True, exist_ok=True)
    OUT_PATH.write_text(json.dumps(entries, indent=1) + "\n")
    print(f"wrote {len(entries)} fixtures to {OUT_PATH}")


if __name__ == "__main__":
    main()
