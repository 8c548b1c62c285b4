from __future__ import annotations

from pathlib import Path

import pytest

from cogen.emitter import default_presets
from cogen.figma import load_file
from cogen.grammar import default_lexicon

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def presets():
    return default_presets()


@pytest.fixture(scope="session")
def lexicon():
    return default_lexicon()


@pytest.fixture(scope="session")
def design_file():
    return load_file(FIXTURES / "design_system.json")


@pytest.fixture(scope="session")
def golden_button_flat() -> str:
    return (FIXTURES / "golden_button.flat.json").read_text("utf-8").strip()
