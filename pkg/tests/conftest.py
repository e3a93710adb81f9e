import json
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent
CORPUS = REPO_ROOT / "corpus"


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return CORPUS


@pytest.fixture(scope="session")
def manifest() -> dict:
    return json.loads((CORPUS / "manifest.json").read_text())["files"]


@pytest.fixture(scope="session")
def corpus_sources() -> dict[str, str]:
    return {p.name: p.read_text() for p in sorted(CORPUS.glob("*.sl"))}
