import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for oracles.py

from expertpivot.taxonomy import build_lexicon, parse_skos

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def taxonomy_path() -> Path:
    return FIXTURES / "taxonomy_mini.xml"


@pytest.fixture(scope="session")
def wiki_dump_path() -> Path:
    return FIXTURES / "wiki_dump.xml"


@pytest.fixture(scope="session")
def expert_root_path() -> Path:
    return FIXTURES / "expert_root"


@pytest.fixture(scope="session")
def mini_taxonomy(taxonomy_path):
    return parse_skos(taxonomy_path.read_bytes(), source_uri=str(taxonomy_path))


@pytest.fixture(scope="session")
def mini_lexicon(mini_taxonomy):
    return build_lexicon(mini_taxonomy)
