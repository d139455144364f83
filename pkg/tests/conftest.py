from pathlib import Path

import pytest

from defminer.corpus_io import attach_conllu, load_corpus
from defminer.rule_engine import default_catalog

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()


def _tagged_corpus(stem: str):
    corpus = load_corpus(FIXTURES / f"{stem}.jsonl")
    return attach_conllu(corpus, (FIXTURES / f"{stem}.conllu").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def ai_corpus():
    """Curated abstracts defining artificial intelligence, gold-tagged."""
    return _tagged_corpus("ai_abstracts")


@pytest.fixture(scope="session")
def ds_corpus():
    """Curated abstracts defining data science, gold-tagged."""
    return _tagged_corpus("ds_abstracts")
