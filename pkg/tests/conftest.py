from __future__ import annotations

import json
import struct

import numpy as np
import pytest

_ACCEPTANCE_RESULTS: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1].replace("test_", "", 1)
    _ACCEPTANCE_RESULTS[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, outcome in _ACCEPTANCE_RESULTS.items():
        terminalreporter.write_line(f"ACCEPTANCE {name}: {outcome}")

from laip.corpus import load_corpus
from laip.embeddings import load_embeddings
from laip.lexicon import load_curation, load_lexicon
from laip.snapshot import build_snapshot, bundled_data_path

# Three hand-authored proposals, one per publisher type. Every expected
# number in the mini-corpus tests is hand-counted from these texts against
# the base lexicon; change them and you must recount.
MINI_CORPUS = {
    "proposals": [
        {
            "id": "mini-a",
            "title": "Mini Academia Principles",
            "publisher": "Mini University",
            "publisher_type": "academia_ngo",
            "year": 2017,
            "source_url": "https://example.org/mini-a",
            "items": [
                {
                    "item_id": "a1",
                    "title_text": "Safety and verification",
                    "explanatory_text": "Systems must be safe; verification and test procedures are required.",
                },
                {
                    "item_id": "a2",
                    "title_text": "Privacy",
                    "explanatory_text": "Personal information must be protected; privacy matters.",
                },
            ],
        },
        {
            "id": "mini-b",
            "title": "Mini Government Principles",
            "publisher": "Mini Ministry",
            "publisher_type": "government",
            "year": 2018,
            "source_url": "https://example.org/mini-b",
            "items": [
                {
                    "item_id": "b1",
                    "title_text": "Security and accountability",
                    "explanatory_text": "Protect personal information.",
                },
                {
                    "item_id": "b2",
                    "title_text": "Fairness",
                    "explanatory_text": "Avoid bias and discrimination; ensure fairness.",
                },
            ],
        },
        {
            "id": "mini-c",
            "title": "Mini Industry Principles",
            "publisher": "Mini Corp",
            "publisher_type": "industry",
            "year": 2016,
            "source_url": "https://example.org/mini-c",
            "items": [
                {
                    "item_id": "c1",
                    "title_text": "Collaboration and dialogue",
                    "explanatory_text": "Partnership across industry.",
                },
                {
                    "item_id": "c2",
                    "title_text": "Humanity",
                    "explanatory_text": "AI should be beneficial and human-centered, for the common good.",
                },
            ],
        },
    ]
}

# Hand-computed topic-coverage rows for the mini corpus x base lexicon,
# topic order as in the base lexicon (Humanity .. AGI/ASI).
MINI_TOPIC_ROWS = {
    "mini-a": [0, 0, 0, 0, 0, 3, 0, 4, 0, 0],
    "mini-b": [0, 0, 0, 4, 0, 1, 1, 0, 1, 0],
    "mini-c": [4, 3, 0, 0, 0, 0, 0, 0, 0, 0],
}

# Hand-computed nonzero keyword-level counts, keyed (proposal, canonical).
MINI_KEYWORD_COUNTS = {
    ("mini-a", "safety"): 1,
    ("mini-a", "verification"): 2,
    ("mini-a", "test"): 1,
    ("mini-a", "privacy"): 2,
    ("mini-a", "personal information"): 1,
    ("mini-b", "security"): 1,
    ("mini-b", "accountability"): 1,
    ("mini-b", "personal information"): 1,
    ("mini-b", "fairness"): 2,
    ("mini-b", "bias"): 1,
    ("mini-b", "discrimination"): 1,
    ("mini-c", "collaboration"): 1,
    ("mini-c", "dialogue"): 1,
    ("mini-c", "partnership"): 1,
    ("mini-c", "humanity"): 1,
    ("mini-c", "beneficial"): 1,
    ("mini-c", "human-centered"): 1,
    ("mini-c", "common good"): 1,
}


@pytest.fixture()
def mini_corpus_path(tmp_path):
    path = tmp_path / "mini_corpus.json"
    path.write_text(json.dumps(MINI_CORPUS), encoding="utf-8")
    return path


@pytest.fixture()
def mini_corpus(mini_corpus_path):
    return load_corpus(mini_corpus_path)


@pytest.fixture(scope="session")
def base_lexicon():
    return load_lexicon(bundled_data_path("lexicon_base.json"))


@pytest.fixture(scope="session")
def bundled_corpus():
    return load_corpus(bundled_data_path("corpus.json"))


@pytest.fixture(scope="session")
def demo_table():
    return load_embeddings(bundled_data_path("embeddings_demo.txt"), format="text", limit=None)


@pytest.fixture(scope="session")
def bundled_curation():
    return load_curation(bundled_data_path("curation.json"))


@pytest.fixture(scope="session")
def expanded_lexicon(base_lexicon, demo_table, bundled_curation):
    from laip.lexicon import expand_lexicon

    expanded, _results = expand_lexicon(base_lexicon, demo_table, curation=bundled_curation)
    return expanded


@pytest.fixture(scope="session")
def bundled_snapshot(bundled_corpus, expanded_lexicon, demo_table):
    return build_snapshot(bundled_corpus, expanded_lexicon, demo_table)


def synthetic_words_matrix(n_words: int = 1000, dim: int = 16, seed: int = 7):
    """Deterministic random vocabulary for loader/neighbor fixtures."""
    rng = np.random.default_rng(seed)
    words = [f"w{i:04d}" for i in range(n_words)]
    matrix = rng.standard_normal((n_words, dim)).astype(np.float32)
    return words, matrix


def write_text_fixture(path, words, matrix) -> None:
    """Fixture-side text writer, independent of the package's writer."""
    lines = [f"{len(words)} {matrix.shape[1]}"]
    for word, row in zip(words, matrix):
        lines.append(word + " " + " ".join(repr(float(x)) for x in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_binary_fixture(path, words, matrix, trailing_newline: bool = True) -> None:
    """Fixture-side binary writer, independent of the package's writer."""
    with open(path, "wb") as handle:
        handle.write(f"{len(words)} {matrix.shape[1]}\n".encode("ascii"))
        for word, row in zip(words, matrix):
            handle.write(word.encode("utf-8") + b" ")
            handle.write(struct.pack(f"<{matrix.shape[1]}f", *[float(x) for x in row]))
            if trailing_newline:
                handle.write(b"\n")
