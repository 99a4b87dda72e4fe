"""Acceptance suite: one test per criterion, each timed at its stated bound.

Everything here runs against the bundled data (corpus snapshot, base lexicon,
curation file, demo embedding table) plus the synthetic fixtures the criteria
name. The final diagnostic is best-effort and never fails: it reports
pass/deviate flags for spot values that depend on corpus reconstruction.
"""

import time

import numpy as np
import pytest

from laip.analysis import (
    aggregate_by_topic,
    compare_groups,
    compute_coverage,
    rank_proposals,
    topic_coverage_percent,
)
from laip.corpus import PublisherType, group_by_publisher
from laip.embeddings import EmbeddingTable, nearest_neighbors
from laip.lexicon import expand_lexicon
from laip.linking import Vocabulary, build_graph, serialize_ntriples
from laip.search import keyword_search, paragraph_search
from laip.stats import welch_t_test

from conftest import MINI_TOPIC_ROWS, synthetic_words_matrix
from oracles import (
    brute_force_neighbors,
    p_two_tailed_by_quadrature,
    parse_ntriples,
    reserialize_ntriples,
    welch_by_hand,
)

# The base keyword scheme, lowercased per the documented normalization.
BASE_KEYWORDS = {
    "Humanity": ["humanity", "beneficial", "well-being", "human value", "human right", "dignity",
                 "freedom", "education", "common good", "human-centered", "human-friendly"],
    "Collaboration": ["collaboration", "partnership", "cooperation", "dialogue"],
    "Share": ["share", "equal", "equity", "inequity", "inequality"],
    "Fairness": ["fairness", "justice", "bias", "discrimination", "prejudice"],
    "Transparency": ["transparency", "explainable", "predictable", "intelligible", "audit", "trace", "opaque"],
    "Privacy": ["privacy", "personal information", "data protection", "informed",
                "explicit confirmation", "control the data", "notice and consent"],
    "Security": ["security", "cybersecurity", "cyberattack", "hacks", "confidential"],
    "Safety": ["safety", "validation", "verification", "test", "controllability",
               "under control", "control the risks", "human control", "risk"],
    "Accountability": ["accountability", "responsibility"],
    "AGI/ASI": ["agi", "superintelligence", "super intelligence"],
}


class Timer:
    def __init__(self, budget_seconds: float):
        self.budget = budget_seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc == (None, None, None):
            assert self.elapsed < self.budget, f"took {self.elapsed:.2f}s, budget {self.budget}s"


def test_lexicon_census(base_lexicon):
    with Timer(1.0):
        assert base_lexicon.topic_names() == list(BASE_KEYWORDS)
        for topic in base_lexicon.topics:
            assert [g.canonical for g in topic.groups] == BASE_KEYWORDS[topic.name], topic.name
        per_topic = [len(t.groups) for t in base_lexicon.topics]
        assert per_topic == [11, 4, 5, 5, 7, 7, 5, 9, 2, 3]
        assert len(base_lexicon.canonicals()) == 58


def test_corpus_census(bundled_corpus):
    with Timer(1.0):
        assert len(bundled_corpus) == 27
        groups = group_by_publisher(bundled_corpus)
        assert len(groups[PublisherType.ACADEMIA_NGO]) == 13
        assert len(groups[PublisherType.GOVERNMENT]) == 4
        assert len(groups[PublisherType.INDUSTRY]) == 10


def test_expansion_monotonicity(bundled_corpus, base_lexicon, demo_table, bundled_curation):
    with Timer(30.0):
        expanded, _ = expand_lexicon(base_lexicon, demo_table, curation=bundled_curation)
        base_topic = compute_coverage(bundled_corpus, base_lexicon, "topic")
        expanded_topic = compute_coverage(bundled_corpus, expanded, "topic")
        base_total = 0
        expanded_total = 0
        for pid in base_topic.row_ids:
            before = topic_coverage_percent(base_topic, pid)
            after = topic_coverage_percent(expanded_topic, pid)
            assert after >= before, pid
            base_total += int(np.count_nonzero(base_topic.row(pid)))
            expanded_total += int(np.count_nonzero(expanded_topic.row(pid)))
        assert expanded_total > base_total


def test_neighbor_oracle():
    with Timer(5.0):
        words, matrix = synthetic_words_matrix(1000, 16, seed=7)
        norms = np.sqrt((matrix.astype(np.float64) ** 2).sum(axis=1))
        table = EmbeddingTable(
            dim=16, vocab={w: i for i, w in enumerate(words)}, vectors=matrix, norms=norms
        )
        rng = np.random.default_rng(123)
        queries = [words[i] for i in rng.integers(0, len(words), size=50)]
        for query in queries:
            expected = brute_force_neighbors(words, matrix, query, 10)
            actual = nearest_neighbors(table, query, 10)
            assert [n.word for n in actual] == [w for w, _ in expected], query
            for neighbor, (_, score) in zip(actual, expected):
                assert abs(neighbor.score - score) <= 1e-9


def test_statistics_oracle():
    with Timer(1.0):
        identical = welch_t_test([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
        assert identical.t == 0.0 and identical.p == 1.0
        worked = welch_t_test([1, 2, 3, 4, 5], [2, 3, 4, 5, 6])
        assert worked.t == pytest.approx(-1.0, abs=1e-12)
        assert worked.df == pytest.approx(8.0, abs=1e-12)
        assert worked.p == pytest.approx(0.3466, abs=5e-5)
        rng = np.random.default_rng(424242)
        for _ in range(20):
            n_a = int(rng.integers(2, 15))
            n_b = int(rng.integers(2, 15))
            a = (rng.standard_normal(n_a) * rng.uniform(0.5, 3.0) + rng.uniform(-2, 2)).tolist()
            b = (rng.standard_normal(n_b) * rng.uniform(0.5, 3.0) + rng.uniform(-2, 2)).tolist()
            t_oracle, df_oracle = welch_by_hand(a, b)
            p_oracle = p_two_tailed_by_quadrature(t_oracle, df_oracle)
            result = welch_t_test(a, b)
            assert abs(result.t - t_oracle) <= 1e-9
            assert abs(result.p - p_oracle) <= 1e-6


def test_mini_corpus_end_to_end(mini_corpus, base_lexicon):
    with Timer(1.0):
        keyword_matrix = compute_coverage(mini_corpus, base_lexicon, "keyword")
        topic_matrix = aggregate_by_topic(keyword_matrix, base_lexicon)
        for pid, expected in MINI_TOPIC_ROWS.items():
            assert topic_matrix.row(pid).tolist() == expected, pid
        assert [(e.proposal_id, e.score, e.rank) for e in rank_proposals(topic_matrix)] == [
            ("mini-b", 4, 1), ("mini-a", 2, 2), ("mini-c", 2, 2),
        ]
        assert [(e.proposal_id, e.score, e.rank) for e in rank_proposals(keyword_matrix)] == [
            ("mini-c", 7, 1), ("mini-b", 6, 2), ("mini-a", 5, 3),
        ]
        comparisons = {c.topic_name: c for c in compare_groups(topic_matrix, mini_corpus)}
        expected_means = {
            "Fairness": {PublisherType.ACADEMIA_NGO: 0.0, PublisherType.GOVERNMENT: 4.0, PublisherType.INDUSTRY: 0.0},
            "Humanity": {PublisherType.ACADEMIA_NGO: 0.0, PublisherType.GOVERNMENT: 0.0, PublisherType.INDUSTRY: 4.0},
            "Privacy": {PublisherType.ACADEMIA_NGO: 3.0, PublisherType.GOVERNMENT: 1.0, PublisherType.INDUSTRY: 0.0},
            "Safety": {PublisherType.ACADEMIA_NGO: 4.0, PublisherType.GOVERNMENT: 0.0, PublisherType.INDUSTRY: 0.0},
        }
        for topic_name, means in expected_means.items():
            got = {s.publisher_type: s.mean for s in comparisons[topic_name].stats}
            assert got == means, topic_name
        for comparison in comparisons.values():
            assert all(not t.available for t in comparison.tests)
        graph = build_graph(mini_corpus, base_lexicon, topic_matrix, keyword_matrix)
        assert len(graph) == 378  # hand-enumerated census, see test_linking
        vocab = Vocabulary()
        assert graph.count_predicate(vocab.term("coversTopic")) == 8
        assert graph.count_predicate(vocab.term("mentionsKeyword")) == 18
        assert graph.count_predicate(vocab.term("sharesTopicWith")) == 2


def test_rdf_well_formedness(bundled_snapshot):
    with Timer(5.0):
        document = bundled_snapshot.graph_ntriples
        parsed = parse_ntriples(document)
        assert reserialize_ntriples(parsed) == document
        covers = Vocabulary().term("coversTopic")
        assert bundled_snapshot.graph.count_predicate(covers) == int(
            np.count_nonzero(bundled_snapshot.topic_matrix.cells)
        )


def test_search_consistency(bundled_snapshot):
    from laip.analysis import tokenize

    snapshot = bundled_snapshot
    with Timer(30.0):
        for canonical in snapshot.lexicon.canonicals():
            query_tokens = tuple(tokenize(canonical))
            resolved = {
                g.canonical
                for t in snapshot.lexicon.topics
                for g in t.groups
                if any(tuple(tokenize(v.text)) == query_tokens for v in g.variants)
            }
            expected = {
                pid
                for c in resolved
                for pid in snapshot.keyword_matrix.row_ids
                if snapshot.keyword_matrix.cell(pid, c) >= 1
            }
            hits = keyword_search(
                canonical, snapshot.corpus, snapshot.lexicon, snapshot.keyword_matrix,
                records=snapshot.match_records,
            )
            assert {h.proposal_id for h in hits} == expected, canonical
        for proposal in snapshot.corpus.proposals:
            for item in proposal.items:
                text = f"{item.title_text} {item.explanatory_text}"
                hits = paragraph_search(text, snapshot.index, snapshot.table, k=1)
                assert (hits[0].proposal_id, hits[0].item_id) == (proposal.id, item.item_id)
                assert abs(hits[0].score - 1.0) <= 1e-6


def test_best_effort_diagnostic(bundled_snapshot, capsys):
    """Spot values from the source analysis; reported, never a gate."""
    snapshot = bundled_snapshot
    topic_rank = {e.proposal_id: e for e in snapshot.topic_ranking}
    keyword_rank = {e.proposal_id: e for e in snapshot.keyword_ranking}
    haip_topics = int(np.count_nonzero(snapshot.topic_matrix.row("haip")))
    checks = [
        ("HAIP covers 8 of 10 topics", haip_topics == 8, f"covers {haip_topics}"),
        ("HAIP topic rank 7 in parallel", topic_rank["haip"].rank == 7, f"rank {topic_rank['haip'].rank}"),
        ("SAP keyword rank 10", keyword_rank["sap"].rank == 10, f"rank {keyword_rank['sap'].rank}"),
        ("SAP topic rank 14 in parallel", topic_rank["sap"].rank == 14, f"rank {topic_rank['sap'].rank}"),
    ]
    top10_keyword = {pid for pid, e in keyword_rank.items() if e.rank <= 10}
    top10_topic = {pid for pid, e in topic_rank.items() if e.rank <= 10}
    overlap = len(top10_keyword & top10_topic)
    checks.append(
        ("8 of keyword top-10 also in topic top-10", overlap == 8, f"overlap {overlap} of {len(top10_keyword)}")
    )
    best = max(int(np.count_nonzero(snapshot.topic_matrix.row(pid))) for pid in snapshot.topic_matrix.row_ids)
    checks.append(("one proposal covers all 10 topics", best == 10, f"max coverage {best}"))
    with capsys.disabled():
        print("\nbest-effort diagnostic (corpus reconstruction variance expected):")
        for label, ok, detail in checks:
            print(f"  {'pass   ' if ok else 'deviate'}  {label} ({detail})")


def test_determinism_full_pipeline(tmp_path, capsys):
    from laip.cli import main

    with Timer(60.0):
        outputs = []
        for run in ("run1", "run2"):
            lex = tmp_path / run / "lexicon_expanded.json"
            out = tmp_path / run
            assert main(["expand-lexicon", "--output", str(lex)]) == 0
            assert main(["analyze", "--lexicon", str(lex), "-o", str(out)]) == 0
            assert main(["rank", "--lexicon", str(lex), "-o", str(out)]) == 0
            assert main(["compare-groups", "--lexicon", str(lex), "-o", str(out)]) == 0
            assert main(["export-rdf", "--lexicon", str(lex), "-o", str(out)]) == 0
            outputs.append(out)
        capsys.readouterr()
        names = [
            "lexicon_expanded.json",
            "coverage_topic.csv",
            "coverage_keyword.csv",
            "ranking_topic.csv",
            "ranking_keyword.csv",
            "group_comparison.json",
            "graph.nt",
            "graph.ttl",
        ]
        for name in names:
            first = (outputs[0] / name).read_bytes()
            second = (outputs[1] / name).read_bytes()
            assert first == second, name
