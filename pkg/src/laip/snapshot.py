"""Immutable analysis snapshot: everything the service exposes, derived once.

A snapshot bundles the corpus, the (expanded) lexicon, both coverage
matrices, rankings, group comparisons, the RDF graph, and the paragraph
index. Its ``snapshot_id`` is a content hash of the corpus and lexicon, so
identical inputs always produce the same id.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources

from .analysis import (
    CoverageMatrix,
    GroupComparison,
    MatchRecord,
    RankingEntry,
    aggregate_by_topic,
    compare_groups,
    compute_coverage,
    match_corpus,
    rank_proposals,
    topic_coverage_percent,
)
from .corpus import Corpus
from .embeddings import EmbeddingTable
from .lexicon import Lexicon
from .linking import DEFAULT_BASE_IRI, LinkGraph, build_graph, serialize_ntriples, serialize_turtle
from .search import ItemEmbeddingIndex, build_index


def bundled_data_path(name: str):
    """Path to a bundled data file (corpus, base lexicon, curation, demo vectors)."""
    return resources.files("laip.data").joinpath(name)


def compute_snapshot_id(corpus: Corpus, lexicon: Lexicon) -> str:
    payload = json.dumps(
        {"corpus": corpus.to_dict(), "lexicon": lexicon.to_dict()},
        ensure_ascii=False,
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


@dataclass(frozen=True)
class AnalysisSnapshot:
    corpus: Corpus
    lexicon: Lexicon
    topic_matrix: CoverageMatrix
    keyword_matrix: CoverageMatrix
    topic_ranking: list[RankingEntry]
    keyword_ranking: list[RankingEntry]
    comparisons: list[GroupComparison]
    graph: LinkGraph
    graph_ntriples: str
    graph_turtle: str
    index: ItemEmbeddingIndex
    table: EmbeddingTable
    match_records: list[MatchRecord]
    snapshot_id: str

    def coverage_percent(self, proposal_id: str) -> float:
        return topic_coverage_percent(self.topic_matrix, proposal_id)


def build_snapshot(
    corpus: Corpus,
    lexicon: Lexicon,
    table: EmbeddingTable,
    base_iri: str = DEFAULT_BASE_IRI,
    index: ItemEmbeddingIndex | None = None,
) -> AnalysisSnapshot:
    """Derive everything once; pass a cached ``index`` to skip re-embedding."""
    keyword_matrix = compute_coverage(corpus, lexicon, "keyword")
    topic_matrix = aggregate_by_topic(keyword_matrix, lexicon)
    graph = build_graph(corpus, lexicon, topic_matrix, keyword_matrix, base_iri=base_iri)
    return AnalysisSnapshot(
        corpus=corpus,
        lexicon=lexicon,
        topic_matrix=topic_matrix,
        keyword_matrix=keyword_matrix,
        topic_ranking=rank_proposals(topic_matrix),
        keyword_ranking=rank_proposals(keyword_matrix),
        comparisons=compare_groups(topic_matrix, corpus),
        graph=graph,
        graph_ntriples=serialize_ntriples(graph),
        graph_turtle=serialize_turtle(graph, base_iri=base_iri),
        index=index if index is not None else build_index(corpus, table),
        table=table,
        match_records=match_corpus(corpus, lexicon),
        snapshot_id=compute_snapshot_id(corpus, lexicon),
    )
