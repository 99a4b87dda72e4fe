"""laip: link and analyze AI-principle proposals.

Pipeline pieces: a validated proposal corpus, a 10-topic keyword lexicon with
embedding-driven expansion, coverage matrices and rankings, publisher-group
statistics, an RDF linkage graph, and keyword/paragraph search, all exposed
through a CLI and a read-only JSON API.
"""

__version__ = "0.1.0"

from .analysis import (
    CoverageMatrix,
    GroupComparison,
    MatchRecord,
    RankingEntry,
    compare_groups,
    compute_coverage,
    match_keywords,
    rank_proposals,
    tokenize,
    topic_coverage_percent,
)
from .corpus import Corpus, CorpusError, PrincipleItem, Proposal, PublisherType, group_by_publisher, load_corpus
from .embeddings import (
    EmbeddingError,
    EmbeddingTable,
    Neighbor,
    cosine_similarity,
    load_embeddings,
    nearest_neighbors,
)
from .lexicon import (
    KeywordGroup,
    Lexicon,
    LexiconError,
    Topic,
    Variant,
    VariantProvenance,
    apply_curation,
    expand_keyword,
    expand_lexicon,
    load_curation,
    load_lexicon,
    save_lexicon,
)
from .linking import Iri, LinkGraph, Literal, Triple, build_graph, serialize_ntriples, serialize_turtle
from .search import ItemEmbeddingIndex, SearchHit, build_index, embed_paragraph, keyword_search, paragraph_search
from .snapshot import AnalysisSnapshot, build_snapshot, bundled_data_path
from .stats import WelchResult, welch_t_test

__all__ = [
    "__version__",
    "AnalysisSnapshot",
    "Corpus",
    "CorpusError",
    "CoverageMatrix",
    "EmbeddingError",
    "EmbeddingTable",
    "GroupComparison",
    "Iri",
    "ItemEmbeddingIndex",
    "KeywordGroup",
    "Lexicon",
    "LexiconError",
    "LinkGraph",
    "Literal",
    "MatchRecord",
    "Neighbor",
    "PrincipleItem",
    "Proposal",
    "PublisherType",
    "RankingEntry",
    "SearchHit",
    "Topic",
    "Triple",
    "Variant",
    "VariantProvenance",
    "WelchResult",
    "apply_curation",
    "build_graph",
    "build_index",
    "build_snapshot",
    "bundled_data_path",
    "compare_groups",
    "compute_coverage",
    "cosine_similarity",
    "embed_paragraph",
    "expand_keyword",
    "expand_lexicon",
    "group_by_publisher",
    "keyword_search",
    "load_corpus",
    "load_curation",
    "load_embeddings",
    "load_lexicon",
    "match_keywords",
    "nearest_neighbors",
    "paragraph_search",
    "rank_proposals",
    "save_lexicon",
    "serialize_ntriples",
    "serialize_turtle",
    "tokenize",
    "topic_coverage_percent",
    "welch_t_test",
]
