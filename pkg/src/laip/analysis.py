"""Coverage analytics: tokenization, variant matching, matrices, rankings, group stats.

Texts are reduced to lowercase token sequences (hyphens, slashes, and any
other non-alphanumeric characters separate tokens), and lexicon variants are
tokenized with the same function, so a variant like ``well-being`` matches
the token bigram ``[well, being]``. Matching counts occurrences rather than
binary presence; binary coverage is derived as "count >= 1".

Within one keyword group, the longest variant wins at each text position and
consumes its span; different groups match independently of each other.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .corpus import Corpus, Proposal, PublisherType
from .lexicon import Lexicon
from .stats import WelchResult, mean, standard_error, welch_t_test

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

SIGNIFICANCE_LEVEL = 0.05


class AnalysisError(Exception):
    pass


def tokenize(text: str) -> list[str]:
    """Lowercase tokens: maximal runs of letters/digits; everything else separates."""
    return _TOKEN_RE.findall(text.lower())


@dataclass(frozen=True)
class MatchRecord:
    """Occurrence count of one variant inside one item field."""

    proposal_id: str
    item_id: str
    topic_name: str
    canonical: str
    variant: str
    count: int
    section: str = "title"  # "title" or "explanatory"; kept so title-only views stay recomputable


@dataclass(frozen=True)
class _CompiledGroup:
    topic_name: str
    canonical: str
    # variant token n-grams, longest first so greedy matching is longest-match
    patterns: tuple[tuple[tuple[str, ...], str], ...]
    max_len: int


def _compile_lexicon(lexicon: Lexicon) -> list[_CompiledGroup]:
    compiled = []
    for topic in lexicon.topics:
        for group in topic.groups:
            patterns: list[tuple[tuple[str, ...], str]] = []
            for variant in group.variants:
                tokens = tuple(tokenize(variant.text))
                if tokens:
                    patterns.append((tokens, variant.text))
            patterns.sort(key=lambda p: (-len(p[0]), p[0]))
            compiled.append(
                _CompiledGroup(
                    topic_name=topic.name,
                    canonical=group.canonical,
                    patterns=tuple(patterns),
                    max_len=max((len(p[0]) for p in patterns), default=0),
                )
            )
    return compiled


def _match_group(tokens: list[str], group: _CompiledGroup) -> dict[str, int]:
    """Greedy longest-match scan of one group over a token sequence."""
    counts: dict[str, int] = {}
    n = len(tokens)
    i = 0
    while i < n:
        matched = False
        for pattern, variant_text in group.patterns:
            width = len(pattern)
            if i + width <= n and tuple(tokens[i : i + width]) == pattern:
                counts[variant_text] = counts.get(variant_text, 0) + 1
                i += width
                matched = True
                break
        if not matched:
            i += 1
    return counts


def match_keywords(
    tokens: list[str],
    lexicon: Lexicon,
    proposal_id: str = "",
    item_id: str = "",
    section: str = "title",
) -> list[MatchRecord]:
    """Count non-overlapping variant occurrences in a token sequence.

    Records are emitted in lexicon order and only for counts >= 1.
    """
    records = []
    for group in _compile_lexicon(lexicon):
        for variant_text, count in sorted(_match_group(tokens, group).items()):
            records.append(
                MatchRecord(
                    proposal_id=proposal_id,
                    item_id=item_id,
                    topic_name=group.topic_name,
                    canonical=group.canonical,
                    variant=variant_text,
                    count=count,
                    section=section,
                )
            )
    return records


def match_corpus(corpus: Corpus, lexicon: Lexicon) -> list[MatchRecord]:
    """Match every item's title and explanatory text against the lexicon.

    The two fields of an item are matched separately so phrases never span
    the title/explanation boundary. Output is sorted for deterministic
    aggregation regardless of matching order.
    """
    compiled = _compile_lexicon(lexicon)
    records: list[MatchRecord] = []
    for proposal in corpus.proposals:
        for item in proposal.items:
            for section, text in (("title", item.title_text), ("explanatory", item.explanatory_text)):
                if not text:
                    continue
                tokens = tokenize(text)
                for group in compiled:
                    for variant_text, count in _match_group(tokens, group).items():
                        records.append(
                            MatchRecord(
                                proposal_id=proposal.id,
                                item_id=item.item_id,
                                topic_name=group.topic_name,
                                canonical=group.canonical,
                                variant=variant_text,
                                count=count,
                                section=section,
                            )
                        )
    records.sort(key=lambda r: (r.proposal_id, r.topic_name, r.canonical, r.variant, r.item_id, r.section))
    return records


@dataclass(frozen=True)
class CoverageMatrix:
    """Proposal x (topic | keyword) occurrence-count matrix."""

    granularity: str  # "topic" or "keyword"
    row_ids: tuple[str, ...]
    col_ids: tuple[str, ...]
    cells: np.ndarray  # int64, shape (len(row_ids), len(col_ids))

    def __post_init__(self) -> None:
        if self.granularity not in ("topic", "keyword"):
            raise AnalysisError(f"granularity must be 'topic' or 'keyword', got {self.granularity!r}")
        if self.cells.shape != (len(self.row_ids), len(self.col_ids)):
            raise AnalysisError("matrix shape does not match row/column ids")

    def row_index(self, proposal_id: str) -> int:
        try:
            return self.row_ids.index(proposal_id)
        except ValueError:
            raise AnalysisError(f"unknown proposal id {proposal_id!r}") from None

    def row(self, proposal_id: str) -> np.ndarray:
        return self.cells[self.row_index(proposal_id)]

    def cell(self, proposal_id: str, col_id: str) -> int:
        try:
            col = self.col_ids.index(col_id)
        except ValueError:
            raise AnalysisError(f"unknown column {col_id!r}") from None
        return int(self.cells[self.row_index(proposal_id), col])

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["proposal_id", *self.col_ids])
        for row_id, row in zip(self.row_ids, self.cells):
            writer.writerow([row_id, *(int(v) for v in row)])
        return buffer.getvalue()


def compute_coverage(corpus: Corpus, lexicon: Lexicon, granularity: str = "topic") -> CoverageMatrix:
    """Aggregate match records into a count matrix at the requested granularity.

    The topic matrix is exactly the keyword matrix summed over each topic's
    groups, because both are aggregated from the same records.
    """
    keyword_matrix = _keyword_matrix(corpus, lexicon)
    if granularity == "keyword":
        return keyword_matrix
    if granularity != "topic":
        raise AnalysisError(f"granularity must be 'topic' or 'keyword', got {granularity!r}")
    return aggregate_by_topic(keyword_matrix, lexicon)


def _keyword_matrix(corpus: Corpus, lexicon: Lexicon) -> CoverageMatrix:
    row_ids = tuple(corpus.ids())
    col_ids = tuple(lexicon.canonicals())
    row_pos = {pid: i for i, pid in enumerate(row_ids)}
    col_pos = {canonical: j for j, canonical in enumerate(col_ids)}
    cells = np.zeros((len(row_ids), len(col_ids)), dtype=np.int64)
    for record in match_corpus(corpus, lexicon):
        cells[row_pos[record.proposal_id], col_pos[record.canonical]] += record.count
    return CoverageMatrix("keyword", row_ids, col_ids, cells)


def aggregate_by_topic(keyword_matrix: CoverageMatrix, lexicon: Lexicon) -> CoverageMatrix:
    if keyword_matrix.granularity != "keyword":
        raise AnalysisError("aggregate_by_topic expects a keyword-granularity matrix")
    topic_names = tuple(lexicon.topic_names())
    topic_of = {g.canonical: t.name for t in lexicon.topics for g in t.groups}
    topic_pos = {name: j for j, name in enumerate(topic_names)}
    cells = np.zeros((len(keyword_matrix.row_ids), len(topic_names)), dtype=np.int64)
    for j, canonical in enumerate(keyword_matrix.col_ids):
        cells[:, topic_pos[topic_of[canonical]]] += keyword_matrix.cells[:, j]
    return CoverageMatrix("topic", keyword_matrix.row_ids, topic_names, cells)


def topic_coverage_percent(matrix: CoverageMatrix, proposal_id: str) -> float:
    """Fraction of topics with at least one match for the proposal."""
    if matrix.granularity != "topic":
        raise AnalysisError("topic_coverage_percent requires a topic-granularity matrix")
    row = matrix.row(proposal_id)
    return float(np.count_nonzero(row)) / len(matrix.col_ids)


@dataclass(frozen=True)
class RankingEntry:
    proposal_id: str
    score: int  # distinct columns covered
    rank: int  # competition ranking: ties share, next rank skips


def rank_proposals(matrix: CoverageMatrix) -> list[RankingEntry]:
    """Rank proposals by distinct columns covered, competition style.

    Proposals sharing a score share a rank; the next distinct score's rank is
    one plus the number of strictly better proposals. Order inside a shared
    rank is lexicographic by proposal id, purely for determinism.
    """
    scores = {pid: int(np.count_nonzero(matrix.row(pid))) for pid in matrix.row_ids}
    ordered = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
    entries = []
    for pid, score in ordered:
        better = sum(1 for other in scores.values() if other > score)
        entries.append(RankingEntry(proposal_id=pid, score=score, rank=better + 1))
    return entries


@dataclass(frozen=True)
class GroupStats:
    publisher_type: PublisherType
    n: int
    mean: float
    standard_error: float | None  # None when n < 2
    mean_per_1000_tokens: float  # length-normalized companion figure, not the headline


@dataclass(frozen=True)
class PairwiseTest:
    type_a: PublisherType
    type_b: PublisherType
    available: bool
    t: float | None = None
    df: float | None = None
    p: float | None = None
    significant: bool | None = None
    degenerate: bool = False


@dataclass(frozen=True)
class GroupComparison:
    topic_name: str
    stats: tuple[GroupStats, ...]  # one per publisher type, fixed order
    tests: tuple[PairwiseTest, ...]  # one per unordered type pair, fixed order


def _proposal_token_count(proposal: Proposal) -> int:
    return sum(len(tokenize(it.title_text)) + len(tokenize(it.explanatory_text)) for it in proposal.items)


def compare_groups(matrix: CoverageMatrix, corpus: Corpus) -> list[GroupComparison]:
    """Per-topic publisher-group means, standard errors, and Welch tests.

    Group means are over per-proposal topic occurrence counts. A pairwise
    test is reported as unavailable when either group has fewer than two
    proposals; means are still reported. Significance is p < 0.05.
    """
    if matrix.granularity != "topic":
        raise AnalysisError("compare_groups requires a topic-granularity matrix")
    members: dict[PublisherType, list[str]] = {t: [] for t in PublisherType}
    token_counts: dict[str, int] = {}
    for proposal in corpus.proposals:
        if proposal.id not in matrix.row_ids:
            raise AnalysisError(f"matrix has no row for proposal {proposal.id!r}")
        members[proposal.publisher_type].append(proposal.id)
        token_counts[proposal.id] = _proposal_token_count(proposal)
    comparisons = []
    for j, topic_name in enumerate(matrix.col_ids):
        samples: dict[PublisherType, list[float]] = {}
        normalized: dict[PublisherType, list[float]] = {}
        for ptype in PublisherType:
            ids = members[ptype]
            samples[ptype] = [float(matrix.cells[matrix.row_index(pid), j]) for pid in ids]
            normalized[ptype] = [
                1000.0 * matrix.cells[matrix.row_index(pid), j] / token_counts[pid] if token_counts[pid] else 0.0
                for pid in ids
            ]
        stats = tuple(
            GroupStats(
                publisher_type=ptype,
                n=len(samples[ptype]),
                mean=mean(samples[ptype]) if samples[ptype] else 0.0,
                standard_error=standard_error(samples[ptype]) if len(samples[ptype]) >= 2 else None,
                mean_per_1000_tokens=mean(normalized[ptype]) if normalized[ptype] else 0.0,
            )
            for ptype in PublisherType
        )
        tests = []
        for type_a, type_b in combinations(PublisherType, 2):
            if len(samples[type_a]) < 2 or len(samples[type_b]) < 2:
                tests.append(PairwiseTest(type_a=type_a, type_b=type_b, available=False))
                continue
            result: WelchResult = welch_t_test(samples[type_a], samples[type_b])
            tests.append(
                PairwiseTest(
                    type_a=type_a,
                    type_b=type_b,
                    available=True,
                    t=result.t,
                    df=result.df,
                    p=result.p,
                    significant=result.p < SIGNIFICANCE_LEVEL,
                    degenerate=result.degenerate,
                )
            )
        comparisons.append(GroupComparison(topic_name=topic_name, stats=stats, tests=tuple(tests)))
    return comparisons


def group_comparisons_to_dict(comparisons: list[GroupComparison]) -> list[dict]:
    """JSON-ready form of the comparisons, field order fixed."""

    def fnum(value: float | None) -> float | None:
        if value is None or not np.isfinite(value):
            return None
        return value

    out = []
    for comparison in comparisons:
        out.append(
            {
                "topic_name": comparison.topic_name,
                "groups": [
                    {
                        "publisher_type": s.publisher_type.value,
                        "n": s.n,
                        "mean": fnum(s.mean),
                        "standard_error": fnum(s.standard_error),
                        "mean_per_1000_tokens": fnum(s.mean_per_1000_tokens),
                    }
                    for s in comparison.stats
                ],
                "tests": [
                    {
                        "pair": [t.type_a.value, t.type_b.value],
                        "available": t.available,
                        "t": fnum(t.t),
                        "df": fnum(t.df),
                        "p": fnum(t.p),
                        "significant": t.significant,
                        "degenerate": t.degenerate,
                    }
                    for t in comparison.tests
                ],
            }
        )
    return out
