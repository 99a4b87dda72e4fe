"""Keyword-term and paragraph-similarity search over principle items.

Keyword queries resolve to lexicon groups (a group matches when its canonical
or any variant tokenizes to the query's token sequence) and return the items
counted for those groups; a query matching no group falls back to a literal
token n-gram scan. Paragraph queries rank items by cosine similarity between
mean word vectors.

The item index persists to a small binary cache (magic ``LAIPIDX1``) so a
service restart can skip re-embedding.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .analysis import CoverageMatrix, MatchRecord, match_corpus, tokenize
from .corpus import Corpus
from .embeddings import EmbeddingTable, cosine_similarity, mean_vector
from .lexicon import Lexicon

INDEX_MAGIC = b"LAIPIDX1"
_ID_FIELD_WIDTH = 64


class SearchError(Exception):
    pass


@dataclass(frozen=True)
class SearchHit:
    proposal_id: str
    item_id: str
    score: float
    snippet: str


@dataclass(frozen=True)
class IndexEntry:
    proposal_id: str
    item_id: str
    vector: np.ndarray  # float32, length dim
    token_hits: int


@dataclass(frozen=True)
class ItemEmbeddingIndex:
    dim: int
    entries: tuple[IndexEntry, ...]

    def __len__(self) -> int:
        return len(self.entries)


def _sorted_hits(hits: list[SearchHit]) -> list[SearchHit]:
    return sorted(hits, key=lambda h: (-h.score, h.proposal_id, h.item_id))


def _resolve_groups(query_tokens: tuple[str, ...], lexicon: Lexicon) -> list[tuple[str, str]]:
    """(topic, canonical) pairs whose canonical or variants token-match the query."""
    resolved = []
    for topic in lexicon.topics:
        for group in topic.groups:
            for variant in group.variants:
                if tuple(tokenize(variant.text)) == query_tokens:
                    resolved.append((topic.name, group.canonical))
                    break
    return resolved


def _count_ngram(tokens: list[str], pattern: tuple[str, ...]) -> int:
    count = 0
    i = 0
    width = len(pattern)
    while i + width <= len(tokens):
        if tuple(tokens[i : i + width]) == pattern:
            count += 1
            i += width
        else:
            i += 1
    return count


def keyword_search(
    query: str,
    corpus: Corpus,
    lexicon: Lexicon,
    keyword_matrix: CoverageMatrix,
    records: list[MatchRecord] | None = None,
) -> list[SearchHit]:
    """Items matching the query's lexicon groups, scored by match count.

    Hits for a resolvable query are exactly the items counted under the
    resolved groups in the keyword matrix. A query resolving to no group is
    searched as a literal token n-gram over item texts. No hits yield an
    empty list. Precomputed ``records`` (from :func:`match_corpus` on the
    same corpus/lexicon) avoid re-matching on every query.
    """
    query_tokens = tuple(tokenize(query))
    if not query_tokens:
        return []
    resolved = _resolve_groups(query_tokens, lexicon)
    items = {(p.id, it.item_id): it for p in corpus.proposals for it in p.items}
    if resolved:
        wanted = {canonical for _, canonical in resolved}
        matrix_nonzero = {
            (pid, canonical)
            for canonical in wanted
            for pid in keyword_matrix.row_ids
            if keyword_matrix.cell(pid, canonical) >= 1
        }
        counts: dict[tuple[str, str], int] = {}
        for record in records if records is not None else match_corpus(corpus, lexicon):
            if record.canonical in wanted and (record.proposal_id, record.canonical) in matrix_nonzero:
                key = (record.proposal_id, record.item_id)
                counts[key] = counts.get(key, 0) + record.count
        hits = [
            SearchHit(proposal_id=pid, item_id=iid, score=float(count), snippet=items[(pid, iid)].title_text)
            for (pid, iid), count in counts.items()
        ]
        return _sorted_hits(hits)
    hits = []
    for proposal in corpus.proposals:
        for item in proposal.items:
            count = _count_ngram(tokenize(item.title_text), query_tokens)
            count += _count_ngram(tokenize(item.explanatory_text), query_tokens)
            if count >= 1:
                hits.append(
                    SearchHit(proposal_id=proposal.id, item_id=item.item_id, score=float(count), snippet=item.title_text)
                )
    return _sorted_hits(hits)


def matches_for_keyword(records: list[MatchRecord], canonical: str) -> set[str]:
    """Proposal ids with at least one match for the given keyword group."""
    return {r.proposal_id for r in records if r.canonical == canonical}


def embed_paragraph(text: str, table: EmbeddingTable) -> np.ndarray:
    """Mean vector of the text's in-vocabulary tokens (lowercase fallback lookup)."""
    vector = mean_vector(table, tokenize(text))
    if vector is None:
        raise SearchError("text has no in-vocabulary tokens")
    return vector


def build_index(corpus: Corpus, table: EmbeddingTable) -> ItemEmbeddingIndex:
    """Embed every item (title plus explanatory text) that has vocabulary overlap.

    Items whose tokens are all out-of-vocabulary are skipped, as is the
    degenerate case of token vectors averaging to an exactly zero vector.
    """
    entries = []
    for proposal in corpus.proposals:
        for item in proposal.items:
            tokens = tokenize(item.title_text) + tokenize(item.explanatory_text)
            hits = sum(1 for token in tokens if table.row_index(token) is not None)
            vector = mean_vector(table, tokens)
            if vector is None:
                continue
            if not np.any(vector):
                continue
            entries.append(
                IndexEntry(
                    proposal_id=proposal.id,
                    item_id=item.item_id,
                    vector=vector.astype(np.float32),
                    token_hits=hits,
                )
            )
    return ItemEmbeddingIndex(dim=table.dim, entries=tuple(entries))


def paragraph_search(
    query_text: str,
    index: ItemEmbeddingIndex,
    table: EmbeddingTable,
    k: int = 10,
) -> list[SearchHit]:
    """Top-``k`` items by cosine similarity to the query's mean vector.

    Ties break by (proposal_id, item_id). Raises :class:`SearchError` for a
    query with no in-vocabulary tokens or ``k < 1``; returns every entry when
    ``k`` exceeds the index size. Snippets are filled by the caller that owns
    the corpus (the index stores ids only), so this returns empty snippets.
    """
    if k < 1:
        raise SearchError("k must be >= 1")
    query = embed_paragraph(query_text, table)
    hits = [
        SearchHit(
            proposal_id=entry.proposal_id,
            item_id=entry.item_id,
            score=cosine_similarity(query, entry.vector.astype(np.float64)),
            snippet="",
        )
        for entry in index.entries
    ]
    return _sorted_hits(hits)[:k]


def attach_snippets(hits: list[SearchHit], corpus: Corpus) -> list[SearchHit]:
    items = {(p.id, it.item_id): it.title_text for p in corpus.proposals for it in p.items}
    return [
        SearchHit(
            proposal_id=h.proposal_id,
            item_id=h.item_id,
            score=h.score,
            snippet=items.get((h.proposal_id, h.item_id), h.snippet),
        )
        for h in hits
    ]


def _pack_id(value: str) -> bytes:
    raw = value.encode("utf-8")
    if len(raw) > _ID_FIELD_WIDTH:
        raise SearchError(f"identifier too long for index record: {value!r}")
    return raw.ljust(_ID_FIELD_WIDTH, b"\x00")


def save_index(index: ItemEmbeddingIndex, path: str | Path) -> None:
    """Write the versioned binary cache: magic, dim, count, fixed-width records."""
    with open(path, "wb") as handle:
        handle.write(INDEX_MAGIC)
        handle.write(struct.pack("<II", index.dim, len(index.entries)))
        for entry in index.entries:
            handle.write(_pack_id(entry.proposal_id))
            handle.write(_pack_id(entry.item_id))
            handle.write(struct.pack("<I", entry.token_hits))
            handle.write(struct.pack(f"<{index.dim}f", *entry.vector.tolist()))


def load_index(path: str | Path) -> ItemEmbeddingIndex:
    data = Path(path).read_bytes()
    if data[: len(INDEX_MAGIC)] != INDEX_MAGIC:
        raise SearchError(f"{path}: not an item-index cache (bad magic)")
    offset = len(INDEX_MAGIC)
    dim, count = struct.unpack_from("<II", data, offset)
    offset += 8
    record_size = 2 * _ID_FIELD_WIDTH + 4 + 4 * dim
    if len(data) != offset + count * record_size:
        raise SearchError(f"{path}: truncated index cache")
    entries = []
    for _ in range(count):
        pid = data[offset : offset + _ID_FIELD_WIDTH].rstrip(b"\x00").decode("utf-8")
        offset += _ID_FIELD_WIDTH
        iid = data[offset : offset + _ID_FIELD_WIDTH].rstrip(b"\x00").decode("utf-8")
        offset += _ID_FIELD_WIDTH
        (token_hits,) = struct.unpack_from("<I", data, offset)
        offset += 4
        vector = np.frombuffer(data, dtype="<f4", count=dim, offset=offset).copy()
        offset += 4 * dim
        entries.append(IndexEntry(proposal_id=pid, item_id=iid, vector=vector, token_hits=token_hits))
    return ItemEmbeddingIndex(dim=dim, entries=tuple(entries))
