"""Topic lexicon: keyword groups, their variant sets, and embedding-driven expansion.

A lexicon is an ordered list of topics; each topic holds keyword groups; each
group is a canonical keyword plus expanded variants tagged with provenance:

- ``manual``: curated words/phrases, including the canonical itself;
- ``morphological``: inflections recorded by a curator;
- ``embedding``: nearest-neighbor words accepted at a similarity cutoff (the
  score they were accepted at travels with the variant).

Expansion is mechanized through a curation file so builds are reproducible:
an automatic similarity threshold applies whenever the curator has not
recorded a decision for a keyword.

Lexicon file: ``{"topics": [{"name", "groups": [{"canonical",
"variants": [{"text", "provenance", "similarity"?}]}]}]}``.
Curation file: JSON list of ``{"topic", "canonical", "accept": [...],
"reject": [...], "add_manual": [...], "add_morphological": [...]}``.
"""

from __future__ import annotations

import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .embeddings import EmbeddingTable, Neighbor, cosine_similarity, nearest_neighbors

log = logging.getLogger(__name__)

DEFAULT_THRESHOLD = 0.55
DEFAULT_CANDIDATE_K = 30


class LexiconError(Exception):
    """Raised for malformed lexicon/curation files and bad references."""


class ProvenanceKind(Enum):
    MANUAL = "manual"
    MORPHOLOGICAL = "morphological"
    EMBEDDING = "embedding"


@dataclass(frozen=True)
class VariantProvenance:
    kind: ProvenanceKind
    similarity: float | None = None

    def __post_init__(self) -> None:
        if self.kind is ProvenanceKind.EMBEDDING and self.similarity is None:
            raise LexiconError("embedding provenance requires the similarity it was accepted at")
        if self.kind is not ProvenanceKind.EMBEDDING and self.similarity is not None:
            raise LexiconError(f"{self.kind.value} provenance must not carry a similarity")


MANUAL = VariantProvenance(ProvenanceKind.MANUAL)
MORPHOLOGICAL = VariantProvenance(ProvenanceKind.MORPHOLOGICAL)


def embedding_provenance(similarity: float) -> VariantProvenance:
    return VariantProvenance(ProvenanceKind.EMBEDDING, similarity)


@dataclass(frozen=True)
class Variant:
    text: str
    provenance: VariantProvenance

    def __post_init__(self) -> None:
        if not self.text or self.text != self.text.lower():
            raise LexiconError(f"variant text must be non-empty lowercase, got {self.text!r}")


@dataclass(frozen=True)
class KeywordGroup:
    """A canonical keyword and its variant surface forms.

    The canonical is always present among the variants (provenance manual);
    the constructor inserts it when a file omits it.
    """

    canonical: str
    variants: tuple[Variant, ...] = ()

    def __post_init__(self) -> None:
        if not self.canonical or self.canonical != self.canonical.lower():
            raise LexiconError(f"canonical keyword must be non-empty lowercase, got {self.canonical!r}")
        if all(v.text != self.canonical for v in self.variants):
            object.__setattr__(self, "variants", (Variant(self.canonical, MANUAL),) + self.variants)
        texts = [v.text for v in self.variants]
        if len(texts) != len(set(texts)):
            dupes = sorted(t for t, n in Counter(texts).items() if n > 1)
            raise LexiconError(f"group {self.canonical!r}: duplicate variants {dupes}")

    def variant_texts(self) -> list[str]:
        return [v.text for v in self.variants]

    def with_added(self, additions: list[Variant]) -> "KeywordGroup":
        """Append variants not already present, preserving order."""
        existing = set(self.variant_texts())
        new = []
        for variant in additions:
            if variant.text not in existing:
                new.append(variant)
                existing.add(variant.text)
        if not new:
            return self
        return KeywordGroup(self.canonical, self.variants + tuple(new))

    def with_removed(self, texts: set[str]) -> "KeywordGroup":
        """Drop variants whose text is in ``texts``; the canonical is kept."""
        kept = tuple(v for v in self.variants if v.text == self.canonical or v.text not in texts)
        return KeywordGroup(self.canonical, kept)


@dataclass(frozen=True)
class Topic:
    name: str
    groups: tuple[KeywordGroup, ...]

    def __post_init__(self) -> None:
        if not self.name:
            raise LexiconError("topic name must be non-empty")
        if not self.groups:
            raise LexiconError(f"topic {self.name!r} must have at least one keyword group")
        seen: set[str] = set()
        for group in self.groups:
            for text in group.variant_texts():
                if text in seen:
                    raise LexiconError(f"topic {self.name!r}: variant {text!r} appears in two groups")
                seen.add(text)


@dataclass(frozen=True)
class Lexicon:
    topics: tuple[Topic, ...]
    _index: dict[tuple[str, str], KeywordGroup] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.topics:
            raise LexiconError("lexicon must define at least one topic")
        names = [t.name for t in self.topics]
        if len(names) != len(set(names)):
            raise LexiconError("duplicate topic names")
        index: dict[tuple[str, str], KeywordGroup] = {}
        for topic in self.topics:
            for group in topic.groups:
                key = (topic.name, group.canonical)
                if key in index:
                    raise LexiconError(f"duplicate group {group.canonical!r} in topic {topic.name!r}")
                index[key] = group
        object.__setattr__(self, "_index", index)
        self._log_cross_topic_duplicates()

    def _log_cross_topic_duplicates(self) -> None:
        owners: dict[str, list[str]] = {}
        for topic in self.topics:
            for group in topic.groups:
                for text in group.variant_texts():
                    owners.setdefault(text, []).append(topic.name)
        for text, topic_names in sorted(owners.items()):
            distinct = sorted(set(topic_names))
            if len(distinct) > 1:
                log.info("variant %r is shared by topics %s", text, distinct)

    def topic_names(self) -> list[str]:
        return [t.name for t in self.topics]

    def canonicals(self) -> list[str]:
        return [g.canonical for t in self.topics for g in t.groups]

    def group(self, topic_name: str, canonical: str) -> KeywordGroup:
        try:
            return self._index[(topic_name, canonical)]
        except KeyError:
            raise LexiconError(f"unknown topic/canonical pair ({topic_name!r}, {canonical!r})") from None

    def to_dict(self) -> dict:
        def variant_dict(v: Variant) -> dict:
            out: dict = {"text": v.text, "provenance": v.provenance.kind.value}
            if v.provenance.similarity is not None:
                out["similarity"] = v.provenance.similarity
            return out

        return {
            "topics": [
                {
                    "name": topic.name,
                    "groups": [
                        {"canonical": g.canonical, "variants": [variant_dict(v) for v in g.variants]}
                        for g in topic.groups
                    ],
                }
                for topic in self.topics
            ]
        }


def _parse_variant(raw: dict, where: str) -> Variant:
    if not isinstance(raw, dict) or not set(raw) <= {"text", "provenance", "similarity"}:
        raise LexiconError(f"{where}: malformed variant entry {raw!r}")
    try:
        kind = ProvenanceKind(raw.get("provenance", "manual"))
    except ValueError:
        raise LexiconError(f"{where}: unknown provenance {raw.get('provenance')!r}") from None
    return Variant(str(raw.get("text", "")), VariantProvenance(kind, raw.get("similarity")))


def parse_lexicon(data: dict) -> Lexicon:
    if not isinstance(data, dict) or set(data) != {"topics"} or not isinstance(data["topics"], list):
        raise LexiconError("lexicon document must be an object with a single 'topics' list")
    topics = []
    for topic_raw in data["topics"]:
        if not isinstance(topic_raw, dict) or set(topic_raw) != {"name", "groups"}:
            raise LexiconError(f"malformed topic entry: {topic_raw!r}")
        name = str(topic_raw["name"])
        groups = []
        for group_raw in topic_raw["groups"]:
            if not isinstance(group_raw, dict) or set(group_raw) != {"canonical", "variants"}:
                raise LexiconError(f"topic {name!r}: malformed group entry")
            canonical = str(group_raw["canonical"])
            where = f"topic {name!r}, group {canonical!r}"
            variants = tuple(_parse_variant(v, where) for v in group_raw["variants"])
            groups.append(KeywordGroup(canonical, variants))
        topics.append(Topic(name, tuple(groups)))
    return Lexicon(tuple(topics))


def load_lexicon(path: str | Path) -> Lexicon:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise LexiconError(f"lexicon file not found: {path}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LexiconError(f"{path}: JSON syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_lexicon(data)


def save_lexicon(lexicon: Lexicon, path: str | Path) -> None:
    """Write the lexicon as deterministic JSON; load(save(L)) == L."""
    Path(path).write_text(
        json.dumps(lexicon.to_dict(), ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )


@dataclass(frozen=True)
class ExpansionResult:
    """Ranked candidates and the subset accepted at the similarity threshold."""

    candidates: tuple[Neighbor, ...]
    accepted: tuple[Variant, ...]
    oov: bool = False


def normalize_candidate(word: str) -> str:
    """Lowercase and turn underscore-joined phrase entries into spaced phrases."""
    return word.lower().replace("_", " ")


def expand_keyword(
    table: EmbeddingTable,
    canonical: str,
    candidate_k: int = DEFAULT_CANDIDATE_K,
    threshold: float = DEFAULT_THRESHOLD,
) -> ExpansionResult:
    """Generate ranked neighbor candidates for ``canonical`` and accept by threshold.

    Multi-word canonicals are never embedding-expanded and yield an empty
    candidate list; so do out-of-vocabulary canonicals, which additionally
    set the ``oov`` flag. Accepted words are lowercased, underscore-joined
    phrases become spaced phrases, and duplicates keep the best-scoring form.
    """
    if candidate_k < 1:
        raise LexiconError("candidate_k must be >= 1")
    if not 0.0 <= threshold <= 1.0:
        raise LexiconError("threshold must lie in [0, 1]")
    if " " in canonical:
        return ExpansionResult(candidates=(), accepted=())
    if table.row_index(canonical) is None:
        log.warning("canonical %r not in embedding vocabulary; no candidates", canonical)
        return ExpansionResult(candidates=(), accepted=(), oov=True)
    candidates = tuple(nearest_neighbors(table, canonical, candidate_k))
    accepted: list[Variant] = []
    seen: set[str] = set()
    for neighbor in candidates:
        if neighbor.score < threshold:
            continue
        text = normalize_candidate(neighbor.word)
        if text in seen:
            continue
        seen.add(text)
        accepted.append(Variant(text, embedding_provenance(neighbor.score)))
    return ExpansionResult(candidates=candidates, accepted=tuple(accepted))


@dataclass(frozen=True)
class CurationEntry:
    topic: str
    canonical: str
    accept: tuple[str, ...] = ()
    reject: tuple[str, ...] = ()
    add_manual: tuple[str, ...] = ()
    add_morphological: tuple[str, ...] = ()


_CURATION_FIELDS = {"topic", "canonical", "accept", "reject", "add_manual", "add_morphological"}


def load_curation(path: str | Path) -> list[CurationEntry]:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise LexiconError(f"curation file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise LexiconError(f"{path}: JSON syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_curation(data)


def parse_curation(data: object) -> list[CurationEntry]:
    if not isinstance(data, list):
        raise LexiconError("curation document must be a JSON list")
    entries = []
    for raw in data:
        if not isinstance(raw, dict) or not {"topic", "canonical"} <= set(raw) or not set(raw) <= _CURATION_FIELDS:
            raise LexiconError(f"malformed curation entry: {raw!r}")

        def str_list(key: str) -> tuple[str, ...]:
            values = raw.get(key, [])
            if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
                raise LexiconError(f"curation entry for {raw.get('canonical')!r}: {key} must be a list of strings")
            return tuple(v.lower() for v in values)

        entries.append(
            CurationEntry(
                topic=str(raw["topic"]),
                canonical=str(raw["canonical"]),
                accept=str_list("accept"),
                reject=str_list("reject"),
                add_manual=str_list("add_manual"),
                add_morphological=str_list("add_morphological"),
            )
        )
    return entries


def apply_curation(
    lexicon: Lexicon,
    curation: list[CurationEntry],
    table: EmbeddingTable | None = None,
) -> Lexicon:
    """Apply recorded curator decisions; idempotent for a fixed curation list.

    ``accept`` entries are inserted with embedding provenance when their
    similarity to the canonical can be computed from ``table``; without a
    table an accept for a variant that is not already present is skipped with
    a warning (its acceptance score is unknowable). ``reject`` removes
    variants; manual/morphological additions are inserted as declared.
    Unknown topic/canonical references raise :class:`LexiconError`.
    """
    by_key: dict[tuple[str, str], CurationEntry] = {}
    for entry in curation:
        lexicon.group(entry.topic, entry.canonical)  # validates the reference
        by_key[(entry.topic, entry.canonical)] = entry
    topics = []
    for topic in lexicon.topics:
        # Texts rejected anywhere in this topic stop counting as claimed, so a
        # curation that moves a variant between sibling groups stays idempotent.
        rejected = {text for (name, _), e in by_key.items() if name == topic.name for text in e.reject}
        canonicals = {group.canonical for group in topic.groups}
        claimed = {
            text
            for group in topic.groups
            for text in group.variant_texts()
            if text not in rejected or text in canonicals
        }
        groups = []
        for group in topic.groups:
            entry = by_key.get((topic.name, group.canonical))
            if entry is None:
                groups.append(group)
                continue
            additions: list[Variant] = []
            for text in entry.accept:
                if text in claimed:
                    continue
                score = _accept_similarity(table, group.canonical, text)
                if score is None:
                    log.warning(
                        "curation accept %r for %r skipped: similarity unavailable", text, group.canonical
                    )
                    continue
                claimed.add(text)
                additions.append(Variant(text, embedding_provenance(score)))
            for text, provenance in [(t, MANUAL) for t in entry.add_manual] + [
                (t, MORPHOLOGICAL) for t in entry.add_morphological
            ]:
                if text in claimed:
                    if text not in group.variant_texts():
                        log.warning(
                            "curation addition %r for %r skipped: already claimed within topic %r",
                            text,
                            group.canonical,
                            topic.name,
                        )
                    continue
                claimed.add(text)
                additions.append(Variant(text, provenance))
            updated = group.with_added(additions)
            if entry.reject:
                updated = updated.with_removed(set(entry.reject))
            groups.append(updated)
        topics.append(Topic(topic.name, tuple(groups)))
    return Lexicon(tuple(topics))


def _accept_similarity(table: EmbeddingTable | None, canonical: str, text: str) -> float | None:
    if table is None:
        return None
    canonical_row = table.row_index(canonical)
    variant_row = table.row_index(text.replace(" ", "_"))
    if variant_row is None:
        variant_row = table.row_index(text)
    if canonical_row is None or variant_row is None:
        return None
    return cosine_similarity(table.vectors[canonical_row], table.vectors[variant_row])


def expand_lexicon(
    lexicon: Lexicon,
    table: EmbeddingTable,
    candidate_k: int = DEFAULT_CANDIDATE_K,
    threshold: float = DEFAULT_THRESHOLD,
    curation: list[CurationEntry] | None = None,
) -> tuple[Lexicon, dict[tuple[str, str], ExpansionResult]]:
    """Expand every group via embeddings, then apply curation decisions.

    Returns the expanded lexicon together with the per-keyword expansion
    results (for review listings). Variants equal to another variant already
    in the group are dropped; within a topic, a candidate already claimed by
    a sibling group is skipped so topic-level uniqueness holds.
    """
    results: dict[tuple[str, str], ExpansionResult] = {}
    topics = []
    for topic in lexicon.topics:
        claimed = {text for g in topic.groups for text in g.variant_texts()}
        groups = []
        for group in topic.groups:
            result = expand_keyword(table, group.canonical, candidate_k, threshold)
            results[(topic.name, group.canonical)] = result
            additions = []
            for variant in result.accepted:
                if variant.text in claimed:
                    continue
                claimed.add(variant.text)
                additions.append(variant)
            groups.append(group.with_added(additions))
        topics.append(Topic(topic.name, tuple(groups)))
    expanded = Lexicon(tuple(topics))
    if curation:
        expanded = apply_curation(expanded, curation, table=table)
    return expanded, results
