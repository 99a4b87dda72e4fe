"""RDF linkage graph: builds proposal-topic-keyword triples and serializes them.

Everything receives a stable IRI minted from corpus/lexicon identifiers under
a configurable base; blank nodes are never emitted, so graphs diff cleanly.
Triples are deduplicated and always emitted in canonical order (lexicographic
on the serialized subject, predicate, object), making both concrete syntaxes
byte-deterministic for a given graph.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .analysis import CoverageMatrix
from .corpus import Corpus
from .lexicon import Lexicon

DEFAULT_BASE_IRI = "http://linking-ai-principles.example/"

RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
OWL_CLASS = "http://www.w3.org/2002/07/owl#Class"
OWL_OBJECT_PROPERTY = "http://www.w3.org/2002/07/owl#ObjectProperty"
OWL_DATATYPE_PROPERTY = "http://www.w3.org/2002/07/owl#DatatypeProperty"
OWL_SYMMETRIC_PROPERTY = "http://www.w3.org/2002/07/owl#SymmetricProperty"

CLASSES = ("Proposal", "PrincipleItem", "Topic", "KeywordGroup")
OBJECT_PROPERTIES = ("coversTopic", "mentionsKeyword", "hasKeyword", "variantOf", "sharesTopicWith", "hasItem")
DATATYPE_PROPERTIES = ("publisherType", "title")

_IRI_RE = re.compile(r"^[a-zA-Z][a-zA-Z0-9+.-]*:")


class LinkingError(Exception):
    pass


@dataclass(frozen=True)
class Iri:
    value: str

    def __post_init__(self) -> None:
        if not _IRI_RE.match(self.value) or any(c.isspace() for c in self.value):
            raise LinkingError(f"not an absolute IRI: {self.value!r}")


@dataclass(frozen=True)
class Literal:
    text: str
    language: str | None = None


@dataclass(frozen=True)
class Triple:
    subject: Iri
    predicate: Iri
    object: Iri | Literal


@dataclass(frozen=True)
class LinkGraph:
    """Deduplicated triples held in canonical (s, p, o) serialization order."""

    triples: tuple[Triple, ...]

    @classmethod
    def from_triples(cls, triples: list[Triple] | set[Triple]) -> "LinkGraph":
        unique = set(triples)
        ordered = sorted(unique, key=lambda t: (_nt_term(t.subject), _nt_term(t.predicate), _nt_term(t.object)))
        return cls(triples=tuple(ordered))

    def __len__(self) -> int:
        return len(self.triples)

    def count_predicate(self, predicate: Iri) -> int:
        return sum(1 for t in self.triples if t.predicate == predicate)


def slugify(text: str) -> str:
    """Stable lowercase identifier: alphanumeric runs joined by single dashes."""
    parts = re.findall(r"[a-z0-9]+", text.lower())
    if not parts:
        raise LinkingError(f"cannot derive a slug from {text!r}")
    return "-".join(parts)


@dataclass(frozen=True)
class Vocabulary:
    """IRI factory for one base namespace."""

    base: str = DEFAULT_BASE_IRI

    def __post_init__(self) -> None:
        if not _IRI_RE.match(self.base):
            raise LinkingError(f"base IRI must be absolute, got {self.base!r}")
        if not self.base.endswith("/"):
            object.__setattr__(self, "base", self.base + "/")

    @property
    def ontology(self) -> str:
        return self.base + "ontology#"

    @property
    def resource(self) -> str:
        return self.base + "resource/"

    def term(self, name: str) -> Iri:
        return Iri(self.ontology + name)

    def proposal(self, proposal_id: str) -> Iri:
        return Iri(f"{self.resource}proposal-{proposal_id}")

    def item(self, proposal_id: str, item_id: str) -> Iri:
        return Iri(f"{self.resource}item-{proposal_id}-{slugify(item_id)}")

    def topic(self, name: str) -> Iri:
        return Iri(f"{self.resource}topic-{slugify(name)}")

    def keyword(self, canonical: str) -> Iri:
        return Iri(f"{self.resource}keyword-{slugify(canonical)}")

    def variant(self, canonical: str, text: str) -> Iri:
        return Iri(f"{self.resource}variant-{slugify(canonical)}--{slugify(text)}")


def build_graph(
    corpus: Corpus,
    lexicon: Lexicon,
    topic_matrix: CoverageMatrix,
    keyword_matrix: CoverageMatrix,
    base_iri: str = DEFAULT_BASE_IRI,
) -> LinkGraph:
    """Materialize the linkage graph for a corpus/lexicon/coverage snapshot.

    Emits schema declarations, typed instances with title literals,
    ``coversTopic``/``mentionsKeyword`` edges for nonzero matrix cells, the
    lexicon structure (``hasKeyword``, ``variantOf``), and a symmetric,
    irreflexive ``sharesTopicWith`` edge pair for every two proposals that
    cover a common topic.
    """
    if topic_matrix.granularity != "topic" or keyword_matrix.granularity != "keyword":
        raise LinkingError("build_graph needs one topic-granularity and one keyword-granularity matrix")
    vocab = Vocabulary(base_iri)
    rdf_type = Iri(RDF_TYPE)
    triples: list[Triple] = []

    for name in CLASSES:
        triples.append(Triple(vocab.term(name), rdf_type, Iri(OWL_CLASS)))
    for name in OBJECT_PROPERTIES:
        triples.append(Triple(vocab.term(name), rdf_type, Iri(OWL_OBJECT_PROPERTY)))
    for name in DATATYPE_PROPERTIES:
        triples.append(Triple(vocab.term(name), rdf_type, Iri(OWL_DATATYPE_PROPERTY)))
    triples.append(Triple(vocab.term("sharesTopicWith"), rdf_type, Iri(OWL_SYMMETRIC_PROPERTY)))

    title = vocab.term("title")
    for proposal in corpus.proposals:
        subject = vocab.proposal(proposal.id)
        triples.append(Triple(subject, rdf_type, vocab.term("Proposal")))
        triples.append(Triple(subject, title, Literal(proposal.title)))
        triples.append(Triple(subject, vocab.term("publisherType"), Literal(proposal.publisher_type.value)))
        for item in proposal.items:
            item_iri = vocab.item(proposal.id, item.item_id)
            triples.append(Triple(subject, vocab.term("hasItem"), item_iri))
            triples.append(Triple(item_iri, rdf_type, vocab.term("PrincipleItem")))
            triples.append(Triple(item_iri, title, Literal(item.title_text)))

    topic_iris: dict[str, Iri] = {}
    for topic in lexicon.topics:
        topic_iri = vocab.topic(topic.name)
        topic_iris[topic.name] = topic_iri
        triples.append(Triple(topic_iri, rdf_type, vocab.term("Topic")))
        triples.append(Triple(topic_iri, title, Literal(topic.name)))
        for group in topic.groups:
            group_iri = vocab.keyword(group.canonical)
            triples.append(Triple(group_iri, rdf_type, vocab.term("KeywordGroup")))
            triples.append(Triple(group_iri, title, Literal(group.canonical)))
            triples.append(Triple(topic_iri, vocab.term("hasKeyword"), group_iri))
            for variant in group.variants:
                variant_iri = vocab.variant(group.canonical, variant.text)
                triples.append(Triple(variant_iri, vocab.term("variantOf"), group_iri))
                triples.append(Triple(variant_iri, title, Literal(variant.text)))

    covers = vocab.term("coversTopic")
    for i, proposal_id in enumerate(topic_matrix.row_ids):
        for j, topic_name in enumerate(topic_matrix.col_ids):
            if topic_matrix.cells[i, j] >= 1:
                triples.append(Triple(vocab.proposal(proposal_id), covers, topic_iris[topic_name]))

    mentions = vocab.term("mentionsKeyword")
    for i, proposal_id in enumerate(keyword_matrix.row_ids):
        for j, canonical in enumerate(keyword_matrix.col_ids):
            if keyword_matrix.cells[i, j] >= 1:
                triples.append(Triple(vocab.proposal(proposal_id), mentions, vocab.keyword(canonical)))

    shares = vocab.term("sharesTopicWith")
    covered = {
        pid: {topic_matrix.col_ids[j] for j in range(len(topic_matrix.col_ids)) if topic_matrix.row(pid)[j] >= 1}
        for pid in topic_matrix.row_ids
    }
    ids = list(topic_matrix.row_ids)
    for a_pos in range(len(ids)):
        for b_pos in range(a_pos + 1, len(ids)):
            a, b = ids[a_pos], ids[b_pos]
            if covered[a] & covered[b]:
                triples.append(Triple(vocab.proposal(a), shares, vocab.proposal(b)))
                triples.append(Triple(vocab.proposal(b), shares, vocab.proposal(a)))

    return LinkGraph.from_triples(triples)


_NT_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}


def _escape_literal(text: str) -> str:
    out = []
    for char in text:
        if char in _NT_ESCAPES:
            out.append(_NT_ESCAPES[char])
        elif ord(char) < 0x20:
            raise LinkingError(f"unsupported control character {char!r} in literal")
        else:
            out.append(char)
    return "".join(out)


def _nt_term(term: Iri | Literal) -> str:
    if isinstance(term, Iri):
        return f"<{term.value}>"
    rendered = f'"{_escape_literal(term.text)}"'
    if term.language:
        rendered += f"@{term.language}"
    return rendered


def serialize_ntriples(graph: LinkGraph) -> str:
    """Canonical N-Triples: one triple per line, LF-terminated, final newline."""
    return "".join(f"{_nt_term(t.subject)} {_nt_term(t.predicate)} {_nt_term(t.object)} .\n" for t in graph.triples)


_PN_LOCAL_SAFE = re.compile(r"^[A-Za-z][A-Za-z0-9_-]*$")

_TURTLE_PREFIXES = (
    ("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"),
    ("owl", "http://www.w3.org/2002/07/owl#"),
)


def _turtle_term(term: Iri | Literal, prefixes: tuple[tuple[str, str], ...]) -> str:
    if isinstance(term, Literal):
        return _nt_term(term)
    for prefix, namespace in prefixes:
        if term.value.startswith(namespace):
            local = term.value[len(namespace):]
            if _PN_LOCAL_SAFE.match(local):
                return f"{prefix}:{local}"
    return f"<{term.value}>"


def serialize_turtle(graph: LinkGraph, base_iri: str = DEFAULT_BASE_IRI) -> str:
    """Turtle with a single @prefix block; triples in the same canonical order."""
    vocab = Vocabulary(base_iri)
    prefixes = _TURTLE_PREFIXES + (("ont", vocab.ontology), ("res", vocab.resource))
    lines = [f"@prefix {prefix}: <{namespace}> ." for prefix, namespace in prefixes]
    lines.append("")
    for triple in graph.triples:
        subject = _turtle_term(triple.subject, prefixes)
        predicate = _turtle_term(triple.predicate, prefixes)
        obj = _turtle_term(triple.object, prefixes)
        lines.append(f"{subject} {predicate} {obj} .")
    return "\n".join(lines) + "\n"
