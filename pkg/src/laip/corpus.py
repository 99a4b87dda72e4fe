"""Structured corpus of AI-principle proposals grouped by publisher background.

The corpus file is a single UTF-8 JSON document::

    {"proposals": [{"id", "title", "publisher", "publisher_type", "year",
                    "source_url", "items": [{"item_id", "title_text",
                    "explanatory_text"}]}]}

``publisher_type`` is one of ``academia_ngo``, ``government``, ``industry``.
Unknown fields are rejected so that snapshot files stay self-describing.
A loaded :class:`Corpus` is immutable and safe to share across threads.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path


class CorpusError(Exception):
    """Raised for unreadable, malformed, or invariant-violating corpus files."""


class PublisherType(Enum):
    ACADEMIA_NGO = "academia_ngo"
    GOVERNMENT = "government"
    INDUSTRY = "industry"


_ID_RE = re.compile(r"^[a-z0-9-]+$")

_PROPOSAL_FIELDS = {"id", "title", "publisher", "publisher_type", "year", "source_url", "items"}
_ITEM_FIELDS = {"item_id", "title_text", "explanatory_text"}


@dataclass(frozen=True)
class PrincipleItem:
    item_id: str
    title_text: str
    explanatory_text: str = ""

    def __post_init__(self) -> None:
        if not self.item_id:
            raise CorpusError("principle item is missing item_id")
        if not self.title_text.strip():
            raise CorpusError(f"item {self.item_id!r}: title_text must contain a non-whitespace character")


@dataclass(frozen=True)
class Proposal:
    id: str
    title: str
    publisher: str
    publisher_type: PublisherType
    year: int
    source_url: str
    items: tuple[PrincipleItem, ...]

    def __post_init__(self) -> None:
        if not _ID_RE.match(self.id):
            raise CorpusError(f"proposal id {self.id!r} is not a lowercase [a-z0-9-]+ slug")
        if not self.items:
            raise CorpusError(f"proposal {self.id!r} has no items")
        if not isinstance(self.year, int) or isinstance(self.year, bool):
            raise CorpusError(f"proposal {self.id!r}: year must be an integer")
        seen = set()
        for item in self.items:
            if item.item_id in seen:
                raise CorpusError(f"proposal {self.id!r}: duplicate item_id {item.item_id!r}")
            seen.add(item.item_id)


@dataclass(frozen=True)
class Corpus:
    proposals: tuple[Proposal, ...]
    _by_id: dict[str, Proposal] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.proposals:
            raise CorpusError("empty corpus: at least one proposal is required")
        by_id: dict[str, Proposal] = {}
        for prop in self.proposals:
            if prop.id in by_id:
                raise CorpusError(f"duplicate proposal id {prop.id!r}")
            by_id[prop.id] = prop
        object.__setattr__(self, "_by_id", by_id)

    def __len__(self) -> int:
        return len(self.proposals)

    def __contains__(self, proposal_id: str) -> bool:
        return proposal_id in self._by_id

    def get(self, proposal_id: str) -> Proposal:
        try:
            return self._by_id[proposal_id]
        except KeyError:
            raise CorpusError(f"unknown proposal id {proposal_id!r}") from None

    def ids(self) -> list[str]:
        return [p.id for p in self.proposals]

    def to_dict(self) -> dict:
        return {
            "proposals": [
                {
                    "id": p.id,
                    "title": p.title,
                    "publisher": p.publisher,
                    "publisher_type": p.publisher_type.value,
                    "year": p.year,
                    "source_url": p.source_url,
                    "items": [
                        {
                            "item_id": it.item_id,
                            "title_text": it.title_text,
                            "explanatory_text": it.explanatory_text,
                        }
                        for it in p.items
                    ],
                }
                for p in self.proposals
            ]
        }


def _require_str(obj: dict, key: str, where: str) -> str:
    value = obj.get(key)
    if not isinstance(value, str):
        raise CorpusError(f"{where}: field {key!r} must be a string")
    return value


def _parse_item(raw: dict, where: str) -> PrincipleItem:
    if not isinstance(raw, dict):
        raise CorpusError(f"{where}: item entries must be objects")
    unknown = set(raw) - _ITEM_FIELDS
    if unknown:
        raise CorpusError(f"{where}: unknown item fields {sorted(unknown)}")
    return PrincipleItem(
        item_id=_require_str(raw, "item_id", where),
        title_text=_require_str(raw, "title_text", where),
        explanatory_text=_require_str(raw, "explanatory_text", where) if "explanatory_text" in raw else "",
    )


def _parse_proposal(raw: dict) -> Proposal:
    if not isinstance(raw, dict):
        raise CorpusError("proposal entries must be objects")
    pid = raw.get("id")
    where = f"proposal {pid!r}"
    unknown = set(raw) - _PROPOSAL_FIELDS
    if unknown:
        raise CorpusError(f"{where}: unknown fields {sorted(unknown)}")
    type_raw = _require_str(raw, "publisher_type", where)
    try:
        publisher_type = PublisherType(type_raw)
    except ValueError:
        valid = ", ".join(t.value for t in PublisherType)
        raise CorpusError(f"{where}: publisher_type {type_raw!r} not one of {valid}") from None
    items_raw = raw.get("items")
    if not isinstance(items_raw, list):
        raise CorpusError(f"{where}: 'items' must be a list")
    year = raw.get("year")
    if not isinstance(year, int) or isinstance(year, bool):
        raise CorpusError(f"{where}: year must be an integer")
    return Proposal(
        id=_require_str(raw, "id", where),
        title=_require_str(raw, "title", where),
        publisher=_require_str(raw, "publisher", where),
        publisher_type=publisher_type,
        year=year,
        source_url=_require_str(raw, "source_url", where),
        items=tuple(_parse_item(item, where) for item in items_raw),
    )


def parse_corpus(data: dict) -> Corpus:
    """Build a validated Corpus from already-decoded JSON data."""
    if not isinstance(data, dict) or set(data) != {"proposals"}:
        raise CorpusError("corpus document must be an object with a single 'proposals' field")
    proposals = data["proposals"]
    if not isinstance(proposals, list):
        raise CorpusError("'proposals' must be a list")
    return Corpus(proposals=tuple(_parse_proposal(p) for p in proposals))


def load_corpus(path: str | Path) -> Corpus:
    """Load and validate a corpus file; parse order is preserved.

    Raises :class:`CorpusError` for a missing file, a JSON syntax error
    (with line/column position), or any invariant violation.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise CorpusError(f"corpus file not found: {path}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorpusError(f"{path}: JSON syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_corpus(data)


def group_by_publisher(corpus: Corpus) -> dict[PublisherType, list[Proposal]]:
    """Partition proposals by publisher type, preserving corpus order.

    All three publisher types are present as keys even when empty.
    """
    groups: dict[PublisherType, list[Proposal]] = {t: [] for t in PublisherType}
    for proposal in corpus.proposals:
        groups[proposal.publisher_type].append(proposal)
    return groups
