"""Pretrained word-embedding tables: interchange-format parsing and similarity queries.

Two bit-exact interchange formats are supported:

- text: a header line ``"<count> <dim>\\n"`` (ASCII decimals, single space),
  then ``count`` lines ``"<word> <f1> ... <f_dim>\\n"`` with decimal real
  components.
- binary: the same ASCII header line, then per word the word's bytes
  terminated by a single ``0x20``, followed by ``dim`` little-endian 32-bit
  IEEE-754 floats; an optional ``0x0A`` after the floats is consumed.

Components are stored as 32-bit floats; all similarity arithmetic accumulates
in 64 bits so results are deterministic across platforms at the documented
tolerances. Tables are immutable after load and safe for concurrent queries.
"""

from __future__ import annotations

import logging
import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import BinaryIO, Iterable, Sequence

import numpy as np

log = logging.getLogger(__name__)

#: Default vocabulary cap. Interchange files are frequency-ordered, so the
#: first entries are the most useful ones; 200k keeps memory below 1 GB for
#: 300-dimensional vectors.
DEFAULT_VOCAB_LIMIT = 200_000

# Rows are processed in fixed-size chunks so 64-bit accumulation never
# materializes a float64 copy of the whole matrix.
_CHUNK_ROWS = 16_384


class EmbeddingError(Exception):
    """Raised for malformed embedding files and invalid similarity queries."""


@dataclass(frozen=True)
class Neighbor:
    word: str
    score: float


@dataclass(frozen=True)
class EmbeddingTable:
    """Vocabulary -> dense float32 vector map with precomputed 64-bit norms."""

    dim: int
    vocab: dict[str, int]
    vectors: np.ndarray
    norms: np.ndarray = field(repr=False)
    n_duplicates_skipped: int = 0
    n_invalid_skipped: int = 0

    def __post_init__(self) -> None:
        if self.vectors.shape != (len(self.vocab), self.dim):
            raise EmbeddingError(
                f"vector matrix shape {self.vectors.shape} does not match "
                f"|vocab|={len(self.vocab)}, dim={self.dim}"
            )

    def __len__(self) -> int:
        return len(self.vocab)

    def __contains__(self, word: str) -> bool:
        return word in self.vocab

    def row_index(self, word: str) -> int | None:
        """Index of ``word``, trying the verbatim form first, then lowercase."""
        idx = self.vocab.get(word)
        if idx is None:
            idx = self.vocab.get(word.lower())
        return idx

    def vector(self, word: str) -> np.ndarray:
        idx = self.row_index(word)
        if idx is None:
            raise EmbeddingError(f"word not in vocabulary: {word!r}")
        return self.vectors[idx]

    def words(self) -> list[str]:
        ordered = [""] * len(self.vocab)
        for word, idx in self.vocab.items():
            ordered[idx] = word
        return ordered


def _finalize_table(
    words: list[str],
    rows: list[np.ndarray],
    dim: int,
    n_duplicates: int,
    n_invalid: int,
) -> EmbeddingTable:
    vocab = {word: i for i, word in enumerate(words)}
    if rows:
        matrix = np.vstack(rows).astype(np.float32, copy=False)
    else:
        matrix = np.zeros((0, dim), dtype=np.float32)
    norms = np.empty(len(words), dtype=np.float64)
    for start in range(0, matrix.shape[0], _CHUNK_ROWS):
        chunk = matrix[start : start + _CHUNK_ROWS].astype(np.float64)
        norms[start : start + chunk.shape[0]] = np.sqrt(np.einsum("ij,ij->i", chunk, chunk))
    if n_duplicates:
        log.warning("skipped %d duplicate vocabulary entries (first occurrence kept)", n_duplicates)
    if n_invalid:
        log.warning("skipped %d zero-norm or non-finite vectors", n_invalid)
    return EmbeddingTable(
        dim=dim,
        vocab=vocab,
        vectors=matrix,
        norms=norms,
        n_duplicates_skipped=n_duplicates,
        n_invalid_skipped=n_invalid,
    )


def _parse_header(line: bytes, path: Path) -> tuple[int, int]:
    try:
        text = line.decode("ascii")
    except UnicodeDecodeError:
        raise EmbeddingError(f"{path}: header is not ASCII") from None
    parts = text.rstrip("\n").split(" ")
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise EmbeddingError(f"{path}: malformed header {text.rstrip()!r}; expected '<count> <dim>'")
    count, dim = int(parts[0]), int(parts[1])
    if count < 1 or dim < 1:
        raise EmbeddingError(f"{path}: header count and dim must be positive, got {count} {dim}")
    return count, dim


def _row_is_valid(row: np.ndarray) -> bool:
    return bool(np.all(np.isfinite(row)) and np.any(row != 0.0))


def _load_text(handle: BinaryIO, path: Path, limit: int | None) -> EmbeddingTable:
    count, dim = _parse_header(handle.readline(), path)
    n_records = count if limit is None else min(count, limit)
    words: list[str] = []
    seen: set[str] = set()
    rows: list[np.ndarray] = []
    n_dup = n_invalid = 0
    for record in range(n_records):
        line = handle.readline()
        if not line:
            raise EmbeddingError(f"{path}: truncated file, expected {n_records} records, got {record}")
        try:
            decoded = line.decode("utf-8")
        except UnicodeDecodeError:
            raise EmbeddingError(f"{path}: record {record + 1} is not valid UTF-8") from None
        parts = decoded.rstrip("\n").split(" ")
        if len(parts) != dim + 1:
            raise EmbeddingError(
                f"{path}: record {record + 1}: expected word plus {dim} components, got {len(parts) - 1}"
            )
        word = parts[0]
        if not word:
            raise EmbeddingError(f"{path}: record {record + 1}: empty word")
        try:
            row = np.array([float(p) for p in parts[1:]], dtype=np.float32)
        except ValueError:
            raise EmbeddingError(f"{path}: record {record + 1}: non-numeric component") from None
        if word in seen:
            n_dup += 1
            continue
        if not _row_is_valid(row):
            n_invalid += 1
            continue
        seen.add(word)
        words.append(word)
        rows.append(row)
    return _finalize_table(words, rows, dim, n_dup, n_invalid)


def _read_word(handle: BinaryIO, path: Path, record: int) -> str:
    chars = bytearray()
    while True:
        byte = handle.read(1)
        if not byte:
            raise EmbeddingError(f"{path}: truncated file while reading word of record {record + 1}")
        if byte == b" ":
            break
        chars += byte
    if not chars:
        raise EmbeddingError(f"{path}: record {record + 1}: empty word")
    try:
        return chars.decode("utf-8")
    except UnicodeDecodeError:
        raise EmbeddingError(f"{path}: record {record + 1}: word is not valid UTF-8") from None


def _load_binary(handle: BinaryIO, path: Path, limit: int | None) -> EmbeddingTable:
    count, dim = _parse_header(handle.readline(), path)
    n_records = count if limit is None else min(count, limit)
    record_size = 4 * dim
    words: list[str] = []
    seen: set[str] = set()
    rows: list[np.ndarray] = []
    n_dup = n_invalid = 0
    for record in range(n_records):
        word = _read_word(handle, path, record)
        blob = handle.read(record_size)
        if len(blob) != record_size:
            raise EmbeddingError(f"{path}: truncated vector for word {word!r}")
        row = np.frombuffer(blob, dtype="<f4").astype(np.float32, copy=True)
        # word2vec writers differ on whether a newline follows the floats.
        pos = handle.tell()
        trailing = handle.read(1)
        if trailing and trailing != b"\n":
            handle.seek(pos)
        if word in seen:
            n_dup += 1
            continue
        if not _row_is_valid(row):
            n_invalid += 1
            continue
        seen.add(word)
        words.append(word)
        rows.append(row)
    return _finalize_table(words, rows, dim, n_dup, n_invalid)


def load_embeddings(
    path: str | Path,
    format: str = "text",
    limit: int | None = DEFAULT_VOCAB_LIMIT,
) -> EmbeddingTable:
    """Parse an embedding interchange file into an :class:`EmbeddingTable`.

    ``limit`` caps the vocabulary to the first ``limit`` records of the file
    (``None`` reads everything). Duplicate words keep their first occurrence;
    zero-norm or non-finite vectors are skipped. Both kinds of skip are
    counted on the returned table.
    """
    path = Path(path)
    if format not in ("text", "binary"):
        raise EmbeddingError(f"unknown embedding format {format!r}; expected 'text' or 'binary'")
    if limit is not None and limit < 1:
        raise EmbeddingError("limit must be a positive integer")
    try:
        handle = open(path, "rb")
    except FileNotFoundError:
        raise EmbeddingError(f"embedding file not found: {path}") from None
    with handle:
        if format == "text":
            return _load_text(handle, path, limit)
        return _load_binary(handle, path, limit)


def cosine_similarity(u: Sequence[float] | np.ndarray, v: Sequence[float] | np.ndarray) -> float:
    """dot(u, v) / (|u| * |v|), accumulated in 64-bit floats."""
    a = np.asarray(u, dtype=np.float64)
    b = np.asarray(v, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise EmbeddingError(f"cosine_similarity: length mismatch ({a.shape} vs {b.shape})")
    norm_a = float(np.sqrt(np.dot(a, a)))
    norm_b = float(np.sqrt(np.dot(b, b)))
    if norm_a == 0.0 or norm_b == 0.0:
        raise EmbeddingError("cosine_similarity: zero-norm input")
    return float(np.dot(a, b) / (norm_a * norm_b))


def _scores_against_all(table: EmbeddingTable, query_row: int) -> np.ndarray:
    query = table.vectors[query_row].astype(np.float64)
    query_norm = table.norms[query_row]
    scores = np.empty(len(table), dtype=np.float64)
    for start in range(0, table.vectors.shape[0], _CHUNK_ROWS):
        chunk = table.vectors[start : start + _CHUNK_ROWS].astype(np.float64)
        scores[start : start + chunk.shape[0]] = chunk @ query
    return scores / (table.norms * query_norm)


def nearest_neighbors(table: EmbeddingTable, word: str, k: int) -> list[Neighbor]:
    """Top-``k`` vocabulary words by cosine similarity to ``word``.

    The query word itself is excluded. Results are sorted by score
    descending; equal scores are broken by ascending word order, so the
    output is deterministic. Fewer than ``k`` results are returned when the
    vocabulary is small.
    """
    if k < 1:
        raise EmbeddingError("k must be >= 1")
    row = table.row_index(word)
    if row is None:
        raise EmbeddingError(f"word not in vocabulary: {word!r}")
    scores = _scores_against_all(table, row)
    words = table.words()
    ranked = sorted(
        ((words[i], scores[i]) for i in range(len(words)) if i != row),
        key=lambda pair: (-pair[1], pair[0]),
    )
    return [Neighbor(word=w, score=float(s)) for w, s in ranked[:k]]


def mean_vector(table: EmbeddingTable, tokens: Iterable[str]) -> np.ndarray | None:
    """Arithmetic mean of the vectors of in-vocabulary tokens, in float64.

    Out-of-vocabulary tokens are skipped; returns ``None`` when no token is
    in the vocabulary.
    """
    total = np.zeros(table.dim, dtype=np.float64)
    n = 0
    for token in tokens:
        idx = table.row_index(token)
        if idx is not None:
            total += table.vectors[idx].astype(np.float64)
            n += 1
    if n == 0:
        return None
    return total / n


def write_embeddings_text(path: str | Path, words: Sequence[str], matrix: np.ndarray) -> None:
    """Write a text-format interchange file that round-trips bit-exactly.

    Components are written as the shortest decimal that parses back to the
    same float32 value.
    """
    matrix = np.asarray(matrix, dtype=np.float32)
    with open(path, "wb") as handle:
        handle.write(f"{len(words)} {matrix.shape[1]}\n".encode("ascii"))
        for word, row in zip(words, matrix):
            comps = " ".join(repr(float(x)) for x in row)
            handle.write(f"{word} {comps}\n".encode("utf-8"))


def write_embeddings_binary(path: str | Path, words: Sequence[str], matrix: np.ndarray) -> None:
    """Write a binary-format interchange file (trailing newline per record)."""
    matrix = np.asarray(matrix, dtype=np.float32)
    with open(path, "wb") as handle:
        handle.write(f"{len(words)} {matrix.shape[1]}\n".encode("ascii"))
        for word, row in zip(words, matrix):
            handle.write(word.encode("utf-8") + b" ")
            handle.write(struct.pack(f"<{matrix.shape[1]}f", *row.tolist()))
            handle.write(b"\n")
