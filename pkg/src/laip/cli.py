"""Command-line pipeline: validate, expand the lexicon, analyze, rank, compare, export, search, serve.

Every subcommand is reproducible: the same inputs yield byte-identical
outputs (fixed field order, floats at six significant digits). Exit codes:
0 success, 1 validation/data failure, 2 usage error. Diagnostics go to
standard error; data goes to files or standard output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .analysis import AnalysisError, group_comparisons_to_dict
from .corpus import CorpusError, group_by_publisher, load_corpus
from .embeddings import DEFAULT_VOCAB_LIMIT, EmbeddingError, load_embeddings
from .lexicon import (
    DEFAULT_CANDIDATE_K,
    DEFAULT_THRESHOLD,
    CurationEntry,
    LexiconError,
    expand_lexicon,
    load_curation,
    load_lexicon,
    save_lexicon,
)
from .linking import DEFAULT_BASE_IRI, LinkingError
from .search import SearchError, attach_snippets, keyword_search, paragraph_search
from .service import DEFAULT_BIND, DEFAULT_PORT, serve
from .snapshot import build_snapshot, bundled_data_path

_DataError = (CorpusError, LexiconError, EmbeddingError, AnalysisError, LinkingError, SearchError)


def _sig6(value: float) -> float:
    return float(f"{value:.6g}")


def _add_input_flags(parser: argparse.ArgumentParser, with_embeddings: bool = True) -> None:
    parser.add_argument("--corpus", default=str(bundled_data_path("corpus.json")), help="corpus JSON file")
    parser.add_argument("--lexicon", default=str(bundled_data_path("lexicon_base.json")), help="lexicon JSON file")
    if with_embeddings:
        parser.add_argument(
            "--embeddings", default=str(bundled_data_path("embeddings_demo.txt")), help="embedding interchange file"
        )
        parser.add_argument("--embeddings-format", choices=["text", "binary"], default="text")
        parser.add_argument("--limit", type=int, default=DEFAULT_VOCAB_LIMIT, help="vocabulary cap")


def _add_output_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-o", "--output-dir", default="out", help="directory for generated files")


def _write(path: Path, content: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(content, encoding="utf-8")
    print(f"wrote {path}", file=sys.stderr)


def _load_table(args: argparse.Namespace):
    return load_embeddings(args.embeddings, format=args.embeddings_format, limit=args.limit)


def cmd_validate(args: argparse.Namespace) -> int:
    corpus = load_corpus(args.corpus)
    lexicon = load_lexicon(args.lexicon)
    groups = group_by_publisher(corpus)
    sizes = {ptype.value: len(members) for ptype, members in groups.items()}
    n_canonicals = len(lexicon.canonicals())
    print(
        json.dumps(
            {
                "proposals": len(corpus),
                "by_publisher_type": sizes,
                "topics": len(lexicon.topics),
                "canonical_keywords": n_canonicals,
            },
            indent=2,
        )
    )
    return 0


def _review_curation(results, threshold: float) -> list[CurationEntry]:
    """Interactive cutoff recording: show ranked candidates, read accepted count."""
    entries = []
    for (topic_name, canonical), result in sorted(results.items()):
        if not result.candidates:
            continue
        print(f"\n{topic_name} / {canonical}:")
        for position, neighbor in enumerate(result.candidates, start=1):
            marker = "*" if neighbor.score >= threshold else " "
            print(f"  {marker} {position:2d}. {neighbor.word}  {neighbor.score:.6g}")
        raw = input("accept first N candidates (empty keeps threshold): ").strip()
        if not raw:
            continue
        try:
            n = int(raw)
        except ValueError:
            print("not a number; keeping threshold", file=sys.stderr)
            continue
        accept = [c.word.lower().replace("_", " ") for c in result.candidates[:n]]
        reject = [c.word.lower().replace("_", " ") for c in result.candidates[n:]]
        entries.append(
            CurationEntry(topic=topic_name, canonical=canonical, accept=tuple(accept), reject=tuple(reject))
        )
    return entries


def cmd_expand_lexicon(args: argparse.Namespace) -> int:
    lexicon = load_lexicon(args.lexicon)
    table = _load_table(args)
    curation = load_curation(args.curation) if args.curation else []
    expanded, results = expand_lexicon(
        lexicon, table, candidate_k=args.candidate_k, threshold=args.threshold, curation=curation
    )
    for (topic_name, canonical), result in results.items():
        if result.oov:
            print(f"note: {canonical!r} not in embedding vocabulary", file=sys.stderr)
        if not result.candidates:
            continue
        print(f"{topic_name} / {canonical}:")
        for neighbor in result.candidates:
            accepted = neighbor.score >= args.threshold
            print(f"  {'+' if accepted else ' '} {neighbor.word}  {neighbor.score:.6g}")
    if args.review:
        review_entries = _review_curation(results, args.threshold)
        expanded, _ = expand_lexicon(
            lexicon, table, candidate_k=args.candidate_k, threshold=args.threshold,
            curation=curation + review_entries,
        )
        if args.write_curation:
            serialized = [
                {
                    "topic": e.topic,
                    "canonical": e.canonical,
                    "accept": list(e.accept),
                    "reject": list(e.reject),
                }
                for e in review_entries
            ]
            _write(Path(args.write_curation), json.dumps(serialized, indent=2) + "\n")
    out_path = Path(args.output)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    save_lexicon(expanded, out_path)
    print(f"wrote {out_path}", file=sys.stderr)
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    from .analysis import aggregate_by_topic, compute_coverage

    corpus = load_corpus(args.corpus)
    lexicon = load_lexicon(args.lexicon)
    keyword_matrix = compute_coverage(corpus, lexicon, "keyword")
    topic_matrix = aggregate_by_topic(keyword_matrix, lexicon)
    out = Path(args.output_dir)
    _write(out / "coverage_topic.csv", topic_matrix.to_csv())
    _write(out / "coverage_keyword.csv", keyword_matrix.to_csv())
    return 0


def cmd_rank(args: argparse.Namespace) -> int:
    from .analysis import aggregate_by_topic, compute_coverage, rank_proposals

    corpus = load_corpus(args.corpus)
    lexicon = load_lexicon(args.lexicon)
    keyword_matrix = compute_coverage(corpus, lexicon, "keyword")
    topic_matrix = aggregate_by_topic(keyword_matrix, lexicon)
    out = Path(args.output_dir)
    for name, matrix in (("topic", topic_matrix), ("keyword", keyword_matrix)):
        lines = ["rank,proposal_id,score"]
        lines += [f"{e.rank},{e.proposal_id},{e.score}" for e in rank_proposals(matrix)]
        _write(out / f"ranking_{name}.csv", "\n".join(lines) + "\n")
    return 0


def cmd_compare_groups(args: argparse.Namespace) -> int:
    from .analysis import compare_groups, compute_coverage

    corpus = load_corpus(args.corpus)
    lexicon = load_lexicon(args.lexicon)
    topic_matrix = compute_coverage(corpus, lexicon, "topic")
    comparisons = group_comparisons_to_dict(compare_groups(topic_matrix, corpus))
    for comparison in comparisons:
        for group in comparison["groups"]:
            for key in ("mean", "standard_error", "mean_per_1000_tokens"):
                if group[key] is not None:
                    group[key] = _sig6(group[key])
        for test in comparison["tests"]:
            for key in ("t", "df", "p"):
                if test[key] is not None:
                    test[key] = _sig6(test[key])
    _write(Path(args.output_dir) / "group_comparison.json", json.dumps(comparisons, indent=2) + "\n")
    return 0


def cmd_export_rdf(args: argparse.Namespace) -> int:
    from .analysis import aggregate_by_topic, compute_coverage
    from .linking import build_graph, serialize_ntriples, serialize_turtle

    corpus = load_corpus(args.corpus)
    lexicon = load_lexicon(args.lexicon)
    keyword_matrix = compute_coverage(corpus, lexicon, "keyword")
    topic_matrix = aggregate_by_topic(keyword_matrix, lexicon)
    graph = build_graph(corpus, lexicon, topic_matrix, keyword_matrix, base_iri=args.base_iri)
    out = Path(args.output_dir)
    _write(out / "graph.nt", serialize_ntriples(graph))
    _write(out / "graph.ttl", serialize_turtle(graph, base_iri=args.base_iri))
    return 0


def cmd_search(args: argparse.Namespace) -> int:
    from .analysis import compute_coverage
    from .search import build_index

    corpus = load_corpus(args.corpus)
    lexicon = load_lexicon(args.lexicon)
    if args.paragraph:
        table = _load_table(args)
        index = build_index(corpus, table)
        hits = paragraph_search(args.text, index, table, k=args.k)
        hits = attach_snippets(hits, corpus)
    else:
        keyword_matrix = compute_coverage(corpus, lexicon, "keyword")
        hits = keyword_search(args.text, corpus, lexicon, keyword_matrix)[: args.k]
    print(
        json.dumps(
            [
                {
                    "proposal_id": h.proposal_id,
                    "item_id": h.item_id,
                    "score": _sig6(h.score),
                    "snippet": h.snippet,
                }
                for h in hits
            ],
            ensure_ascii=False,
            indent=2,
        )
    )
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    from .search import build_index, load_index, save_index

    corpus = load_corpus(args.corpus)
    lexicon = load_lexicon(args.lexicon)
    table = _load_table(args)
    index = None
    if args.index_cache:
        cache = Path(args.index_cache)
        if cache.is_file():
            index = load_index(cache)
            if index.dim != table.dim:  # stale cache from another table
                index = None
        if index is None:
            index = build_index(corpus, table)
            cache.parent.mkdir(parents=True, exist_ok=True)
            save_index(index, cache)
    snapshot = build_snapshot(corpus, lexicon, table, base_iri=args.base_iri, index=index)
    origins = [o for o in (args.cors_origins or "").split(",") if o]
    print(
        f"serving snapshot {snapshot.snapshot_id} on http://{args.bind}:{args.port}",
        file=sys.stderr,
    )
    serve(snapshot, bind_address=args.bind, port=args.port, cors_origins=origins)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="laip", description=__doc__)
    parser.add_argument("--version", action="version", version=f"laip {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check corpus and lexicon invariants")
    _add_input_flags(p, with_embeddings=False)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("expand-lexicon", help="expand keywords via embeddings plus curation")
    _add_input_flags(p)
    p.add_argument("--curation", default=str(bundled_data_path("curation.json")), help="curation JSON file ('' to skip)")
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--candidate-k", type=int, default=DEFAULT_CANDIDATE_K)
    p.add_argument("--output", default="out/lexicon_expanded.json")
    p.add_argument("--review", action="store_true", help="interactively record per-keyword cutoffs")
    p.add_argument("--write-curation", default="", help="with --review, save recorded decisions here")
    p.set_defaults(func=cmd_expand_lexicon)

    p = sub.add_parser("analyze", help="write topic/keyword coverage matrices as CSV")
    _add_input_flags(p, with_embeddings=False)
    _add_output_flag(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("rank", help="write coverage rankings as CSV")
    _add_input_flags(p, with_embeddings=False)
    _add_output_flag(p)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("compare-groups", help="write per-topic publisher-group statistics as JSON")
    _add_input_flags(p, with_embeddings=False)
    _add_output_flag(p)
    p.set_defaults(func=cmd_compare_groups)

    p = sub.add_parser("export-rdf", help="write graph.nt and graph.ttl")
    _add_input_flags(p, with_embeddings=False)
    _add_output_flag(p)
    p.add_argument("--base-iri", default=DEFAULT_BASE_IRI)
    p.set_defaults(func=cmd_export_rdf)

    p = sub.add_parser("search", help="keyword or paragraph search from the command line")
    _add_input_flags(p)
    p.add_argument("text", help="query text")
    p.add_argument("--paragraph", action="store_true", help="rank by paragraph similarity instead of keywords")
    p.add_argument("-k", type=int, default=10)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("serve", help="serve the read-only JSON API")
    _add_input_flags(p)
    p.add_argument("--base-iri", default=DEFAULT_BASE_IRI)
    p.add_argument("--bind", default=os.environ.get("LAIP_BIND", DEFAULT_BIND))
    p.add_argument("--port", type=int, default=int(os.environ.get("LAIP_PORT", DEFAULT_PORT)))
    p.add_argument("--cors-origins", default=os.environ.get("LAIP_CORS_ORIGINS", ""))
    p.add_argument("--index-cache", default="", help="binary item-index cache; reused when present")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
