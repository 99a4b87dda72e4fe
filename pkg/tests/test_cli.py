import json
import subprocess
import sys

import pytest

from laip.cli import main
from laip.snapshot import bundled_data_path


def run_cli(*argv) -> int:
    return main(list(argv))


def test_validate_bundled_data_exits_zero(capsys):
    assert run_cli("validate") == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["proposals"] == 27
    assert payload["by_publisher_type"] == {"academia_ngo": 13, "government": 4, "industry": 10}
    assert payload["canonical_keywords"] == 58


def test_validate_bad_corpus_exits_one(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"proposals": []}')
    assert run_cli("validate", "--corpus", str(bad)) == 1
    assert "error:" in capsys.readouterr().err


def test_usage_error_exits_two():
    with pytest.raises(SystemExit) as excinfo:
        main(["no-such-command"])
    assert excinfo.value.code == 2


def _expand(tmp_path, capsys) -> str:
    out = tmp_path / "lexicon_expanded.json"
    assert run_cli("expand-lexicon", "--output", str(out)) == 0
    capsys.readouterr()
    return str(out)


def test_expand_lexicon_writes_expanded_file(tmp_path, capsys):
    out = _expand(tmp_path, capsys)
    from laip.lexicon import load_lexicon

    expanded = load_lexicon(out)
    fairness = expanded.group("Fairness", "fairness")
    assert {"fair", "fairer", "unfair", "unfairness"} <= set(fairness.variant_texts())


def test_expand_lexicon_prints_ranked_candidates(tmp_path, capsys):
    out = tmp_path / "lex.json"
    assert run_cli("expand-lexicon", "--output", str(out)) == 0
    stdout = capsys.readouterr().out
    assert "Safety / safety:" in stdout
    assert "+ safe" in stdout


def test_analyze_writes_matrix_csvs(tmp_path, mini_corpus_path, capsys):
    out = tmp_path / "out"
    assert run_cli("analyze", "--corpus", str(mini_corpus_path), "-o", str(out)) == 0
    topic_csv = (out / "coverage_topic.csv").read_text()
    lines = topic_csv.splitlines()
    assert lines[0].startswith("proposal_id,Humanity,")
    assert len(lines) == 4
    assert (out / "coverage_keyword.csv").exists()


def test_analyze_bundled_dimensions(tmp_path, capsys):
    out = tmp_path / "out"
    assert run_cli("analyze", "-o", str(out)) == 0
    lines = (out / "coverage_topic.csv").read_text().splitlines()
    assert len(lines) == 28  # header + 27 proposals
    assert len(lines[0].split(",")) == 11  # proposal_id + 10 topics


def test_rank_mini_corpus_equals_hand_ranking(tmp_path, mini_corpus_path, capsys):
    out = tmp_path / "out"
    assert run_cli("rank", "--corpus", str(mini_corpus_path), "-o", str(out)) == 0
    assert (out / "ranking_topic.csv").read_text() == (
        "rank,proposal_id,score\n1,mini-b,4\n2,mini-a,2\n2,mini-c,2\n"
    )
    assert (out / "ranking_keyword.csv").read_text() == (
        "rank,proposal_id,score\n1,mini-c,7\n2,mini-b,6\n3,mini-a,5\n"
    )


def test_compare_groups_output(tmp_path, capsys):
    out = tmp_path / "out"
    assert run_cli("compare-groups", "-o", str(out)) == 0
    payload = json.loads((out / "group_comparison.json").read_text())
    assert len(payload) == 10
    assert {"topic_name", "groups", "tests"} <= set(payload[0])


def test_export_rdf(tmp_path, capsys):
    out = tmp_path / "out"
    assert run_cli("export-rdf", "-o", str(out)) == 0
    nt = (out / "graph.nt").read_text()
    assert nt.endswith(".\n")
    assert "coversTopic" in nt
    assert (out / "graph.ttl").read_text().startswith("@prefix")


def test_search_subcommand(capsys):
    assert run_cli("search", "fairness") == 0
    hits = json.loads(capsys.readouterr().out)
    assert hits and hits[0]["score"] >= 1


def test_search_paragraph_subcommand(capsys):
    assert run_cli("search", "--paragraph", "rigorous validation and testing of models") == 0
    hits = json.loads(capsys.readouterr().out)
    assert hits


def test_pipeline_byte_identical_runs(tmp_path, capsys):
    lex1 = tmp_path / "lex1.json"
    lex2 = tmp_path / "lex2.json"
    out1 = tmp_path / "run1"
    out2 = tmp_path / "run2"
    for lex, out in ((lex1, out1), (lex2, out2)):
        assert run_cli("expand-lexicon", "--output", str(lex)) == 0
        assert run_cli("analyze", "--lexicon", str(lex), "-o", str(out)) == 0
        assert run_cli("rank", "--lexicon", str(lex), "-o", str(out)) == 0
        assert run_cli("compare-groups", "--lexicon", str(lex), "-o", str(out)) == 0
        assert run_cli("export-rdf", "--lexicon", str(lex), "-o", str(out)) == 0
    capsys.readouterr()
    assert lex1.read_bytes() == lex2.read_bytes()
    names = [
        "coverage_topic.csv",
        "coverage_keyword.csv",
        "ranking_topic.csv",
        "ranking_keyword.csv",
        "group_comparison.json",
        "graph.nt",
        "graph.ttl",
    ]
    for name in names:
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes(), name


def test_file_pipeline_equals_in_memory_results(tmp_path, capsys, bundled_corpus, expanded_lexicon):
    from laip.analysis import compute_coverage, rank_proposals
    from laip.lexicon import save_lexicon

    lex_path = tmp_path / "lex.json"
    save_lexicon(expanded_lexicon, lex_path)
    out = tmp_path / "out"
    assert run_cli("analyze", "--lexicon", str(lex_path), "-o", str(out)) == 0
    assert run_cli("rank", "--lexicon", str(lex_path), "-o", str(out)) == 0
    capsys.readouterr()

    matrix = compute_coverage(bundled_corpus, expanded_lexicon, "topic")
    expected_csv = matrix.to_csv()
    assert (out / "coverage_topic.csv").read_text() == expected_csv
    ranking_lines = ["rank,proposal_id,score"] + [
        f"{e.rank},{e.proposal_id},{e.score}" for e in rank_proposals(matrix)
    ]
    assert (out / "ranking_topic.csv").read_text() == "\n".join(ranking_lines) + "\n"


def test_console_script_help():
    result = subprocess.run(
        [sys.executable, "-m", "laip.cli", "--help"], capture_output=True, text=True
    )
    assert result.returncode == 0
    assert "expand-lexicon" in result.stdout


def test_review_mode_records_cutoff(tmp_path, capsys, monkeypatch):
    # accept the first candidate for every keyword via piped answers
    answers = iter(["1"] + [""] * 100)
    monkeypatch.setattr("builtins.input", lambda prompt="": next(answers))
    out = tmp_path / "lex.json"
    curation_out = tmp_path / "curation.json"
    assert (
        run_cli(
            "expand-lexicon",
            "--review",
            "--output",
            str(out),
            "--write-curation",
            str(curation_out),
        )
        == 0
    )
    capsys.readouterr()
    recorded = json.loads(curation_out.read_text())
    assert recorded and recorded[0]["accept"]


def test_bundled_defaults_exist():
    for name in ("corpus.json", "lexicon_base.json", "curation.json", "embeddings_demo.txt"):
        assert bundled_data_path(name).is_file()
