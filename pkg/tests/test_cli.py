import json

import pytest

from oracles import DOCS, parse_dot

from cohesia.cli import main

DOC = str(DOCS[0])


def run(capsysbinary, *argv):
    code = main(list(argv))
    out, err = capsysbinary.readouterr()
    return code, out.decode(), err.decode()


def test_summarize_deterministic(capsysbinary):
    a = run(capsysbinary, "summarize", DOC, "--explain")
    b = run(capsysbinary, "summarize", DOC, "--explain")
    assert a[0] == 0 and a == b
    text, _, explain = a[1].partition("{")
    assert text.strip()
    assert "selection" in json.loads("{" + explain)


def test_corpus_headers_in_input_order(capsysbinary):
    code, out, _ = run(capsysbinary, "summarize", str(DOCS[3]), str(DOCS[1]))
    assert code == 0
    assert out.index(f"==> {DOCS[3].stem} <==") < out.index(f"==> {DOCS[1].stem} <==")


def test_missing_path(capsysbinary):
    code, _, err = run(capsysbinary, "summarize", "no/such/file.txt")
    assert code == 1 and "no/such/file.txt" in err


def test_bad_flag_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["summarize", DOC, "--ratio"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1


def test_bad_override_is_usage_error(capsysbinary):
    assert run(capsysbinary, "summarize", DOC, "--ratio", "0.9")[0] == 1
    assert run(capsysbinary, "summarize", DOC, "--alpha", "0.9")[0] == 1


def test_unsupported_profile(tmp_path, capsysbinary):
    prof = tmp_path / "p"
    prof.write_text("output.style=critical\n")
    code, _, err = run(capsysbinary, "summarize", DOC, "--profile", str(prof))
    assert code == 2 and "output.style" in err


def test_malformed_profile(tmp_path, capsysbinary):
    prof = tmp_path / "p"
    prof.write_text("output.style=criticall\n")
    assert run(capsysbinary, "summarize", DOC, "--profile", str(prof))[0] == 3


def test_failure_isolated(tmp_path, capsysbinary):
    bad = tmp_path / "bad.jsonl"
    bad.write_text("{oops}\n")
    good = tmp_path / "good.jsonl"
    assert main(["interpret", DOC, "-o", str(good)]) == 0
    code, out, err = run(capsysbinary, "summarize", "--from-predications", str(bad), str(good))
    assert code == 3
    assert "bad.jsonl" in err and "line 1" in err
    assert "==> good <==" in out


def test_empty_document(tmp_path, capsysbinary):
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    assert run(capsysbinary, "summarize", str(empty))[0] == 3


def test_profile_and_flag_precedence(tmp_path, capsysbinary):
    prof = tmp_path / "p"
    prof.write_text("purpose.use=retrieving\n")
    _, out, _ = run(capsysbinary, "summarize", DOC, "--profile", str(prof))
    assert ";" not in out and "." not in out  # key-term list
    _, out2, _ = run(capsysbinary, "summarize", DOC, "--profile", str(prof), "--projection", "predications")
    assert out2 != out


def test_headed_format(capsysbinary):
    _, out, _ = run(capsysbinary, "summarize", DOC, "--format", "headed", "--k", "3")
    assert out.startswith("== ")


def test_sentences_projection(capsysbinary):
    _, out, _ = run(capsysbinary, "summarize", DOC, "--projection", "sentences", "--k", "2")
    src = DOCS[0].read_text()
    assert all(part.strip() in src for part in out.split(". ") if part.strip())


def test_graph_dot_reparses(capsysbinary):
    code, out, _ = run(capsysbinary, "graph", DOC, "--out", "dot")
    assert code == 0
    nodes, edges = parse_dot(out)
    code, js, _ = run(capsysbinary, "graph", DOC)
    data = json.loads(js)
    assert nodes == [n["id"] for n in data["nodes"]]
    assert edges == [(e["a"], e["b"]) for e in data["edges"]]


def test_graph_with_synonyms(tmp_path, capsysbinary):
    syn = tmp_path / "syn.txt"
    syn.write_text("budget plan\n")
    _, plain, _ = run(capsysbinary, "graph", DOC)
    code, linked, _ = run(capsysbinary, "graph", DOC, "--synonyms", str(syn))
    assert code == 0
    assert len(json.loads(linked)["edges"]) >= len(json.loads(plain)["edges"])


@pytest.mark.parametrize("path", DOCS[:5], ids=lambda p: p.stem)
def test_compare_range(path, capsysbinary):
    code, out, _ = run(capsysbinary, "compare", str(path), "--baseline", "lead", "--m", "3")
    assert code == 0
    data = json.loads(out)
    assert 0.0 <= data["report"]["jaccard_vs_baseline"] <= 1.0
    assert data["baseline_sentences"] == [0, 1, 2]
    assert len(data["engine_sentences"]) == 3


def test_evaluate(capsysbinary):
    code, out, _ = run(capsysbinary, "evaluate", DOC)
    data = json.loads(out)
    assert code == 0
    assert set(data) == {"term_coverage", "jaccard_vs_baseline", "compression_ratio", "component_stats"}
    assert 0.0 <= data["term_coverage"] <= 1.0


def test_baseline(capsysbinary):
    anaphora = [str(p) for p in DOCS if p.stem == "anaphora"][0]
    code, out, _ = run(capsysbinary, "baseline", anaphora, "--method", "lead", "--m", "2")
    assert code == 0 and [line.split("\t")[0] for line in out.splitlines()] == ["0", "1"]
    assert run(capsysbinary, "baseline", anaphora, "--m", "-1")[0] == 1


@pytest.mark.parametrize("path", DOCS, ids=lambda p: p.stem)
def test_from_predications_equivalent(path, tmp_path, capsysbinary):
    jsonl = tmp_path / f"{path.stem}.jsonl"
    assert main(["interpret", str(path), "--format", "jsonl", "-o", str(jsonl)]) == 0
    capsysbinary.readouterr()
    direct = run(capsysbinary, "summarize", str(path))
    via = run(capsysbinary, "summarize", str(jsonl), "--from-predications")
    assert direct == via


def test_inputs_not_modified(tmp_path, capsysbinary):
    before = {p: p.read_bytes() for p in DOCS}
    run(capsysbinary, "summarize", *map(str, DOCS), "--out-dir", str(tmp_path))
    assert {p: p.read_bytes() for p in DOCS} == before
    assert len(list(tmp_path.iterdir())) == len(DOCS)
