import pytest
from hypothesis import given, settings, strategies as st

from oracles import DOCS, FIXTURES

from cohesia.baseline_eval import (DocumentMismatch, SentenceSelection, cue_extract, evaluate, extract, jaccard,
                                   keyterms, lead_extract, luhn_extract, luhn_score, significant_lemmas, smooth)
from cohesia.ingest import parse_document, read_document
from cohesia.synthesize import Fragment, SummaryOutput

DOC_DIR = FIXTURES / "docs"


def test_luhn_cluster_score():
    # s s . s s over a window of five: 4 significant words, 4**2 / 5
    assert luhn_score([True, True, False, True, True]) == 3.2
    assert luhn_score([]) == 0.0
    assert luhn_score([False, False]) == 0.0
    assert luhn_score([True]) == 1.0
    # a gap of five breaks the cluster
    assert luhn_score([True] + [False] * 5 + [True]) == 1.0
    assert luhn_score([True] + [False] * 4 + [True]) == pytest.approx(4 / 6)


def test_luhn_fixture():
    doc = read_document(DOC_DIR / "luhn.txt")
    assert significant_lemmas(doc) == {"panel", "solar"}
    sel = luhn_extract(doc, 1)
    assert sel.scores[1] == 3.2
    assert sel.indices == (1,)


def test_m_zero():
    doc = read_document(DOC_DIR / "budget.txt")
    for method in ("luhn", "lead", "cue"):
        assert extract(method, doc, 0).indices == ()


def test_all_stopword_fallback():
    doc = parse_document("It is what it is. They were there. So it was.")
    assert luhn_extract(doc, 2) == lead_extract(doc, 2)


def test_lead():
    doc = read_document(DOC_DIR / "budget.txt")
    assert lead_extract(doc, 2).indices == (0, 1)
    assert lead_extract(doc, 100).indices == tuple(range(len(doc)))


def test_cue():
    doc = parse_document("Rain fell. Wind blew. In conclusion the storm passed. Roads closed.")
    assert cue_extract(doc, 1).indices == (2,)


def test_m_exceeds():
    doc = read_document(DOC_DIR / "storm.txt")
    for method in ("luhn", "lead", "cue"):
        assert extract(method, doc, 99).indices == tuple(range(len(doc)))


def test_unknown_method():
    with pytest.raises(ValueError):
        extract("random", read_document(DOC_DIR / "storm.txt"), 1)


def test_smoothing():
    doc = read_document(DOC_DIR / "anaphora.txt")
    assert doc.sentences[4].text == "It failed."
    once = smooth(SentenceSelection("lead", (4,)), doc)
    assert once.indices == (3, 4)
    assert smooth(once, doc) == once


def test_smoothing_initial_anaphor():
    doc = parse_document("It rained. The match stopped.")
    sel = SentenceSelection("lead", (0,))
    assert smooth(sel, doc) == sel


def test_smoothing_no_anaphors():
    doc = read_document(DOC_DIR / "budget.txt")
    sel = SentenceSelection("lead", (1, 3))
    assert smooth(sel, doc) == sel


def test_smoothing_chains():
    doc = parse_document("The plan failed. It was late. It was costly. Staff left.")
    assert smooth(SentenceSelection("lead", (2,)), doc).indices == (0, 1, 2)


def test_keyterms():
    doc = read_document(DOC_DIR / "budget.txt")
    terms = keyterms(doc, 10)
    assert terms[:4] == ["budget", "council", "school", "plan"]
    # frequency-one lemmas in alphabetical order
    assert terms[4:] == sorted(terms[4:])
    doc = parse_document("Apples rose. Pears rose. Apples fell. Pears fell.")
    assert keyterms(doc, 2) == ["apple", "fall"]
    assert keyterms(doc, 50) == ["apple", "fall", "pear", "rise"]
    with pytest.raises(ValueError):
        keyterms(doc, 0)


def test_jaccard():
    assert jaccard([1, 2], [1, 2]) == 1.0
    assert jaccard([1], [2]) == 0.0
    assert jaccard([], []) == 1.0
    assert jaccard([1, 2, 3], [2, 3, 4]) == 0.5


def _summary(texts, doc_id):
    return SummaryOutput("running", tuple(Fragment(t, True, i, 0) for i, t in enumerate(texts)), doc_id)


def test_coverage_seven_of_ten():
    # keyterms: budget council school plan approve city critic debate defend expect
    doc = read_document(DOC_DIR / "budget.txt")
    summary = _summary(["Council approve budget.", "Budget improve school.",
                        "Critic say budget ignore housing.", "Mayor defend plan."], "budget")
    report = evaluate(summary, doc, [0, 1], [0, 1])
    assert report.term_coverage == pytest.approx(0.7)
    assert report.jaccard_vs_baseline == 1.0
    assert report.compression_ratio == pytest.approx(14 / doc.word_count)


def test_mismatched_document():
    doc = read_document(DOC_DIR / "budget.txt")
    with pytest.raises(DocumentMismatch):
        evaluate(_summary(["x"], "storm"), doc, [0], [0])


@pytest.mark.parametrize("path", DOCS, ids=lambda p: p.stem)
def test_baselines_sorted_and_deterministic(path):
    doc = read_document(path)
    for method in ("luhn", "lead", "cue"):
        for m in range(len(doc) + 2):
            sel = extract(method, doc, m)
            assert list(sel.indices) == sorted(set(sel.indices))
            assert len(sel.indices) == min(m, len(doc))
            assert sel == extract(method, doc, m)


@settings(max_examples=60, deadline=None)
@given(st.text(max_size=300), st.integers(min_value=0, max_value=6))
def test_metrics_bounded(text, m):
    doc = parse_document(text, doc_id="d")
    a = lead_extract(doc, m).indices
    b = luhn_extract(doc, m).indices
    summary = _summary([s.text for s in doc.sentences[:m]], "d")
    r = evaluate(summary, doc, a, b)
    assert 0.0 <= r.term_coverage <= 1.0
    assert 0.0 <= r.jaccard_vs_baseline <= 1.0
    assert 0.0 <= r.compression_ratio <= 1.0
    s1 = smooth(SentenceSelection("lead", b), doc)
    assert smooth(s1, doc) == s1
