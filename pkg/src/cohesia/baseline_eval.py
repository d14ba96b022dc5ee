"""Sentence-extraction baselines, key terms, and lexical comparison metrics."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field, replace

from .ingest import Document, tokenize
from .synthesize import SummaryOutput

METHODS = ("luhn", "lead", "cue")
SIGNIFICANT_FRACTION = 0.1
MAX_GAP = 4


@dataclass(frozen=True)
class SentenceSelection:
    method: str
    indices: tuple[int, ...]
    scores: tuple[float, ...] = ()

    def __post_init__(self):
        if list(self.indices) != sorted(set(self.indices)):
            raise ValueError("indices must be unique and in source order")


@dataclass(frozen=True)
class EvalReport:
    term_coverage: float
    jaccard_vs_baseline: float
    compression_ratio: float
    component_stats: dict = field(default_factory=dict, hash=False)

    def as_dict(self):
        return {"term_coverage": self.term_coverage,
                "jaccard_vs_baseline": self.jaccard_vs_baseline,
                "compression_ratio": self.compression_ratio,
                "component_stats": dict(self.component_stats)}


def _content_counts(doc):
    return Counter(lemma for s in doc.sentences for lemma in s.content_lemmas)


def _top(scores, m):
    ranked = sorted(range(len(scores)), key=lambda i: (-scores[i], i))
    return tuple(sorted(ranked[:m]))


def significant_lemmas(doc: Document) -> set[str]:
    counts = _content_counts(doc)
    if not counts:
        return set()
    n = max(1, math.ceil(SIGNIFICANT_FRACTION * len(counts)))
    ranked = sorted(counts, key=lambda w: (-counts[w], w))
    return set(ranked[:n])


def luhn_score(flags: list[bool], max_gap: int = MAX_GAP) -> float:
    """Best significant-word cluster score, count**2 / span length.

    A cluster runs from one significant word to another with at most
    ``max_gap`` insignificant words between neighbours; only maximal
    clusters are scored.
    """
    best = 0.0
    start = last = None
    count = 0
    for i, sig in enumerate(flags):
        if not sig:
            continue
        if last is not None and i - last - 1 <= max_gap:
            count += 1
        else:
            if last is not None:
                best = max(best, count * count / (last - start + 1))
            start, count = i, 1
        last = i
    if last is not None:
        best = max(best, count * count / (last - start + 1))
    return best


def luhn_extract(doc: Document, m: int) -> SentenceSelection:
    if m < 0:
        raise ValueError("m must be >= 0")
    sig = significant_lemmas(doc)
    if not sig:
        return lead_extract(doc, m)
    scores = tuple(luhn_score([t.is_content and t.lemma in sig for t in s.words])
                   for s in doc.sentences)
    return SentenceSelection("luhn", _top(scores, m), scores)


def lead_extract(doc: Document, m: int) -> SentenceSelection:
    if m < 0:
        raise ValueError("m must be >= 0")
    scores = tuple(s.markedness.location_score for s in doc.sentences)
    return SentenceSelection("lead", tuple(range(min(m, len(doc)))), scores)


def cue_extract(doc: Document, m: int) -> SentenceSelection:
    if m < 0:
        raise ValueError("m must be >= 0")
    sents = doc.sentences
    ranked = sorted(range(len(sents)), key=lambda i: (-sents[i].markedness.cue_score,
                                                      -sents[i].markedness.location_score, i))
    scores = tuple(s.markedness.cue_score for s in sents)
    return SentenceSelection("cue", tuple(sorted(ranked[:m])), scores)


EXTRACTORS = {"luhn": luhn_extract, "lead": lead_extract, "cue": cue_extract}


def extract(method: str, doc: Document, m: int) -> SentenceSelection:
    try:
        fn = EXTRACTORS[method]
    except KeyError:
        raise ValueError(f"unknown baseline {method!r} (expected one of {', '.join(METHODS)})") from None
    return fn(doc, m)


def _anaphor_initial(sentence) -> bool:
    for t in sentence.tokens:
        if t.is_pronoun:
            return True
        if t.is_content:
            return False
    return False


def smooth(selection: SentenceSelection, doc: Document) -> SentenceSelection:
    """Pull in the sentence before any selected sentence that opens with a pronoun.

    Added predecessors are themselves checked, so the result is closed
    under the rule and smoothing twice changes nothing.
    """
    chosen = set(selection.indices)
    stack = list(chosen)
    while stack:
        i = stack.pop()
        if i > 0 and _anaphor_initial(doc.sentences[i]) and i - 1 not in chosen:
            chosen.add(i - 1)
            stack.append(i - 1)
    return replace(selection, indices=tuple(sorted(chosen)))


def keyterms(doc: Document, n: int) -> list[str]:
    if n < 1:
        raise ValueError("n must be >= 1")
    counts = _content_counts(doc)
    return sorted(counts, key=lambda w: (-counts[w], w))[:n]


def jaccard(a, b) -> float:
    a, b = set(a), set(b)
    if not a and not b:
        return 1.0
    return len(a & b) / len(a | b)


def summary_lemmas(summary: SummaryOutput) -> set[str]:
    out = set()
    for f in summary.fragments:
        out.update(t.lemma for t in tokenize(f.text) if t.is_word)
    return out


class DocumentMismatch(ValueError):
    pass


def evaluate(summary: SummaryOutput, doc: Document, engine_sents, baseline_sents,
             component_stats: dict | None = None) -> EvalReport:
    if summary.source_doc_id is not None and summary.source_doc_id != doc.id:
        raise DocumentMismatch(f"summary of {summary.source_doc_id!r} evaluated against {doc.id!r}")
    terms = keyterms(doc, 10) if doc.word_count else []
    lemmas = summary_lemmas(summary)
    coverage = sum(1 for t in terms if t in lemmas) / len(terms) if terms else 0.0
    doc_tokens = doc.word_count
    compression = min(1.0, summary.token_count / doc_tokens) if doc_tokens else 1.0
    return EvalReport(coverage, jaccard(engine_sents, baseline_sents), compression,
                      dict(component_stats or {}))
