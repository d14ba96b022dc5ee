"""Generation: group selected predications into topics and render semi-text."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass

from .cohesion import CohesionGraph
from .interpret import Predication
from .selection import Selection
from .unionfind import UnionFind

FORMATS = ("running", "headed")
_WORD = re.compile(r"\w+(?:[-'’.]\w+)*")


def count_words(text: str) -> int:
    return len(_WORD.findall(text))


@dataclass(frozen=True)
class TopicCluster:
    label: str
    members: tuple[int, ...]


@dataclass(frozen=True)
class Fragment:
    text: str
    complete: bool
    node_id: int
    cluster: int


@dataclass(frozen=True)
class SummaryOutput:
    format: str
    fragments: tuple[Fragment, ...]
    source_doc_id: str | None
    labels: tuple[str, ...] = ()

    @property
    def token_count(self) -> int:
        """Words in the rendered fragments; headers are layout, not content."""
        return sum(count_words(f.text) for f in self.fragments)

    @property
    def text(self) -> str:
        if self.format == "running":
            return " ".join(_pieces(self.fragments)) + "\n"
        blocks = []
        for ci, label in enumerate(self.labels):
            frags = [f for f in self.fragments if f.cluster == ci]
            blocks.append("\n".join([f"== {label} =="] + _pieces(frags)))
        return "\n\n".join(blocks) + "\n"


def _pieces(fragments):
    """Complete predications stand alone; runs of fragments join with '; '."""
    pieces = []
    run = []
    for f in fragments:
        if f.complete:
            if run:
                pieces.append("; ".join(run) + ".")
                run = []
            pieces.append(f.text)
        else:
            run.append(f.text)
    if run:
        pieces.append("; ".join(run) + ".")
    return pieces


def cluster(sel: Selection, g: CohesionGraph) -> list[TopicCluster]:
    """Union selected predications that share any argument head."""
    if not sel.node_ids:
        raise ValueError("cannot cluster an empty selection")
    uf = UnionFind(sel.node_ids)
    first_with_head = {}
    for v in sel.node_ids:
        for h in g.node(v).heads:
            if h in first_with_head:
                uf.union(first_with_head[h], v)
            else:
                first_with_head[h] = v

    clusters = []
    for group in uf.groups():
        preds = sorted((g.node(v) for v in group), key=lambda p: (p.sentence_index, p.id))
        counts = Counter(h for p in preds for h in p.heads)
        if counts:
            label = min(counts, key=lambda h: (-counts[h], h))
        else:
            label = preds[0].predicate or preds[0].args[0].surface.lower()
        clusters.append(TopicCluster(label, tuple(p.id for p in preds)))
    clusters.sort(key=lambda c: (g.node(c.members[0]).sentence_index, c.members[0]))
    return clusters


def _ordered_args(p):
    return sorted(p.args, key=lambda a: a.role)


def render_predication(p: Predication) -> str:
    args = _ordered_args(p)
    if p.complete:
        words = []
        pre = [a for a in args if a.role == 0]
        words += [a.surface or a.head for a in pre]
        words.append(p.predicate)
        words += [a.surface or a.head for a in args if a.role != 0]
        text = " ".join(words)
        return text[:1].upper() + text[1:] + "."
    words = [a.head for a in args if a.role == 0 and a.head]
    if p.predicate is not None:
        words.append(p.predicate)
    words += [a.head for a in args if a.role != 0 and a.head]
    if not words:
        words = [a.surface.lower() for a in args]
    return " ".join(words)


def render(clusters, g: CohesionGraph, fmt: str = "running", doc_id: str | None = None) -> SummaryOutput:
    if fmt not in FORMATS:
        raise ValueError(f"unknown output format {fmt!r} (expected running or headed)")
    fragments = []
    for ci, c in enumerate(clusters):
        for v in c.members:
            p = g.node(v)
            fragments.append(Fragment(render_predication(p), p.complete, v, ci))
    return SummaryOutput(fmt, tuple(fragments), doc_id, tuple(c.label for c in clusters))


def predication_token_count(p: Predication) -> int:
    n = count_words(p.predicate) if p.predicate else 0
    return n + sum(count_words(a.surface or a.head) for a in p.args)
