"""End-to-end run: interpretation, transformation, generation."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .cohesion import CohesionGraph, build_graph, linkage_stats
from .factors import EngineParams
from .ingest import Document
from .interpret import Predication, interpret
from .lexicon import Lexicon
from .selection import Selection, budget_from_ratio, greedy_select, project_to_sentences
from .synthesize import SummaryOutput, TopicCluster, cluster, render


class EmptyDocument(ValueError):
    pass


@dataclass
class EngineResult:
    doc_id: str | None
    predications: list[Predication]
    graph: CohesionGraph
    selection: Selection
    clusters: list[TopicCluster]
    summary: SummaryOutput
    sentences: list[int]
    text: str

    def explain(self) -> dict:
        return {
            "doc": self.doc_id,
            "selection": self.selection.as_dict(),
            "clusters": [{"label": c.label, "members": list(c.members)} for c in self.clusters],
            "sentences": self.sentences,
            "graph": linkage_stats(self.graph),
        }


def selected_terms(sel: Selection, g: CohesionGraph) -> list[str]:
    """Argument heads of the selected predications, most frequent first."""
    counts = Counter(h for v in sel.node_ids for h in g.node(v).heads)
    return sorted(counts, key=lambda h: (-counts[h], h))


def run_engine(preds, params: EngineParams | None = None, doc: Document | None = None,
               doc_id: str | None = None, k: int | None = None, synonyms: dict | None = None,
               pred_cross_only: bool = False, representativeness: str = "neighbourhood") -> EngineResult:
    params = params or EngineParams()
    preds = list(preds)
    if not preds:
        raise EmptyDocument(f"{doc_id or 'document'}: no predications to summarise")
    if doc_id is None and doc is not None:
        doc_id = doc.id
    g = build_graph(preds, params.edge_weights, synonyms, pred_cross_only)
    budget = k if k is not None else budget_from_ratio(params.compression_ratio, len(g.nodes))
    sel = greedy_select(g, budget, params.score_weights, representativeness)
    clusters = cluster(sel, g)
    summary = render(clusters, g, params.output_format, doc_id)
    # only sentences that carry a selected predication
    held = len({g.node(v).sentence_index for v in sel.node_ids})
    sentences = project_to_sentences(sel, g, held)

    if params.projection_mode == "predications":
        text = summary.text
    elif params.projection_mode == "keyterms":
        text = ", ".join(selected_terms(sel, g)) + "\n"
    elif doc is not None:
        text = " ".join(doc.sentences[i].text for i in sentences) + "\n"
    else:
        text = "".join(f"{i}\n" for i in sentences)
    return EngineResult(doc_id, preds, g, sel, clusters, summary, sentences, text)


def summarize(doc: Document, params: EngineParams | None = None, lexicon: Lexicon | None = None,
              **kw) -> EngineResult:
    return run_engine(interpret(doc, lexicon), params, doc=doc, doc_id=doc.id, **kw)
