"""Cohesion graph over predications: typed, weighted, undirected links."""

from __future__ import annotations

import enum
import json
from collections import defaultdict, deque
from dataclasses import dataclass, field
from itertools import combinations

from .interpret import Predication, predication_record


class EdgeType(str, enum.Enum):
    COMMON_PREDICATE = "CommonPredicate"
    SHARED_ARGUMENT_INTRA = "SharedArgumentIntra"
    SIMILAR_ARGUMENT_INTER = "SimilarArgumentInter"


# summation order for edge weights; fixed so every code path adds identically
TYPE_ORDER = (EdgeType.COMMON_PREDICATE, EdgeType.SHARED_ARGUMENT_INTRA,
              EdgeType.SIMILAR_ARGUMENT_INTER)


@dataclass(frozen=True)
class EdgeWeights:
    w_pred: float = 0.8
    w_intra: float = 1.0
    w_inter: float = 0.5
    synonym_discount: float = 0.8

    def __post_init__(self):
        for name in ("w_pred", "w_intra", "w_inter"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")
        if not 0 < self.synonym_discount <= 1:
            raise ValueError("synonym_discount must be in (0, 1]")

    def scaled(self, c: float) -> "EdgeWeights":
        return EdgeWeights(self.w_pred * c, self.w_intra * c, self.w_inter * c, self.synonym_discount)


@dataclass(frozen=True)
class Edge:
    a: int
    b: int
    types: frozenset
    weight: float


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class CohesionGraph:
    nodes: tuple[Predication, ...]
    edges: dict = field(hash=False)  # (a, b) with a < b -> Edge

    def __post_init__(self):
        by_id = {}
        adj = defaultdict(dict)
        for p in self.nodes:
            by_id[p.id] = p
        for (a, b), e in self.edges.items():
            adj[a][b] = e.weight
            adj[b][a] = e.weight
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_adj", {p.id: dict(adj.get(p.id, {})) for p in self.nodes})

    @property
    def node_ids(self) -> list[int]:
        return [p.id for p in self.nodes]

    def node(self, node_id: int) -> Predication:
        return self._by_id[node_id]

    def neighbours(self, node_id: int) -> dict:
        """Neighbour id -> edge weight."""
        return self._adj[node_id]

    def degree(self, node_id: int) -> float:
        return sum(self._adj[node_id][k] for k in sorted(self._adj[node_id]))

    def weight(self, a: int, b: int) -> float:
        return self._adj[a].get(b, 0.0)

    def sorted_edges(self) -> list[Edge]:
        return [self.edges[k] for k in sorted(self.edges)]


def edge_weight(types, w: EdgeWeights, synonym_only: bool = False) -> float:
    total = 0.0
    for t in TYPE_ORDER:
        if t not in types:
            continue
        if t is EdgeType.COMMON_PREDICATE:
            total += w.w_pred
        elif t is EdgeType.SHARED_ARGUMENT_INTRA:
            total += w.w_intra
        else:
            total += w.w_inter * (w.synonym_discount if synonym_only else 1.0)
    return total


def _link(p: Predication, q: Predication, w: EdgeWeights, synonyms, pred_cross_only):
    """Edge between two predications, or None when no rule fires."""
    types = set()
    same_sentence = p.sentence_index == q.sentence_index
    if p.predicate is not None and p.predicate == q.predicate:
        if not (pred_cross_only and same_sentence):
            types.add(EdgeType.COMMON_PREDICATE)
    hp, hq = set(p.heads), set(q.heads)
    shared = bool(hp & hq)
    synonym_only = False
    if same_sentence:
        if shared:
            types.add(EdgeType.SHARED_ARGUMENT_INTRA)
    elif shared:
        types.add(EdgeType.SIMILAR_ARGUMENT_INTER)
    elif synonyms:
        cp = {synonyms.get(h, h) for h in hp}
        cq = {synonyms.get(h, h) for h in hq}
        if cp & cq:
            types.add(EdgeType.SIMILAR_ARGUMENT_INTER)
            synonym_only = True
    if not types:
        return None
    a, b = sorted((p.id, q.id))
    return Edge(a, b, frozenset(types), edge_weight(types, w, synonym_only))


def build_graph(preds, weights: EdgeWeights | None = None, synonyms: dict | None = None,
                pred_cross_only: bool = False) -> CohesionGraph:
    """Link every pair of predications that share a predicate or an argument head.

    Candidate pairs come from inverted indexes on predicate and head (and
    synonym class), so only pairs with something in common are examined.
    """
    w = weights or EdgeWeights()
    preds = sorted(preds, key=lambda p: p.id)
    seen = set()
    for p in preds:
        if p.id in seen:
            raise GraphError(f"duplicate node id {p.id}")
        seen.add(p.id)

    index = defaultdict(list)
    for i, p in enumerate(preds):
        keys = set()
        if p.predicate is not None:
            keys.add(("p", p.predicate))
        for h in p.heads:
            keys.add(("h", h))
            if synonyms:
                keys.add(("h", synonyms.get(h, h)))
        for k in keys:
            index[k].append(i)

    pairs = set()
    for members in index.values():
        for i, j in combinations(members, 2):
            pairs.add((i, j))

    edges = {}
    for i, j in sorted(pairs):
        e = _link(preds[i], preds[j], w, synonyms, pred_cross_only)
        if e is not None:
            edges[(e.a, e.b)] = e
    return CohesionGraph(tuple(preds), edges)


def components(g: CohesionGraph) -> list[frozenset]:
    """Connected components, ordered by their smallest node id."""
    seen = set()
    out = []
    for start in sorted(g.node_ids):
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            for u in g.neighbours(v):
                if u not in seen:
                    seen.add(u)
                    comp.add(u)
                    queue.append(u)
        out.append(frozenset(comp))
    return out


def linkage_stats(g: CohesionGraph) -> dict:
    edges = g.sorted_edges()
    comps = components(g)
    inter = sum(1 for e in edges if EdgeType.SIMILAR_ARGUMENT_INTER in e.types)
    return {
        "nodes": len(g.nodes),
        "edges": len(edges),
        "components": len(comps),
        "largest_component": max((len(c) for c in comps), default=0),
        "inter_fraction": inter / len(edges) if edges else 0.0,
    }


def _type_names(types):
    return [t.value for t in TYPE_ORDER if t in types]


def graph_to_dict(g: CohesionGraph) -> dict:
    return {
        "nodes": [predication_record(p) for p in g.nodes],
        "edges": [{"a": e.a, "b": e.b, "types": _type_names(e.types), "w": e.weight}
                  for e in g.sorted_edges()],
    }


def _dot_quote(s):
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_graph(g: CohesionGraph, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(graph_to_dict(g), ensure_ascii=False, indent=1) + "\n").encode("utf-8")
    if fmt == "dot":
        lines = ["graph cohesion {"]
        for p in g.nodes:
            label = f"{p.id}: {p}" + ("" if p.complete else " *")
            lines.append(f"  n{p.id} [label={_dot_quote(label)}];")
        for e in g.sorted_edges():
            label = "+".join(_type_names(e.types)) + f" {e.weight:.6g}"
            lines.append(f"  n{e.a} -- n{e.b} [label={_dot_quote(label)}];")
        lines.append("}")
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown graph format {fmt!r} (expected json or dot)")
