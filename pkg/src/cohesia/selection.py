"""Node-set scoring and selection over a cohesion graph.

A node set is scored on three normalised criteria:

* centrality: mean weighted degree of its members relative to the
  best-connected node in the graph;
* representativeness: share of the graph covered by the members' closed
  neighbourhoods (or, optionally, by their connected components);
* coherence: internal edge weight relative to a clique of maximum-weight
  edges on the same members.

All three are ratios of edge weights, so rescaling every weight leaves
scores and selections unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .cohesion import CohesionGraph, components

# totals closer than this count as tied; keeps tie-breaks stable under rescaling
TIE_EPS = 1e-9
EXHAUSTIVE_LIMIT = 20
REPRESENTATIVENESS_MODES = ("neighbourhood", "component")


@dataclass(frozen=True)
class ScoreWeights:
    alpha: float = 1 / 3
    beta: float = 1 / 3
    gamma: float = 1 / 3
    delta: float = 0.0

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if abs(self.alpha + self.beta + self.gamma - 1.0) > 1e-9:
            raise ValueError("alpha + beta + gamma must equal 1")


@dataclass(frozen=True)
class Breakdown:
    centrality: float
    representativeness: float
    coherence: float
    prior: float
    total: float

    def as_dict(self):
        return {"centrality": self.centrality, "representativeness": self.representativeness,
                "coherence": self.coherence, "prior": self.prior, "total": self.total}


@dataclass(frozen=True)
class Selection:
    node_ids: tuple[int, ...]
    breakdown: Breakdown
    budget_k: int

    def as_dict(self):
        return {"node_ids": list(self.node_ids), "budget_k": self.budget_k,
                "breakdown": self.breakdown.as_dict()}


class SelectionError(ValueError):
    pass


def budget_from_ratio(ratio: float, n_nodes: int) -> int:
    """max(1, round(ratio * n)), rounding halves up."""
    return max(1, math.floor(ratio * n_nodes + 0.5))


def node_prior(p) -> float:
    m = p.markedness
    return (m.location_score + max(m.cue_score, 0.0)) / 2


class _Scorer:
    def __init__(self, g: CohesionGraph, w: ScoreWeights, representativeness="neighbourhood"):
        if representativeness not in REPRESENTATIVENESS_MODES:
            raise ValueError(f"unknown representativeness mode {representativeness!r}")
        self.g = g
        self.w = w
        self.n = len(g.nodes)
        self.deg = {v: g.degree(v) for v in g.node_ids}
        self.dmax = max(self.deg.values(), default=0.0)
        self.wmax = max((e.weight for e in g.edges.values()), default=0.0)
        if representativeness == "neighbourhood":
            self.cover = {v: frozenset(g.neighbours(v)) | {v} for v in g.node_ids}
        else:
            self.cover = {v: c for c in components(g) for v in c}
        self.prior = {p.id: node_prior(p) for p in g.nodes}
        self.key = {p.id: (p.sentence_index, p.id) for p in g.nodes}

    def norm_deg(self, v):
        return self.deg[v] / self.dmax if self.dmax > 0 else 0.0

    def combine(self, c, r, h, p):
        w = self.w
        return w.alpha * c + w.beta * r + w.gamma * h + w.delta * p

    def coherence(self, size, internal):
        if size == 1:
            return 1.0
        if self.wmax <= 0:
            return 0.0
        return internal / (self.wmax * math.comb(size, 2))

    def breakdown(self, nodes) -> Breakdown:
        nodes = sorted(nodes)
        if not nodes:
            raise SelectionError("cannot score an empty node set")
        missing = [v for v in nodes if v not in self.deg]
        if missing:
            raise SelectionError(f"nodes not in graph: {missing}")
        k = len(nodes)
        c = sum(self.norm_deg(v) for v in nodes) / k
        covered = set()
        for v in nodes:
            covered |= self.cover[v]
        r = len(covered) / self.n
        internal = sum(self.g.weight(a, b) for a, b in combinations(nodes, 2))
        h = self.coherence(k, internal)
        p = sum(self.prior[v] for v in nodes) / k
        return Breakdown(c, r, h, p, self.combine(c, r, h, p))


def score(nodes, g: CohesionGraph, w: ScoreWeights | None = None,
          representativeness: str = "neighbourhood") -> Breakdown:
    return _Scorer(g, w or ScoreWeights(), representativeness).breakdown(nodes)


def _pick(candidates, key):
    """Lowest-key candidate among those within TIE_EPS of the best total."""
    best = max(t for t, _ in candidates)
    return min((key(x), x) for t, x in candidates if t >= best - TIE_EPS)[1]


def greedy_select(g: CohesionGraph, k: int, w: ScoreWeights | None = None,
                  representativeness: str = "neighbourhood") -> Selection:
    """Grow a node set one node at a time, always taking the best enlarged set.

    Ties go to the node with the lower sentence index, then the lower id.
    """
    if not g.nodes:
        raise SelectionError("cannot select from an empty graph")
    if k < 1:
        raise SelectionError("budget k must be >= 1")
    s = _Scorer(g, w or ScoreWeights(), representativeness)
    target = min(k, s.n)
    chosen = []
    chosen_set = set()
    sum_nd = sum_prior = internal = 0.0
    covered = set()
    remaining = set(g.node_ids)
    while len(chosen) < target:
        size = len(chosen) + 1
        candidates = []
        for v in remaining:
            add = sum(wt for u, wt in sorted(g.neighbours(v).items()) if u in chosen_set)
            c = (sum_nd + s.norm_deg(v)) / size
            r = (len(covered) + len(s.cover[v] - covered)) / s.n
            h = s.coherence(size, internal + add)
            p = (sum_prior + s.prior[v]) / size
            candidates.append((s.combine(c, r, h, p), v))
        v = _pick(candidates, lambda x: s.key[x])
        internal += sum(g.weight(u, v) for u in chosen)
        chosen.append(v)
        chosen_set.add(v)
        remaining.discard(v)
        sum_nd += s.norm_deg(v)
        sum_prior += s.prior[v]
        covered |= s.cover[v]
    nodes = tuple(sorted(chosen))
    return Selection(nodes, s.breakdown(nodes), k)


def exhaustive_select(g: CohesionGraph, k: int, w: ScoreWeights | None = None,
                      representativeness: str = "neighbourhood") -> Selection:
    """True best k-subset by enumeration; a test oracle for greedy_select."""
    if not g.nodes:
        raise SelectionError("cannot select from an empty graph")
    if len(g.nodes) > EXHAUSTIVE_LIMIT:
        raise SelectionError(f"exhaustive search limited to {EXHAUSTIVE_LIMIT} nodes")
    if k < 1:
        raise SelectionError("budget k must be >= 1")
    s = _Scorer(g, w or ScoreWeights(), representativeness)
    ordered = sorted(g.node_ids, key=lambda v: s.key[v])
    target = min(k, s.n)
    candidates = [(s.breakdown(combo).total, combo) for combo in combinations(ordered, target)]
    best = _pick(candidates, lambda combo: tuple(sorted(s.key[v] for v in combo)))
    nodes = tuple(sorted(best))
    return Selection(nodes, s.breakdown(nodes), k)


def project_to_sentences(sel: Selection, g: CohesionGraph, m: int,
                         n_sentences: int | None = None) -> list[int]:
    """Top ``m`` sentences by selected-predication count, returned in source order.

    Ties on count go to higher summed weighted degree, then earlier position.
    Sentences without selected predications rank last, by position. The
    candidates are ``range(n_sentences)`` when given, else every sentence
    that holds a graph node.
    """
    if m < 1:
        return []
    counts = {}
    mass = {}
    for v in sel.node_ids:
        s = g.node(v).sentence_index
        counts[s] = counts.get(s, 0) + 1
        mass[s] = mass.get(s, 0.0) + g.degree(v)
    if n_sentences is None:
        pool = {p.sentence_index for p in g.nodes}
    else:
        pool = set(range(n_sentences))
    pool |= set(counts)
    dmax = max((g.degree(v) for v in g.node_ids), default=0.0) or 1.0
    ranked = sorted(pool, key=lambda s: (-counts.get(s, 0), -round(mass.get(s, 0.0) / dmax, 9), s))
    return sorted(ranked[:m])
