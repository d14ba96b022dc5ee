"""Shallow indicative summarisation over cohesion graphs of atomic predications."""

from .cohesion import CohesionGraph, EdgeType, EdgeWeights, build_graph, components, export_graph
from .factors import EngineParams, FactorProfile, parse_profile, resolve
from .ingest import Document, annotate_markedness, lemmatize, parse_document, read_document, segment
from .interpret import (Argument, Predication, export_predications, extract_predications,
                        ingest_predications, interpret, resolve_anaphors)
from .pipeline import run_engine, summarize
from .selection import ScoreWeights, Selection, exhaustive_select, greedy_select, project_to_sentences, score
from .synthesize import SummaryOutput, TopicCluster, cluster, render

__version__ = "0.1.0"
