"""relcheck: validate a language model's relational knowledge against a reference graph.

The pipeline induces a directed graph from model responses under a
conservative explicit-mention rule and scores its agreement with an
expert-curated cross-reference graph at the graph, node, and edge levels.
"""

from .graph import DegreePair, DirectedGraph, build_graph, degrees, edge_set
from .harvest import (
    EndpointConfig,
    ResponseCorpus,
    ResponseRecord,
    corpus_from_cache,
    harvest,
    render_prompt,
)
from .lexicon import Lexicon, LexiconEntry, load_lexicon, load_reference_edges, write_edges
from .mentions import MentionMatch, find_mentions, induce_graph, normalize
from .metrics import (
    Layer1Report,
    Layer2Report,
    Layer3Report,
    centralities,
    coverage_ratios,
    detect_communities,
    edge_prf,
    jaccard_edges,
    layer1_report,
    layer2_report,
    nmi,
    sem_sim,
    spearman,
    spectral_sim,
    sss_index,
    struct_sim,
)
from .report import EvalConfig, FullReport, emit_csv, emit_json, emit_plots, evaluate
from .synth import DegradationSpec, degrade, generate_reference, sweep

__version__ = "0.1.0"

__all__ = [
    "DegradationSpec",
    "DegreePair",
    "DirectedGraph",
    "EndpointConfig",
    "EvalConfig",
    "FullReport",
    "Layer1Report",
    "Layer2Report",
    "Layer3Report",
    "Lexicon",
    "LexiconEntry",
    "MentionMatch",
    "ResponseCorpus",
    "ResponseRecord",
    "build_graph",
    "centralities",
    "corpus_from_cache",
    "coverage_ratios",
    "degrade",
    "degrees",
    "detect_communities",
    "edge_prf",
    "edge_set",
    "emit_csv",
    "emit_json",
    "emit_plots",
    "evaluate",
    "find_mentions",
    "generate_reference",
    "harvest",
    "induce_graph",
    "jaccard_edges",
    "layer1_report",
    "layer2_report",
    "load_lexicon",
    "load_reference_edges",
    "nmi",
    "normalize",
    "render_prompt",
    "sem_sim",
    "spearman",
    "spectral_sim",
    "sss_index",
    "struct_sim",
    "sweep",
    "write_edges",
]
