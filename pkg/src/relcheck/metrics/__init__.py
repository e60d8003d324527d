from .edge_level import Layer3Report, edge_prf, f1_score
from .graph_level import (
    CoverageRatios,
    Layer1Report,
    coverage_ratios,
    detect_communities,
    jaccard_edges,
    layer1_report,
    nmi,
    sem_sim,
    spectral_sim,
    sss_index,
    struct_sim,
)
from .node_level import CentralityVectors, Layer2Report, centralities, layer2_report, spearman

__all__ = [
    "CentralityVectors",
    "CoverageRatios",
    "Layer1Report",
    "Layer2Report",
    "Layer3Report",
    "centralities",
    "coverage_ratios",
    "detect_communities",
    "edge_prf",
    "f1_score",
    "jaccard_edges",
    "layer1_report",
    "layer2_report",
    "nmi",
    "sem_sim",
    "spearman",
    "spectral_sim",
    "sss_index",
    "struct_sim",
]
