"""Graph-level agreement between the reference and model-induced graphs.

Covers global adjacency alignment, degree-normalized relational coverage,
their harmonic combination, Jaccard edge overlap, a spectral diagnostic, and
community-structure agreement via seeded Louvain + NMI.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Mapping

import networkx as nx
import numpy as np
from networkx.algorithms.community import louvain_communities

from ..errors import InvalidParam, NodeUniverseMismatch, PartitionDomainMismatch
from ..graph import DirectedGraph

Partition = dict[str, int]

SEMSIM_MODES = ("matched", "raw-clamped")


def _require_same_universe(ref: DirectedGraph, llm: DirectedGraph) -> None:
    if ref.nodes != llm.nodes:
        raise NodeUniverseMismatch(
            f"graphs must share one node universe ({len(ref.nodes)} vs {len(llm.nodes)} nodes)"
        )


@dataclass(frozen=True)
class Layer1Report:
    sss: float
    struct_sim: float
    sem_sim: float
    nmi: float
    jaccard: float
    spectral_sim: float


@dataclass(frozen=True)
class CoverageRatios:
    """Per-node fraction of reference relations realized in the induced graph."""

    rho_out: Mapping[str, float]
    rho_in: Mapping[str, float]


def struct_sim(ref: DirectedGraph, llm: DirectedGraph) -> float:
    """Cosine similarity of the vectorized adjacency matrices under identity correspondence.

    Equals |shared edges| / sqrt(|model edges| * |reference edges|); 0 when
    either edge set is empty.
    """
    _require_same_universe(ref, llm)
    if not ref.edges or not llm.edges:
        return 0.0
    shared = len(ref.edges & llm.edges)
    return shared / math.sqrt(len(ref.edges) * len(llm.edges))


def spectral_sim(ref: DirectedGraph, llm: DirectedGraph) -> float:
    """1 / (1 + d) with d the distance between sorted Laplacian spectra of the symmetrized graphs."""
    _require_same_universe(ref, llm)
    d = float(np.linalg.norm(_laplacian_spectrum(ref) - _laplacian_spectrum(llm)))
    return 1.0 / (1.0 + d)


def _laplacian_spectrum(g: DirectedGraph) -> np.ndarray:
    n = len(g.nodes)
    a = np.zeros((n, n))
    idx = g.node_index
    for u, v in g.undirected_edges():
        a[idx[u], idx[v]] = 1.0
        a[idx[v], idx[u]] = 1.0
    lap = np.diag(a.sum(axis=1)) - a
    return np.sort(np.linalg.eigvalsh(lap))


def coverage_ratios(
    ref: DirectedGraph, llm: DirectedGraph, mode: str = "matched"
) -> CoverageRatios:
    """Out/in coverage per node, normalized by reference degree.

    ``matched`` (default) counts only neighbors shared with the reference, so
    the ratio is the proportion of expert-validated relations realized.
    ``raw-clamped`` is the literal degree quotient min(1, d_llm / d_ref). Both
    are 0 for nodes with zero reference degree.
    """
    _require_same_universe(ref, llm)
    if mode not in SEMSIM_MODES:
        raise InvalidParam(f"unknown coverage mode {mode!r}; expected one of {SEMSIM_MODES}")
    rho_out: dict[str, float] = {}
    rho_in: dict[str, float] = {}
    for v in ref.nodes:
        rho_out[v] = _ratio(ref.out_neighbors[v], llm.out_neighbors[v], mode)
        rho_in[v] = _ratio(ref.in_neighbors[v], llm.in_neighbors[v], mode)
    return CoverageRatios(rho_out=rho_out, rho_in=rho_in)


def _ratio(ref_nbrs: frozenset[str], llm_nbrs: frozenset[str], mode: str) -> float:
    if not ref_nbrs:
        return 0.0
    if mode == "matched":
        return len(ref_nbrs & llm_nbrs) / len(ref_nbrs)
    return min(1.0, len(llm_nbrs) / len(ref_nbrs))


def sem_sim(ratios: CoverageRatios) -> float:
    """Mean over all nodes of the average of out- and in-coverage ratios."""
    nodes = list(ratios.rho_out)
    if not nodes:
        return 0.0
    total = sum((ratios.rho_out[v] + ratios.rho_in[v]) / 2.0 for v in nodes)
    return total / len(nodes)


def sss_index(struct_score: float, sem_score: float) -> float:
    """Harmonic mean of the structural and relational scores; 0 when both are 0."""
    for name, value in (("struct", struct_score), ("sem", sem_score)):
        if not 0.0 <= value <= 1.0:
            raise InvalidParam(f"{name} score {value} outside [0, 1]")
    if struct_score + sem_score == 0.0:
        return 0.0
    return 2.0 * struct_score * sem_score / (struct_score + sem_score)


def jaccard_edges(ref: DirectedGraph, llm: DirectedGraph) -> float:
    """|intersection| / |union| of the edge sets; 1 when both empty, 0 when exactly one is."""
    _require_same_universe(ref, llm)
    if not ref.edges and not llm.edges:
        return 1.0
    if not ref.edges or not llm.edges:
        return 0.0
    return len(ref.edges & llm.edges) / len(ref.edges | llm.edges)


def detect_communities(g: DirectedGraph, seed: int) -> Partition:
    """Louvain partition of the symmetrized undirected projection.

    Deterministic for a fixed seed and the graph's canonical node order.
    Isolated nodes (and the empty graph) yield singleton communities. Labels
    are canonicalized: communities numbered by their smallest member.
    """
    undirected = g.undirected_edges()
    if not undirected:
        return {v: i for i, v in enumerate(g.nodes)}
    graph = nx.Graph()
    graph.add_nodes_from(g.nodes)
    graph.add_edges_from(sorted(undirected))
    communities = louvain_communities(graph, seed=seed)
    ordered = sorted(communities, key=min)
    return {v: label for label, block in enumerate(ordered) for v in block}


def nmi(p: Partition, q: Partition) -> float:
    """Normalized mutual information 2I/(H(p)+H(q)), natural logarithms.

    Degenerate pins: identical partitions score 1 even with zero entropy;
    an uninformative partition (single block, or every node a singleton)
    compared against anything different scores 0. The latter is what an
    edgeless induced graph produces, so zero-signal rows stay zero.
    """
    if p.keys() != q.keys():
        raise PartitionDomainMismatch("partitions cover different node sets")
    n = len(p)
    if n == 0:
        return 1.0
    if _blocks(p) == _blocks(q):
        return 1.0
    if _uninformative(p) or _uninformative(q):
        return 0.0
    joint = Counter((p[v], q[v]) for v in p)
    pc = Counter(p.values())
    qc = Counter(q.values())
    mutual = 0.0
    for (a, b), c in joint.items():
        mutual += (c / n) * math.log(c * n / (pc[a] * qc[b]))
    h_p = -sum((c / n) * math.log(c / n) for c in pc.values())
    h_q = -sum((c / n) * math.log(c / n) for c in qc.values())
    return min(1.0, max(0.0, 2.0 * mutual / (h_p + h_q)))


def _blocks(p: Partition) -> frozenset[frozenset[str]]:
    groups: dict[int, set[str]] = {}
    for v, label in p.items():
        groups.setdefault(label, set()).add(v)
    return frozenset(frozenset(g) for g in groups.values())


def _uninformative(p: Partition) -> bool:
    k = len(set(p.values()))
    return k == 1 or k == len(p)


def layer1_report(
    ref: DirectedGraph,
    llm: DirectedGraph,
    *,
    semsim_mode: str = "matched",
    louvain_seed: int = 0,
) -> Layer1Report:
    """All graph-level scores for one source.

    When the induced edge set is empty against a nonempty reference, NMI is
    pinned to 0 along with the rest of the row: an edgeless graph carries no
    community signal.
    """
    _require_same_universe(ref, llm)
    s = struct_sim(ref, llm)
    m = sem_sim(coverage_ratios(ref, llm, semsim_mode))
    if not llm.edges and ref.edges:
        community_score = 0.0
    else:
        community_score = nmi(
            detect_communities(ref, louvain_seed), detect_communities(llm, louvain_seed)
        )
    return Layer1Report(
        sss=sss_index(s, m),
        struct_sim=s,
        sem_sim=m,
        nmi=community_score,
        jaccard=jaccard_edges(ref, llm),
        spectral_sim=spectral_sim(ref, llm),
    )
