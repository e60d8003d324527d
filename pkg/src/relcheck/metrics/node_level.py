"""Node-level agreement: centrality vectors and Spearman rank correlations.

Centralities are computed on the directed graphs: in/out-degree, betweenness
with Brandes accumulation normalized by (n-1)(n-2), and PageRank by power
iteration (damping 0.85, uniform teleport, dangling mass spread uniformly).
A correlation over a constant vector is undefined and reported as NaN, never
coerced to zero.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ..errors import LengthMismatch, NodeUniverseMismatch
from ..graph import DirectedGraph


@dataclass(frozen=True)
class CentralityVectors:
    in_degree: Mapping[str, float]
    out_degree: Mapping[str, float]
    betweenness: Mapping[str, float]
    pagerank: Mapping[str, float]


@dataclass(frozen=True)
class Layer2Report:
    rho_in_degree: float
    rho_out_degree: float
    rho_betweenness: float
    rho_pagerank: float

    MEASURES = ("in_degree", "out_degree", "betweenness", "pagerank")

    def as_dict(self) -> dict[str, float]:
        return {
            "in_degree": self.rho_in_degree,
            "out_degree": self.rho_out_degree,
            "betweenness": self.rho_betweenness,
            "pagerank": self.rho_pagerank,
        }


def centralities(
    g: DirectedGraph, *, pagerank_damping: float = 0.85, pagerank_tol: float = 1e-9
) -> CentralityVectors:
    return CentralityVectors(
        in_degree={v: float(len(g.in_neighbors[v])) for v in g.nodes},
        out_degree={v: float(len(g.out_neighbors[v])) for v in g.nodes},
        betweenness=_betweenness(g),
        pagerank=_pagerank(g, damping=pagerank_damping, tol=pagerank_tol),
    )


def _betweenness(g: DirectedGraph) -> dict[str, float]:
    """Brandes' algorithm on the directed graph, counting directed shortest paths."""
    n = len(g.nodes)
    idx = g.node_index
    adj = [sorted(idx[w] for w in g.out_neighbors[v]) for v in g.nodes]
    score = [0.0] * n
    for s in range(n):
        stack: list[int] = []
        preds: list[list[int]] = [[] for _ in range(n)]
        sigma = [0] * n
        sigma[s] = 1
        dist = [-1] * n
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = [0.0] * n
        while stack:
            w = stack.pop()
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                score[w] += delta[w]
    if n > 2:
        scale = 1.0 / ((n - 1) * (n - 2))
        score = [x * scale for x in score]
    else:
        score = [0.0] * n
    return {v: score[idx[v]] for v in g.nodes}


def _pagerank(g: DirectedGraph, *, damping: float, tol: float, max_iter: int = 10000) -> dict[str, float]:
    """Power iteration to L1 tolerance; an edgeless graph yields the uniform vector."""
    n = len(g.nodes)
    if n == 0:
        return {}
    idx = g.node_index
    out_deg = np.zeros(n)
    src: list[int] = []
    dst: list[int] = []
    for u, v in sorted(g.edges):
        src.append(idx[u])
        dst.append(idx[v])
        out_deg[idx[u]] += 1
    src_a = np.asarray(src, dtype=np.intp)
    dst_a = np.asarray(dst, dtype=np.intp)
    dangling = out_deg == 0
    inv_out = np.where(dangling, 0.0, 1.0 / np.maximum(out_deg, 1.0))

    x = np.full(n, 1.0 / n)
    for _ in range(max_iter):
        contrib = x * inv_out
        nxt = np.full(n, (1.0 - damping) / n)
        nxt += damping * x[dangling].sum() / n
        if len(src_a):
            np.add.at(nxt, dst_a, damping * contrib[src_a])
        if np.abs(nxt - x).sum() < tol:
            x = nxt
            break
        x = nxt
    return {v: float(x[idx[v]]) for v in g.nodes}


def spearman(x: Sequence[float], y: Sequence[float]) -> float:
    """Pearson correlation of average-ranked values; NaN when either rank vector is constant."""
    xs = np.asarray(x, dtype=np.float64)
    ys = np.asarray(y, dtype=np.float64)
    if xs.ndim != 1 or ys.ndim != 1:
        raise LengthMismatch("inputs must be one-dimensional")
    if xs.shape != ys.shape:
        raise LengthMismatch(f"length mismatch: {xs.shape[0]} vs {ys.shape[0]}")
    if xs.shape[0] < 2:
        raise LengthMismatch("need at least two observations")
    rx = _average_ranks(xs)
    ry = _average_ranks(ys)
    dx = rx - rx.mean()
    dy = ry - ry.mean()
    sx2 = float((dx * dx).sum())
    sy2 = float((dy * dy).sum())
    if sx2 == 0.0 or sy2 == 0.0:
        return float("nan")
    # single sqrt keeps r exactly +/-1 for identical or reversed rank vectors
    r = float((dx * dy).sum() / np.sqrt(sx2 * sy2))
    return min(1.0, max(-1.0, r))


def _average_ranks(values: np.ndarray) -> np.ndarray:
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values), dtype=np.float64)
    sorted_values = values[order]
    i = 0
    n = len(values)
    while i < n:
        j = i
        while j + 1 < n and sorted_values[j + 1] == sorted_values[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def layer2_report(
    ref: DirectedGraph,
    llm: DirectedGraph,
    *,
    pagerank_damping: float = 0.85,
    pagerank_tol: float = 1e-9,
) -> Layer2Report:
    """Spearman correlation per centrality between the two graphs, node-aligned."""
    if ref.nodes != llm.nodes:
        raise NodeUniverseMismatch("centrality vectors require one shared node universe")
    ref_c = centralities(ref, pagerank_damping=pagerank_damping, pagerank_tol=pagerank_tol)
    llm_c = centralities(llm, pagerank_damping=pagerank_damping, pagerank_tol=pagerank_tol)
    order = ref.nodes

    def corr(a: Mapping[str, float], b: Mapping[str, float]) -> float:
        return spearman([a[v] for v in order], [b[v] for v in order])

    return Layer2Report(
        rho_in_degree=corr(ref_c.in_degree, llm_c.in_degree),
        rho_out_degree=corr(ref_c.out_degree, llm_c.out_degree),
        rho_betweenness=corr(ref_c.betweenness, llm_c.betweenness),
        rho_pagerank=corr(ref_c.pagerank, llm_c.pagerank),
    )
