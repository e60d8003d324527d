"""Synthetic reference graphs and controlled degradations of them.

Real curated sources and model outputs are expensive; these generators let
the metric stack be validated against known ground truth. Degradation acts
directly on graphs (deletion, spurious injection, hub-biased omission), so it
exercises the metrics, not the text extraction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

from .errors import InvalidParam
from .graph import DirectedGraph, build_graph

if TYPE_CHECKING:
    from .report import EvalConfig, FullReport


@dataclass(frozen=True)
class DegradationSpec:
    """Parameters for one synthetic perturbation; same spec + seed, same graph.

    ``hub_bias`` > 0 skews deletions toward edges whose source has low
    out-degree, modelling structured rather than uniform omission.
    """

    p_delete: float = 0.0
    p_spurious: float = 0.0
    hub_bias: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.p_delete <= 1.0:
            raise InvalidParam(f"p_delete {self.p_delete} outside [0, 1]")
        if not 0.0 <= self.p_spurious <= 1.0:
            raise InvalidParam(f"p_spurious {self.p_spurious} outside [0, 1]")
        if self.hub_bias < 0.0:
            raise InvalidParam(f"hub_bias {self.hub_bias} must be >= 0")

    def label(self) -> str:
        return (
            f"pdel{self.p_delete:g}-pspur{self.p_spurious:g}"
            f"-hb{self.hub_bias:g}-seed{self.seed}"
        )


def generate_reference(n: int, avg_out_degree: float, seed: int) -> DirectedGraph:
    """Random simple digraph: each ordered pair is an edge with rate avg_out_degree/(n-1)."""
    if n < 2:
        raise InvalidParam(f"need at least 2 nodes, got {n}")
    if not 0.0 <= avg_out_degree <= n - 1:
        raise InvalidParam(f"avg_out_degree {avg_out_degree} outside [0, {n - 1}]")
    width = len(str(n - 1))
    nodes = [f"n{i:0{width}d}" for i in range(n)]  # zero-padded so lexicographic = numeric
    rate = avg_out_degree / (n - 1)
    rng = random.Random(seed)
    edges = []
    for u in nodes:
        for v in nodes:
            if u != v and rng.random() < rate:
                edges.append((u, v))
    return build_graph(nodes, edges)


def degrade(ref: DirectedGraph, spec: DegradationSpec) -> DirectedGraph:
    """Perturbed copy of ``ref``: per-edge deletion, then spurious injection.

    Edge (u, v) is deleted with probability p_delete * w(u) where
    w(u) = (1 - d_out(u)/(d_max+1)) ** hub_bias, so low-degree sources lose
    edges first and w is identically 1 at hub_bias 0. Spurious edges are drawn
    among ordered pairs absent from the reference.
    """
    rng = random.Random(spec.seed)
    out_deg = {v: len(ref.out_neighbors[v]) for v in ref.nodes}
    d_max = max(out_deg.values(), default=0)
    kept = []
    for u, v in sorted(ref.edges):
        weight = (1.0 - out_deg[u] / (d_max + 1)) ** spec.hub_bias
        if rng.random() >= spec.p_delete * weight:
            kept.append((u, v))
    if spec.p_spurious > 0.0:
        for u in ref.nodes:
            for v in ref.nodes:
                if u != v and (u, v) not in ref.edges and rng.random() < spec.p_spurious:
                    kept.append((u, v))
    return build_graph(ref.nodes, kept)


def sweep(
    ref: DirectedGraph,
    grid: Sequence[DegradationSpec] | Iterable[DegradationSpec],
    config: "EvalConfig | None" = None,
) -> list[tuple[DegradationSpec, "FullReport"]]:
    """Evaluate every degraded variant against the reference, in grid order."""
    from .report import evaluate  # local import; report depends on the metric layers

    grid = list(grid)
    if not grid:
        raise InvalidParam("degradation grid is empty")
    rows = []
    for spec in grid:
        degraded = degrade(ref, spec)
        rows.append((spec, evaluate(ref, degraded, config, source_name=spec.label())))
    return rows
