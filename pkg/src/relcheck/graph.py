"""Immutable directed-graph value type shared by every pipeline stage.

A graph is a simple digraph: lexicographically ordered node tuple, a
deduplicated edge set, and no self-loops. Both the reference graph and the
model-induced graph always carry the full lexicon as their node universe so
downstream per-node averages and matrix layouts line up.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

import numpy as np

from .errors import UnknownEndpoint

Edge = tuple[str, str]


class DegreePair(NamedTuple):
    in_degree: int
    out_degree: int


@dataclass(frozen=True)
class DirectedGraph:
    """Immutable simple digraph. Construct through :func:`build_graph`."""

    nodes: tuple[str, ...]
    edges: frozenset[Edge]

    @cached_property
    def node_set(self) -> frozenset[str]:
        return frozenset(self.nodes)

    @cached_property
    def node_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.nodes)}

    @cached_property
    def out_neighbors(self) -> dict[str, frozenset[str]]:
        nbrs: dict[str, set[str]] = {v: set() for v in self.nodes}
        for u, v in self.edges:
            nbrs[u].add(v)
        return {v: frozenset(s) for v, s in nbrs.items()}

    @cached_property
    def in_neighbors(self) -> dict[str, frozenset[str]]:
        nbrs: dict[str, set[str]] = {v: set() for v in self.nodes}
        for u, v in self.edges:
            nbrs[v].add(u)
        return {v: frozenset(s) for v, s in nbrs.items()}

    def out_degree(self, v: str) -> int:
        return len(self.out_neighbors[v])

    def in_degree(self, v: str) -> int:
        return len(self.in_neighbors[v])

    def adjacency(self) -> np.ndarray:
        """Dense adjacency matrix in node order: A[i, j] = 1 iff (nodes[i], nodes[j]) is an edge."""
        n = len(self.nodes)
        a = np.zeros((n, n), dtype=np.float64)
        idx = self.node_index
        for u, v in self.edges:
            a[idx[u], idx[v]] = 1.0
        return a

    def undirected_edges(self) -> frozenset[Edge]:
        """Symmetrized, deduplicated projection; each pair appears once, sorted."""
        return frozenset(tuple(sorted((u, v))) for u, v in self.edges)


def build_graph(nodes: Iterable[str], edges: Iterable[Edge] = ()) -> DirectedGraph:
    """Normalize (nodes, edges) into a DirectedGraph.

    Duplicate edges collapse, self-loops are dropped, node order is
    canonicalized lexicographically. An edge endpoint missing from ``nodes``
    raises :class:`UnknownEndpoint`.
    """
    node_tuple = tuple(sorted(set(nodes)))
    members = set(node_tuple)
    cleaned: set[Edge] = set()
    for u, v in edges:
        if u not in members:
            raise UnknownEndpoint(f"edge ({u!r}, {v!r}) references unknown node {u!r}")
        if v not in members:
            raise UnknownEndpoint(f"edge ({u!r}, {v!r}) references unknown node {v!r}")
        if u == v:
            continue
        cleaned.add((u, v))
    return DirectedGraph(nodes=node_tuple, edges=frozenset(cleaned))


def degrees(g: DirectedGraph) -> dict[str, DegreePair]:
    """Per-node (in-degree, out-degree) record."""
    return {
        v: DegreePair(len(g.in_neighbors[v]), len(g.out_neighbors[v])) for v in g.nodes
    }


def edge_set(g: DirectedGraph) -> frozenset[Edge]:
    return g.edges
