"""Edge-level link recovery: induced edges as predicted links against curated truth."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import EmptyReference, NodeUniverseMismatch
from ..graph import DirectedGraph


@dataclass(frozen=True)
class Layer3Report:
    precision: float
    recall: float
    f1: float
    true_positives: int
    predicted: int
    actual: int


def f1_score(precision: float, recall: float) -> float:
    """Harmonic mean of precision and recall; 0 when both are 0."""
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def edge_prf(ref: DirectedGraph, llm: DirectedGraph) -> Layer3Report:
    """Precision/recall/F1 with exact directed-pair matching.

    All three scores are 0 for an empty predicted edge set. An empty
    reference leaves the metrics undefined and is an input error, since a
    curated source always has edges.
    """
    if ref.nodes != llm.nodes:
        raise NodeUniverseMismatch("link recovery requires one shared node universe")
    if not ref.edges:
        raise EmptyReference("reference graph has no edges; precision/recall undefined")
    actual = len(ref.edges)
    predicted = len(llm.edges)
    if predicted == 0:
        return Layer3Report(0.0, 0.0, 0.0, true_positives=0, predicted=0, actual=actual)
    tp = len(ref.edges & llm.edges)
    precision = tp / predicted
    recall = tp / actual
    return Layer3Report(
        precision=precision,
        recall=recall,
        f1=f1_score(precision, recall),
        true_positives=tp,
        predicted=predicted,
        actual=actual,
    )
