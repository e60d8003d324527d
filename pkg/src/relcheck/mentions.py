"""Induce the model graph from response text via the explicit-mention rule.

An edge (v, u) exists exactly when u's surface form occurs in the response
generated for v, at token boundaries, with longest-match-wins at overlapping
spans. No paraphrase resolution, coreference, or entity linking: every edge
is witnessed by a literal span in the response that re-verifies against the
lexicon.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING, Iterable

from .errors import UnknownTerm
from .graph import DirectedGraph, build_graph
from .lexicon import Lexicon, surface_table
from .text import NormalizedText, normalize

if TYPE_CHECKING:
    from .harvest import ResponseCorpus

__all__ = ["MentionMatch", "normalize", "find_mentions", "induce_graph", "scan_corpus"]


@dataclass(frozen=True, order=True)
class MentionMatch:
    """One witnessed mention: offsets are into the raw response text."""

    source_term: str
    target_term: str
    start: int
    end: int


@lru_cache(maxsize=None)
def _candidates_by_first_char(
    lex: Lexicon, use_aliases: bool, exact_case: bool
) -> dict[str, list[tuple[str, str]]]:
    # Longest surface first so one pass per position implements longest-match.
    table = surface_table(lex, use_aliases, exact_case)
    by_first: dict[str, list[tuple[str, str]]] = {}
    for key, canonical in sorted(table.items(), key=lambda kv: (-len(kv[0]), kv[0])):
        by_first.setdefault(key[0], []).append((key, canonical))
    return by_first


def find_mentions(
    response: str,
    lex: Lexicon,
    prompted: str,
    *,
    exact_case: bool = False,
    use_aliases: bool = False,
    longest_match: bool = True,
) -> set[MentionMatch]:
    """Every lexicon term explicitly mentioned in ``response``, excluding ``prompted``.

    A surface form matches only when bounded by non-alphanumeric characters or
    string ends ("art" never fires inside "party"). When ``longest_match`` is
    set (default), the longest surface starting at a position consumes its
    span, so nested terms do not double-fire. Each target term is reported at
    most once, at its leftmost span. With ``exact_case`` the scan is
    byte-exact; otherwise both sides are NFKC/case-fold/whitespace normalized.
    """
    if prompted not in lex.term_set:
        raise UnknownTerm([(prompted, None)])
    by_first = _candidates_by_first_char(lex, use_aliases, exact_case)
    if exact_case:
        hay = response
        norm_view = None
    else:
        norm_view = NormalizedText(response)
        hay = norm_view.text

    found: dict[str, MentionMatch] = {}
    n = len(hay)
    i = 0
    while i < n:
        if i > 0 and hay[i - 1].isalnum():
            i += 1
            continue
        consumed = 0
        for key, canonical in by_first.get(hay[i], ()):
            if not hay.startswith(key, i):
                continue
            end = i + len(key)
            if end < n and hay[end].isalnum():
                continue
            raw_start, raw_end = (i, end) if norm_view is None else norm_view.raw_span(i, end)
            span_text = response[raw_start:raw_end]
            verified = span_text == key if exact_case else normalize(span_text) == key
            if verified and canonical != prompted and canonical not in found:
                found[canonical] = MentionMatch(prompted, canonical, raw_start, raw_end)
            if longest_match:
                consumed = len(key)  # span is spoken for, nested surfaces do not fire
                break
        i += consumed if consumed else 1
    return set(found.values())


def induce_graph(
    corpus: "ResponseCorpus",
    lex: Lexicon,
    *,
    exact_case: bool = False,
    use_aliases: bool = False,
    longest_match: bool = True,
) -> DirectedGraph:
    """Directed graph over the full lexicon with one edge per witnessed mention.

    Terms with no response contribute no out-edges but remain as nodes, so a
    partial corpus still evaluates.
    """
    stray = sorted(set(corpus.records) - set(lex.term_set))
    if stray:
        raise UnknownTerm([(t, None) for t in stray])
    edges = []
    for term in lex.terms:
        record = corpus.records.get(term)
        if record is None:
            continue
        for match in find_mentions(
            record.response,
            lex,
            term,
            exact_case=exact_case,
            use_aliases=use_aliases,
            longest_match=longest_match,
        ):
            edges.append((term, match.target_term))
    return build_graph(lex.terms, edges)


def scan_corpus(
    corpus: "ResponseCorpus",
    lex: Lexicon,
    *,
    exact_case: bool = False,
    use_aliases: bool = False,
    longest_match: bool = True,
) -> list[MentionMatch]:
    """All mention matches across the corpus, sorted, for audit output."""
    matches: list[MentionMatch] = []
    for term in lex.terms:
        record = corpus.records.get(term)
        if record is None:
            continue
        matches.extend(
            find_mentions(
                record.response,
                lex,
                term,
                exact_case=exact_case,
                use_aliases=use_aliases,
                longest_match=longest_match,
            )
        )
    return sorted(matches)
