"""Load lexica and reference cross-reference edge lists from disk.

File formats:
  - lexicon: JSON object ``{"source": str, "terms": [{"canonical": str,
    "aliases": [str, ...]}, ...]}``
  - edge list: CSV with header ``source,target``, one directed edge per row;
    values may be canonical terms or aliases (aliases always resolve here,
    independently of the mention-extraction alias flag).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import IO, Iterable

from .errors import AliasCollision, DuplicateTerm, ParseError, UnknownTerm
from .graph import DirectedGraph, build_graph
from .text import normalize


@dataclass(frozen=True)
class LexiconEntry:
    canonical: str
    aliases: tuple[str, ...] = ()


@dataclass(frozen=True)
class Lexicon:
    """Entity set with canonical surface forms and optional aliases.

    Canonical forms must be unique after normalization, and no alias may
    collide with another entry's canonical or alias. Violations raise at
    construction time so a Lexicon in hand is always internally consistent.
    """

    entries: tuple[LexiconEntry, ...]
    source_name: str = ""

    def __post_init__(self):
        if not self.entries:
            raise ParseError("empty lexicon")
        seen: dict[str, str] = {}
        for entry in self.entries:
            key = normalize(entry.canonical)
            if not key:
                raise ParseError(f"blank canonical term {entry.canonical!r}")
            if key in seen:
                raise DuplicateTerm(
                    f"duplicate term {entry.canonical!r} collides with {seen[key]!r}"
                )
            seen[key] = entry.canonical
        for entry in self.entries:
            for alias in entry.aliases:
                key = normalize(alias)
                if key == normalize(entry.canonical):
                    continue  # alias repeating its own headword is redundant, not a conflict
                if key in seen and seen[key] != entry.canonical:
                    raise AliasCollision(
                        f"alias {alias!r} of {entry.canonical!r} collides with {seen[key]!r}"
                    )
                seen[key] = entry.canonical

    @property
    def terms(self) -> tuple[str, ...]:
        return tuple(sorted(e.canonical for e in self.entries))

    @property
    def term_set(self) -> frozenset[str]:
        return frozenset(e.canonical for e in self.entries)

    def resolve(self, surface: str, use_aliases: bool = True) -> str | None:
        """Map a surface form (canonical or alias) to its canonical term, or None."""
        return _resolution_table(self, use_aliases).get(normalize(surface))


@lru_cache(maxsize=None)
def _resolution_table(lex: Lexicon, use_aliases: bool) -> dict[str, str]:
    table: dict[str, str] = {}
    for entry in lex.entries:
        table[normalize(entry.canonical)] = entry.canonical
        if use_aliases:
            for alias in entry.aliases:
                table.setdefault(normalize(alias), entry.canonical)
    return table


@lru_cache(maxsize=None)
def surface_table(lex: Lexicon, use_aliases: bool, exact_case: bool) -> dict[str, str]:
    """Surface form -> canonical term, keyed as the mention scanner will see it.

    Keys are normalized surfaces by default, or raw surfaces under byte-exact
    matching.
    """
    table: dict[str, str] = {}
    for entry in lex.entries:
        surfaces = (entry.canonical, *entry.aliases) if use_aliases else (entry.canonical,)
        for surface in surfaces:
            key = surface if exact_case else normalize(surface)
            if key:
                table.setdefault(key, entry.canonical)
    return table


def load_lexicon(stream: IO[str] | str | Path) -> Lexicon:
    """Parse a lexicon JSON file into a validated Lexicon."""
    text = _read(stream)
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"lexicon JSON invalid at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(payload, dict) or not isinstance(payload.get("terms"), list):
        raise ParseError('lexicon must be an object with a "terms" array')
    entries = []
    for i, item in enumerate(payload["terms"]):
        if not isinstance(item, dict) or not isinstance(item.get("canonical"), str):
            raise ParseError(f'terms[{i}] must be an object with a string "canonical" field')
        aliases = item.get("aliases", [])
        if not isinstance(aliases, list) or not all(isinstance(a, str) for a in aliases):
            raise ParseError(f'terms[{i}].aliases must be an array of strings')
        entries.append(LexiconEntry(item["canonical"], tuple(aliases)))
    source = payload.get("source", "")
    if not isinstance(source, str):
        raise ParseError('"source" must be a string')
    return Lexicon(entries=tuple(entries), source_name=source)


def load_reference_edges(stream: IO[str] | str | Path, lex: Lexicon) -> DirectedGraph:
    """Parse a `source,target` edge CSV into a DirectedGraph over the lexicon.

    Every row must resolve (canonical or alias) to a lexicon term; rows that
    do not are collected and raised together as :class:`UnknownTerm` rather
    than skipped. The node universe is always the full lexicon, so isolated
    terms stay in the graph.
    """
    text = _read(stream)
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("edge file is empty") from None
    if [h.strip().lower() for h in header] != ["source", "target"]:
        raise ParseError(f"edge file header must be 'source,target', got {','.join(header)!r}")
    edges: list[tuple[str, str]] = []
    failures: list[tuple[str, int | None]] = []
    for row_no, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 2:
            raise ParseError(f"row {row_no}: expected 2 columns, got {len(row)}")
        src = lex.resolve(row[0])
        dst = lex.resolve(row[1])
        if src is None:
            failures.append((row[0], row_no))
        if dst is None:
            failures.append((row[1], row_no))
        if src is not None and dst is not None:
            edges.append((src, dst))
    if failures:
        raise UnknownTerm(failures)
    return build_graph(lex.terms, edges)


def write_edges(g: DirectedGraph, path: str | Path) -> Path:
    """Write a graph's edge set as a `source,target` CSV, rows sorted for determinism."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = ["source,target"]
    lines += [f"{_csv_cell(u)},{_csv_cell(v)}" for u, v in sorted(g.edges)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def _csv_cell(value: str) -> str:
    if any(c in value for c in ',"\n'):
        return '"' + value.replace('"', '""') + '"'
    return value


def _read(stream: IO[str] | str | Path) -> str:
    if isinstance(stream, (str, Path)):
        return Path(stream).read_text(encoding="utf-8")
    return stream.read()
