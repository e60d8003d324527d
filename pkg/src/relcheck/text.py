"""Text normalization shared by lexicon canonicalization and mention scanning."""

from __future__ import annotations

import unicodedata


def normalize(text: str) -> str:
    """NFKC-normalize, case fold, and collapse whitespace runs to single spaces."""
    folded = unicodedata.normalize("NFKC", text).casefold()
    return " ".join(folded.split())


class NormalizedText:
    """Normalized view of a raw string that maps match spans back to raw offsets.

    Characters are normalized one at a time so every normalized position
    remembers which raw character produced it. Matches found in ``text`` are
    translated with :meth:`raw_span`; callers re-verify the raw slice with
    :func:`normalize`, which drops the rare span where per-character and
    whole-string normalization disagree (multi-character combining sequences).
    """

    __slots__ = ("text", "_raw_starts", "_raw_ends")

    def __init__(self, raw: str):
        chars: list[str] = []
        starts: list[int] = []
        ends: list[int] = []
        pending_space = False
        for i, ch in enumerate(raw):
            if ch.isspace():
                pending_space = bool(chars)
                continue
            for sub in unicodedata.normalize("NFKC", ch).casefold():
                if sub.isspace():
                    pending_space = bool(chars)
                    continue
                if pending_space:
                    # separator anchored to the following raw char; never at a span edge
                    chars.append(" ")
                    starts.append(i)
                    ends.append(i)
                    pending_space = False
                chars.append(sub)
                starts.append(i)
                ends.append(i + 1)
        self.text = "".join(chars)
        self._raw_starts = starts
        self._raw_ends = ends

    def raw_span(self, start: int, end: int) -> tuple[int, int]:
        """Raw-text offsets covering normalized positions [start, end)."""
        return self._raw_starts[start], self._raw_ends[end - 1]
