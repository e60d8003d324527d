"""Query a chat-completion endpoint once per lexicon term, with an on-disk cache.

The cache is the unit of reproducibility: one JSON file per (model, prompt)
pair, written atomically, never mutated. Re-running a harvest with a warm
cache performs zero network requests and yields a byte-identical corpus.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import requests

from .errors import CacheCorruption, EmptyTerm, EndpointError
from .lexicon import Lexicon

PROMPT_TEMPLATE = (
    'Given the term "{term}". If you were to create a lexicon or encyclopedia, '
    "which other entities would you reference? Give me a list of them."
)


def render_prompt(term: str) -> str:
    """The single-turn user prompt for one term. The term is substituted verbatim."""
    if not term.strip():
        raise EmptyTerm("cannot render a prompt for an empty term")
    return PROMPT_TEMPLATE.format(term=term)


def prompt_template_hash() -> str:
    return hashlib.sha256(PROMPT_TEMPLATE.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class EndpointConfig:
    """Where and how to reach an OpenAI-compatible chat-completions endpoint."""

    url: str
    model: str
    api_key: str | None = None
    key_env: str = "RELCHECK_API_KEY"
    timeout: float = 60.0
    max_attempts: int = 3
    backoff: float = 1.0
    parallelism: int = 4
    temperature: float | None = 0.0  # deterministic decoding where supported

    def resolve_key(self) -> str | None:
        return self.api_key or os.environ.get(self.key_env)


@dataclass(frozen=True)
class ResponseRecord:
    term: str
    prompt: str
    response: str
    model_id: str
    timestamp: str
    attempt: int
    params: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        return {
            "term": self.term,
            "prompt": self.prompt,
            "response": self.response,
            "model_id": self.model_id,
            "timestamp": self.timestamp,
            "attempt": self.attempt,
            "params": dict(self.params),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ResponseRecord":
        return cls(
            term=data["term"],
            prompt=data["prompt"],
            response=data["response"],
            model_id=data["model_id"],
            timestamp=data["timestamp"],
            attempt=int(data["attempt"]),
            params=dict(data.get("params", {})),
        )


@dataclass(frozen=True)
class ResponseCorpus:
    """At most one ResponseRecord per canonical term."""

    records: dict[str, ResponseRecord]
    source_name: str = ""

    def latest_timestamp(self) -> str:
        return max((r.timestamp for r in self.records.values()), default="")


@dataclass(frozen=True)
class HarvestFailure:
    term: str
    status: int | None
    detail: str


def cache_key(model_id: str, prompt: str) -> str:
    """Content hash naming the cache file; changing the prompt template invalidates it."""
    return hashlib.sha256(f"{model_id}\n{prompt}".encode("utf-8")).hexdigest()


def cache_path(cache_dir: Path, model_id: str, prompt: str) -> Path:
    return Path(cache_dir) / f"{cache_key(model_id, prompt)}.json"


def _read_cached(path: Path, term: str, prompt: str) -> ResponseRecord | None:
    if not path.exists():
        return None
    try:
        record = ResponseRecord.from_dict(json.loads(path.read_text(encoding="utf-8")))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise CacheCorruption(path, str(exc)) from exc
    if record.term != term or record.prompt != prompt:
        raise CacheCorruption(path, f"cache content is for term {record.term!r}, expected {term!r}")
    return record


def _write_cached(path: Path, record: ResponseRecord) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(record.to_dict(), fh, ensure_ascii=False, indent=2, sort_keys=True)
            fh.write("\n")
        os.replace(tmp_name, path)  # atomic rename-into-place
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def _request_once(endpoint: EndpointConfig, term: str, prompt: str) -> str:
    body: dict = {
        "model": endpoint.model,
        "messages": [{"role": "user", "content": prompt}],
    }
    if endpoint.temperature is not None:
        body["temperature"] = endpoint.temperature
    headers = {"Content-Type": "application/json"}
    key = endpoint.resolve_key()
    if key:
        headers["Authorization"] = f"Bearer {key}"
    try:
        resp = requests.post(endpoint.url, json=body, headers=headers, timeout=endpoint.timeout)
    except requests.RequestException as exc:
        raise EndpointError(None, term, str(exc)) from exc
    if resp.status_code != 200:
        raise EndpointError(resp.status_code, term, resp.text[:200])
    try:
        return resp.json()["choices"][0]["message"]["content"]
    except (ValueError, KeyError, IndexError, TypeError) as exc:
        raise EndpointError(resp.status_code, term, f"malformed response body: {exc}") from exc


def _fetch_with_retries(endpoint: EndpointConfig, term: str, prompt: str) -> ResponseRecord:
    last: EndpointError | None = None
    for attempt in range(1, endpoint.max_attempts + 1):
        try:
            content = _request_once(endpoint, term, prompt)
        except EndpointError as exc:
            last = exc
            if attempt < endpoint.max_attempts:
                time.sleep(endpoint.backoff * (2 ** (attempt - 1)))
            continue
        params: dict = {}
        if endpoint.temperature is not None:
            params["temperature"] = endpoint.temperature
        return ResponseRecord(
            term=term,
            prompt=prompt,
            response=content.rstrip(),
            model_id=endpoint.model,
            timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
            attempt=attempt,
            params=params,
        )
    assert last is not None
    raise last


def harvest(
    lex: Lexicon,
    endpoint: EndpointConfig,
    cache_dir: str | Path,
    *,
    source_name: str = "",
) -> tuple[ResponseCorpus, list[HarvestFailure]]:
    """Fetch (or reuse) one response per lexicon term.

    Cached terms are never re-queried. Terms that still fail after the retry
    budget are left out of the corpus and returned in the failure list; the
    caller decides whether that is fatal. The corpus is re-read from the cache
    files after all requests settle, so the in-memory records and the on-disk
    payloads are byte-equal.
    """
    cache_dir = Path(cache_dir)
    jobs: list[tuple[str, str, Path]] = []
    for term in lex.terms:
        prompt = render_prompt(term)
        path = cache_path(cache_dir, endpoint.model, prompt)
        if _read_cached(path, term, prompt) is None:
            jobs.append((term, prompt, path))

    failures: list[HarvestFailure] = []
    if jobs:
        def fetch(job: tuple[str, str, Path]) -> HarvestFailure | None:
            term, prompt, path = job
            try:
                record = _fetch_with_retries(endpoint, term, prompt)
            except EndpointError as exc:
                return HarvestFailure(term=term, status=exc.status, detail=str(exc))
            _write_cached(path, record)
            return None

        workers = max(1, endpoint.parallelism)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for outcome in pool.map(fetch, jobs):
                if outcome is not None:
                    failures.append(outcome)
        failures.sort(key=lambda f: f.term)

    corpus = corpus_from_cache(lex, cache_dir, endpoint.model, source_name=source_name)
    return corpus, failures


def corpus_from_cache(
    lex: Lexicon,
    cache_dir: str | Path,
    model_id: str,
    *,
    source_name: str = "",
) -> ResponseCorpus:
    """Assemble a corpus from whatever cache files exist; missing terms are absent."""
    cache_dir = Path(cache_dir)
    records: dict[str, ResponseRecord] = {}
    for term in lex.terms:
        prompt = render_prompt(term)
        record = _read_cached(cache_path(cache_dir, model_id, prompt), term, prompt)
        if record is not None:
            records[term] = record
    return ResponseCorpus(records=records, source_name=source_name or lex.source_name)
