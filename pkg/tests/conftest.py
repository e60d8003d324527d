from __future__ import annotations

import json
import random
import re
import threading
from collections import Counter
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

import pytest

from relcheck import EndpointConfig, Lexicon, LexiconEntry, build_graph


def ring_plus_random(n, extra_rate, seed):
    """Random digraph where every node keeps positive in- and out-degree.

    Needed by identity-ceiling checks: coverage ratios pin zero-degree nodes
    to zero, so SemSim only reaches 1.0 when no reference degree is zero.
    """
    rng = random.Random(seed)
    nodes = [f"n{i:02d}" for i in range(n)]
    edges = [(nodes[i], nodes[(i + 1) % n]) for i in range(n)]
    edges += [
        (u, v) for u in nodes for v in nodes if u != v and rng.random() < extra_rate
    ]
    return build_graph(nodes, edges)


def make_lexicon(terms, aliases=None, source="fixture") -> Lexicon:
    aliases = aliases or {}
    entries = tuple(
        LexiconEntry(term, tuple(aliases.get(term, ()))) for term in terms
    )
    return Lexicon(entries=entries, source_name=source)


def write_lexicon_file(path: Path, terms, aliases=None, source="fixture") -> Path:
    aliases = aliases or {}
    payload = {
        "source": source,
        "terms": [
            {"canonical": term, "aliases": list(aliases.get(term, ()))} for term in terms
        ],
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return path


def write_edges_file(path: Path, edges) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = ["source,target"] + [f"{u},{v}" for u, v in edges]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


_TERM_RE = re.compile(r'Given the term "(.*)"\. If you were', re.S)


class StubEndpoint:
    """In-process OpenAI-compatible chat-completions endpoint for tests.

    Responses are a pure function of the prompted term, so harvests against
    the stub are reproducible. Individual terms can be made to fail a given
    number of times (or forever) to exercise the retry and failure paths.
    """

    def __init__(self):
        self.hits = 0
        self.term_hits: Counter = Counter()
        self.responses: dict[str, str] = {}
        self.fail_times: dict[str, int] = {}  # term -> how many requests to fail first
        self._lock = threading.Lock()

        stub = self

        class Handler(BaseHTTPRequestHandler):
            def do_POST(self):
                length = int(self.headers.get("Content-Length", 0))
                body = json.loads(self.rfile.read(length))
                prompt = body["messages"][0]["content"]
                match = _TERM_RE.search(prompt)
                term = match.group(1) if match else ""
                with stub._lock:
                    stub.hits += 1
                    stub.term_hits[term] += 1
                    attempts_so_far = stub.term_hits[term]
                if attempts_so_far <= stub.fail_times.get(term, 0):
                    self.send_response(500)
                    self.end_headers()
                    self.wfile.write(b"stub failure")
                    return
                text = stub.responses.get(term, f"Reference entries related to {term}.")
                payload = {
                    "id": "stub",
                    "object": "chat.completion",
                    "model": body.get("model", "stub-model"),
                    "choices": [
                        {
                            "index": 0,
                            "message": {"role": "assistant", "content": text},
                            "finish_reason": "stop",
                        }
                    ],
                }
                data = json.dumps(payload).encode("utf-8")
                self.send_response(200)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(data)))
                self.end_headers()
                self.wfile.write(data)

            def log_message(self, *args):
                pass

        self._server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)
        self._thread.start()

    @property
    def url(self) -> str:
        host, port = self._server.server_address
        return f"http://{host}:{port}/v1/chat/completions"

    def endpoint_config(self, **overrides) -> EndpointConfig:
        defaults = dict(
            url=self.url,
            model="stub-model",
            api_key="stub-key",
            timeout=10.0,
            max_attempts=3,
            backoff=0.01,
            parallelism=4,
        )
        defaults.update(overrides)
        return EndpointConfig(**defaults)

    def close(self):
        self._server.shutdown()
        self._server.server_close()


@pytest.fixture
def stub_endpoint():
    stub = StubEndpoint()
    yield stub
    stub.close()
