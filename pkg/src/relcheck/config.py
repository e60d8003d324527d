"""Run configuration: one JSON file drives every pipeline stage.

Sections: ``endpoint`` (URL, model, key env var), ``extraction`` (mention
matching flags), ``metrics`` (scoring modes and seeds), ``io`` (cache and
output directories), and ``sources`` (name + lexicon + edge-file paths).
Relative paths resolve against the config file's directory. CLI flags
override individual values.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ParseError
from .harvest import EndpointConfig
from .report import EvalConfig


@dataclass(frozen=True)
class ExtractionSettings:
    exact_case: bool = False
    aliases: bool = False
    longest_match: bool = True


@dataclass(frozen=True)
class IoSettings:
    cache_dir: Path = Path("cache")
    out_dir: Path = Path("out")


@dataclass(frozen=True)
class SourceSpec:
    name: str
    lexicon: Path
    edges: Path | None = None


@dataclass(frozen=True)
class Config:
    endpoint: EndpointConfig | None = None
    extraction: ExtractionSettings = field(default_factory=ExtractionSettings)
    metrics: EvalConfig = field(default_factory=EvalConfig)
    io: IoSettings = field(default_factory=IoSettings)
    sources: tuple[SourceSpec, ...] = ()

    def digest(self) -> str:
        """Hash of the output-affecting knobs (extraction + metrics)."""
        payload = json.dumps(
            {
                "extraction": vars(self.extraction).copy(),
                "metrics": {
                    "semsim_mode": self.metrics.semsim_mode,
                    "louvain_seed": self.metrics.louvain_seed,
                    "pagerank_damping": self.metrics.pagerank_damping,
                    "pagerank_tol": self.metrics.pagerank_tol,
                },
            },
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def _section(payload: dict, name: str) -> dict:
    section = payload.get(name, {})
    if not isinstance(section, dict):
        raise ParseError(f"config section {name!r} must be an object")
    return section


def load_config(path: str | Path) -> Config:
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"config JSON invalid at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(payload, dict):
        raise ParseError("config must be a JSON object")
    base = path.parent

    endpoint = None
    ep = _section(payload, "endpoint")
    if ep:
        if "url" not in ep or "model" not in ep:
            raise ParseError('config "endpoint" needs "url" and "model"')
        endpoint = EndpointConfig(
            url=ep["url"],
            model=ep["model"],
            api_key=ep.get("api_key"),
            key_env=ep.get("key_env", "RELCHECK_API_KEY"),
            timeout=float(ep.get("timeout", 60.0)),
            max_attempts=int(ep.get("max_attempts", 3)),
            backoff=float(ep.get("backoff", 1.0)),
            parallelism=int(ep.get("parallelism", 4)),
            temperature=ep.get("temperature", 0.0),
        )

    ex = _section(payload, "extraction")
    extraction = ExtractionSettings(
        exact_case=bool(ex.get("exact_case", False)),
        aliases=bool(ex.get("aliases", False)),
        longest_match=bool(ex.get("longest_match", True)),
    )

    me = _section(payload, "metrics")
    metrics = EvalConfig(
        semsim_mode=me.get("semsim_mode", "matched"),
        louvain_seed=int(me.get("louvain_seed", 0)),
        pagerank_damping=float(me.get("pagerank_damping", 0.85)),
        pagerank_tol=float(me.get("pagerank_tol", 1e-9)),
    )

    io_section = _section(payload, "io")
    io = IoSettings(
        cache_dir=_resolve(base, io_section.get("cache_dir", "cache")),
        out_dir=_resolve(base, io_section.get("out_dir", "out")),
    )

    sources = []
    raw_sources = payload.get("sources", [])
    if not isinstance(raw_sources, list):
        raise ParseError('config "sources" must be an array')
    for i, item in enumerate(raw_sources):
        if not isinstance(item, dict) or "name" not in item or "lexicon" not in item:
            raise ParseError(f'sources[{i}] needs "name" and "lexicon"')
        sources.append(
            SourceSpec(
                name=item["name"],
                lexicon=_resolve(base, item["lexicon"]),
                edges=_resolve(base, item["edges"]) if item.get("edges") else None,
            )
        )

    return Config(
        endpoint=endpoint,
        extraction=extraction,
        metrics=metrics,
        io=io,
        sources=tuple(sources),
    )


def _resolve(base: Path, value: str | Path) -> Path:
    p = Path(value)
    return p if p.is_absolute() else base / p
