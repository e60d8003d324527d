"""Command-line pipeline: ingest, harvest, extract, evaluate, plot, simulate, all.

Stages communicate through files (response cache, extracted edge CSVs), so
any stage can be re-run in isolation; only harvesting talks to the network.
Exit codes: 0 success, 1 input error, 2 endpoint failure budget exceeded,
3 internal error.
"""

from __future__ import annotations

import functools
import itertools
import json
import sys
from pathlib import Path

import click

from .config import Config, SourceSpec, load_config
from .errors import (
    EndpointBudgetExceeded,
    InputError,
    RelcheckError,
)
from .harvest import corpus_from_cache, harvest, prompt_template_hash
from .lexicon import load_lexicon, load_reference_edges, write_edges
from .mentions import induce_graph, scan_corpus
from .report import (
    Provenance,
    emit_csv,
    emit_json,
    emit_plots,
    emit_sweep_csv,
    evaluate,
    load_report_json,
)
from .synth import DegradationSpec, generate_reference, sweep

EXIT_INPUT_ERROR = 1
EXIT_ENDPOINT_FAILURES = 2
EXIT_INTERNAL_ERROR = 3


def _handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except EndpointBudgetExceeded as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_ENDPOINT_FAILURES)
        except (InputError, FileNotFoundError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INPUT_ERROR)
        except RelcheckError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INTERNAL_ERROR)
        except OSError as exc:
            click.echo(f"io error: {exc}", err=True)
            sys.exit(EXIT_INTERNAL_ERROR)

    return wrapper


def _load(config_path: str | None) -> Config:
    return load_config(config_path) if config_path else Config()


def _sources(cfg: Config, lexicon: str | None, edges: str | None, name: str | None) -> list[SourceSpec]:
    """Configured sources, or the single source assembled from CLI flags."""
    if lexicon:
        return [
            SourceSpec(
                name=name or Path(lexicon).stem,
                lexicon=Path(lexicon),
                edges=Path(edges) if edges else None,
            )
        ]
    if not cfg.sources:
        raise InputError("no sources: pass --lexicon or configure a 'sources' list")
    return list(cfg.sources)


config_option = click.option("-c", "--config", "config_path", type=click.Path(), help="Config JSON file.")
lexicon_option = click.option("--lexicon", type=click.Path(), help="Lexicon JSON (overrides config sources).")
edges_option = click.option("--edges", type=click.Path(), help="Reference edge CSV.")
name_option = click.option("--name", help="Source name used in reports.")
out_dir_option = click.option("--out-dir", type=click.Path(), help="Output directory (overrides config io.out_dir).")
cache_dir_option = click.option("--cache-dir", type=click.Path(), help="Response cache directory (overrides config io.cache_dir).")


@click.group()
def cli():
    """Validate a language model's relational knowledge against a reference graph."""


@cli.command()
@config_option
@lexicon_option
@edges_option
@name_option
@_handle_errors
def ingest(config_path, lexicon, edges, name):
    """Validate lexicon and reference edge files."""
    cfg = _load(config_path)
    for source in _sources(cfg, lexicon, edges, name):
        lex = load_lexicon(source.lexicon)
        line = f"{source.name}: {len(lex.terms)} terms"
        if source.edges:
            ref = load_reference_edges(source.edges, lex)
            line += f", {len(ref.edges)} reference edges"
        click.echo(line)


@cli.command(name="harvest")
@config_option
@lexicon_option
@name_option
@cache_dir_option
@out_dir_option
@_handle_errors
def harvest_cmd(config_path, lexicon, name, cache_dir, out_dir):
    """Query the endpoint for every term, writing the response cache."""
    cfg = _load(config_path)
    if cfg.endpoint is None:
        raise InputError("no endpoint configured; set the 'endpoint' config section")
    cache_root = Path(cache_dir) if cache_dir else cfg.io.cache_dir
    out_root = Path(out_dir) if out_dir else cfg.io.out_dir
    all_failures = []
    for source in _sources(cfg, lexicon, None, name):
        lex = load_lexicon(source.lexicon)
        corpus, failures = harvest(
            lex, cfg.endpoint, cache_root / source.name, source_name=source.name
        )
        click.echo(f"{source.name}: {len(corpus.records)} responses, {len(failures)} failures")
        all_failures += [
            {"source": source.name, "term": f.term, "status": f.status, "detail": f.detail}
            for f in failures
        ]
    if all_failures:
        out_root.mkdir(parents=True, exist_ok=True)
        report_path = out_root / "harvest-failures.json"
        report_path.write_text(
            json.dumps(all_failures, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        click.echo(f"failure report: {report_path}", err=True)
        raise EndpointBudgetExceeded([f["term"] for f in all_failures])


@cli.command()
@config_option
@lexicon_option
@name_option
@cache_dir_option
@out_dir_option
@click.option("--mentions-out", type=click.Path(), help="Also write a mention-match audit JSONL.")
@_handle_errors
def extract(config_path, lexicon, name, cache_dir, out_dir, mentions_out):
    """Induce the model graph from cached responses; write extracted edge CSVs."""
    cfg = _load(config_path)
    if cfg.endpoint is None:
        raise InputError("no endpoint configured; the cache is keyed by model id")
    cache_root = Path(cache_dir) if cache_dir else cfg.io.cache_dir
    out_root = Path(out_dir) if out_dir else cfg.io.out_dir
    flags = dict(
        exact_case=cfg.extraction.exact_case,
        use_aliases=cfg.extraction.aliases,
        longest_match=cfg.extraction.longest_match,
    )
    for source in _sources(cfg, lexicon, None, name):
        lex = load_lexicon(source.lexicon)
        corpus = corpus_from_cache(
            lex, cache_root / source.name, cfg.endpoint.model, source_name=source.name
        )
        graph = induce_graph(corpus, lex, **flags)
        path = write_edges(graph, out_root / "extracted-edges" / f"{source.name}.csv")
        click.echo(f"{source.name}: {len(graph.edges)} induced edges -> {path}")
        if mentions_out:
            matches = scan_corpus(corpus, lex, **flags)
            lines = [
                json.dumps(
                    {"term": m.source_term, "target": m.target_term, "start": m.start, "end": m.end},
                    sort_keys=True,
                )
                for m in matches
            ]
            Path(mentions_out).write_text("\n".join(lines) + "\n", encoding="utf-8")


@cli.command(name="evaluate")
@config_option
@lexicon_option
@edges_option
@name_option
@click.option("--llm-edges", type=click.Path(), help="Induced edge CSV (default: extracted-edges/<source>.csv).")
@cache_dir_option
@out_dir_option
@_handle_errors
def evaluate_cmd(config_path, lexicon, edges, name, llm_edges, cache_dir, out_dir):
    """Score every source at all three layers; write CSV tables and report.json."""
    cfg = _load(config_path)
    out_root = Path(out_dir) if out_dir else cfg.io.out_dir
    cache_root = Path(cache_dir) if cache_dir else cfg.io.cache_dir
    reports = []
    for source in _sources(cfg, lexicon, edges, name):
        if source.edges is None:
            raise InputError(f"source {source.name!r} has no reference edge file")
        lex = load_lexicon(source.lexicon)
        ref = load_reference_edges(source.edges, lex)
        induced_path = Path(llm_edges) if llm_edges else out_root / "extracted-edges" / f"{source.name}.csv"
        llm = load_reference_edges(induced_path, lex)
        reports.append(
            evaluate(
                ref,
                llm,
                cfg.metrics,
                source_name=source.name,
                provenance=_provenance(cfg, lex, cache_root / source.name),
            )
        )
    emit_csv(reports, out_root)
    path = emit_json(reports, out_root)
    click.echo(f"wrote {path.parent / 'layer{1,2,3}.csv'} and {path}")


def _provenance(cfg: Config, lex, source_cache: Path) -> Provenance:
    """Provenance from the response cache when present; no wall clock anywhere."""
    model_id = cfg.endpoint.model if cfg.endpoint else ""
    timestamp = ""
    if cfg.endpoint and source_cache.exists():
        corpus = corpus_from_cache(lex, source_cache, cfg.endpoint.model)
        timestamp = corpus.latest_timestamp()
    return Provenance(
        model_id=model_id,
        prompt_hash=prompt_template_hash(),
        config_hash=cfg.digest(),
        timestamp=timestamp,
    )


@cli.command()
@config_option
@click.option("--report", "report_path", type=click.Path(), help="report.json produced by evaluate.")
@out_dir_option
@_handle_errors
def plot(config_path, report_path, out_dir):
    """Render the three layer reports as grouped bar chart SVGs."""
    cfg = _load(config_path)
    out_root = Path(out_dir) if out_dir else cfg.io.out_dir
    path = Path(report_path) if report_path else out_root / "report.json"
    reports = load_report_json(path)
    for svg in emit_plots(reports, out_root):
        click.echo(f"wrote {svg}")


@cli.command()
@config_option
@click.option("--nodes", default=100, show_default=True, help="Synthetic reference size.")
@click.option("--avg-out-degree", default=4.0, show_default=True)
@click.option("--graph-seed", default=0, show_default=True)
@click.option("--p-delete", "p_deletes", multiple=True, type=float, default=(0.0, 0.25, 0.5, 0.75, 1.0), show_default=True)
@click.option("--p-spurious", "p_spuriouses", multiple=True, type=float, default=(0.0,), show_default=True)
@click.option("--hub-bias", "hub_biases", multiple=True, type=float, default=(0.0, 1.0), show_default=True)
@click.option("--seeds", default=3, show_default=True, help="Degradation seeds per grid point.")
@out_dir_option
@_handle_errors
def simulate(config_path, nodes, avg_out_degree, graph_seed, p_deletes, p_spuriouses, hub_biases, seeds, out_dir):
    """Degradation sweep over a synthetic reference graph; writes sweep.csv."""
    cfg = _load(config_path)
    out_root = Path(out_dir) if out_dir else cfg.io.out_dir
    ref = generate_reference(nodes, avg_out_degree, graph_seed)
    grid = [
        DegradationSpec(p_delete=pd, p_spurious=ps, hub_bias=hb, seed=s)
        for pd, ps, hb, s in itertools.product(p_deletes, p_spuriouses, hub_biases, range(seeds))
    ]
    rows = sweep(ref, grid, cfg.metrics)
    path = emit_sweep_csv(rows, out_root)
    click.echo(f"wrote {path} ({len(rows)} rows)")


@cli.command(name="all")
@config_option
@cache_dir_option
@out_dir_option
@click.pass_context
def run_all(ctx, config_path, cache_dir, out_dir):
    """Full pipeline: ingest, harvest, extract, evaluate, plot."""
    common = {"config_path": config_path}
    ctx.invoke(ingest, **common, lexicon=None, edges=None, name=None)
    ctx.invoke(harvest_cmd, **common, lexicon=None, name=None, cache_dir=cache_dir, out_dir=out_dir)
    ctx.invoke(extract, **common, lexicon=None, name=None, cache_dir=cache_dir, out_dir=out_dir, mentions_out=None)
    ctx.invoke(evaluate_cmd, **common, lexicon=None, edges=None, name=None, llm_edges=None, cache_dir=cache_dir, out_dir=out_dir)
    ctx.invoke(plot, **common, report_path=None, out_dir=out_dir)


def main(argv=None):
    cli(args=argv)


if __name__ == "__main__":
    main()
