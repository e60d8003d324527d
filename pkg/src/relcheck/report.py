"""Per-source evaluation bundle and the table/JSON/SVG emitters.

All emitters are deterministic for fixed inputs: rows sort by source name,
numbers print at 4 decimals in the CSVs (full precision lives in
report.json), and SVG geometry uses fixed formatting. NaN is rendered as the
literal token ``NaN`` so undefined correlations survive a round trip.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

from .errors import InvalidParam, NodeUniverseMismatch
from .graph import DirectedGraph
from .metrics.edge_level import Layer3Report, edge_prf
from .metrics.graph_level import Layer1Report, layer1_report
from .metrics.node_level import Layer2Report, layer2_report
from .svgchart import grouped_bar_chart

LAYER1_CSV_COLUMNS = ("sss", "struct_sim", "sem_sim", "nmi")
LAYER2_CSV_COLUMNS = ("in_degree", "out_degree", "betweenness", "pagerank")
LAYER3_CSV_COLUMNS = ("precision", "recall", "f1")

# figure series: combined index, adjacency alignment, edge overlap, community agreement
LAYER1_PLOT_SERIES = ("sss", "struct_sim", "jaccard", "nmi")


@dataclass(frozen=True)
class EvalConfig:
    semsim_mode: str = "matched"
    louvain_seed: int = 0
    pagerank_damping: float = 0.85
    pagerank_tol: float = 1e-9

    def digest(self) -> str:
        payload = json.dumps(asdict(self), sort_keys=True)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class Provenance:
    model_id: str = ""
    prompt_hash: str = ""
    config_hash: str = ""
    timestamp: str = ""


@dataclass(frozen=True)
class GraphStats:
    nodes: int
    ref_edges: int
    llm_edges: int
    shared_edges: int


@dataclass(frozen=True)
class FullReport:
    source_name: str
    layer1: Layer1Report
    layer2: Layer2Report
    layer3: Layer3Report
    graph_stats: GraphStats
    provenance: Provenance

    def to_dict(self) -> dict:
        return {
            "source_name": self.source_name,
            "layer1": asdict(self.layer1),
            "layer2": self.layer2.as_dict(),
            "layer3": asdict(self.layer3),
            "graph_stats": asdict(self.graph_stats),
            "provenance": asdict(self.provenance),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FullReport":
        l2 = data["layer2"]
        return cls(
            source_name=data["source_name"],
            layer1=Layer1Report(**data["layer1"]),
            layer2=Layer2Report(
                rho_in_degree=l2["in_degree"],
                rho_out_degree=l2["out_degree"],
                rho_betweenness=l2["betweenness"],
                rho_pagerank=l2["pagerank"],
            ),
            layer3=Layer3Report(**data["layer3"]),
            graph_stats=GraphStats(**data["graph_stats"]),
            provenance=Provenance(**data["provenance"]),
        )


def evaluate(
    ref: DirectedGraph,
    llm: DirectedGraph,
    config: EvalConfig | None = None,
    *,
    source_name: str = "",
    provenance: Provenance | None = None,
) -> FullReport:
    """All three metric layers for one (reference, induced) pair.

    Deterministic given the graphs and config; provenance defaults to the
    config digest with everything else blank.
    """
    cfg = config or EvalConfig()
    if ref.nodes != llm.nodes:
        raise NodeUniverseMismatch("evaluate() requires one shared node universe")
    layer1 = layer1_report(
        ref, llm, semsim_mode=cfg.semsim_mode, louvain_seed=cfg.louvain_seed
    )
    layer2 = layer2_report(
        ref, llm, pagerank_damping=cfg.pagerank_damping, pagerank_tol=cfg.pagerank_tol
    )
    layer3 = edge_prf(ref, llm)
    stats = GraphStats(
        nodes=len(ref.nodes),
        ref_edges=len(ref.edges),
        llm_edges=len(llm.edges),
        shared_edges=len(ref.edges & llm.edges),
    )
    return FullReport(
        source_name=source_name,
        layer1=layer1,
        layer2=layer2,
        layer3=layer3,
        graph_stats=stats,
        provenance=provenance or Provenance(config_hash=cfg.digest()),
    )


def format_score(value: float) -> str:
    """4-decimal table rendering; NaN stays the literal token NaN."""
    if isinstance(value, float) and math.isnan(value):
        return "NaN"
    out = f"{value:.4f}"
    return "0.0000" if out == "-0.0000" else out


def _sorted(reports: Sequence[FullReport]) -> list[FullReport]:
    if not reports:
        raise InvalidParam("no reports to emit")
    return sorted(reports, key=lambda r: r.source_name)


def emit_csv(reports: Sequence[FullReport], out_dir: str | Path) -> list[Path]:
    """Write layer1.csv, layer2.csv, layer3.csv; byte-identical for equal inputs."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    ordered = _sorted(reports)
    tables = {
        "layer1.csv": (
            LAYER1_CSV_COLUMNS,
            lambda r: [getattr(r.layer1, c) for c in LAYER1_CSV_COLUMNS],
        ),
        "layer2.csv": (
            LAYER2_CSV_COLUMNS,
            lambda r: [r.layer2.as_dict()[c] for c in LAYER2_CSV_COLUMNS],
        ),
        "layer3.csv": (
            LAYER3_CSV_COLUMNS,
            lambda r: [getattr(r.layer3, c) for c in LAYER3_CSV_COLUMNS],
        ),
    }
    paths = []
    for name, (columns, row_of) in tables.items():
        lines = ["source," + ",".join(columns)]
        for report in ordered:
            values = ",".join(format_score(v) for v in row_of(report))
            lines.append(f"{report.source_name},{values}")
        path = out_dir / name
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        paths.append(path)
    return paths


def emit_json(reports: Sequence[FullReport], out_dir: str | Path) -> Path:
    """Full-precision sidecar embedding every FullReport, one object per source."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    payload = [r.to_dict() for r in _sorted(reports)]
    path = out_dir / "report.json"
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def load_report_json(path: str | Path) -> list[FullReport]:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    return [FullReport.from_dict(item) for item in raw]


def emit_plots(reports: Sequence[FullReport], out_dir: str | Path) -> list[Path]:
    """One grouped bar chart per layer: layer1.svg, layer2.svg, layer3.svg."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    ordered = _sorted(reports)
    charts = {
        "layer1.svg": (
            LAYER1_PLOT_SERIES,
            lambda r: {c: getattr(r.layer1, c) for c in LAYER1_PLOT_SERIES},
            "Graph-level similarity",
            (0.0, 1.0),
        ),
        "layer2.svg": (
            LAYER2_CSV_COLUMNS,
            lambda r: r.layer2.as_dict(),
            "Centrality rank correlation",
            (-1.0, 1.0),
        ),
        "layer3.svg": (
            LAYER3_CSV_COLUMNS,
            lambda r: {c: getattr(r.layer3, c) for c in LAYER3_CSV_COLUMNS},
            "Link recovery",
            (0.0, 1.0),
        ),
    }
    paths = []
    for name, (series, values_of, title, (lo, hi)) in charts.items():
        groups = [(r.source_name, values_of(r)) for r in ordered]
        svg = grouped_bar_chart(groups, list(series), title=title, y_min=lo, y_max=hi)
        path = out_dir / name
        path.write_text(svg, encoding="utf-8")
        paths.append(path)
    return paths


SWEEP_CSV_COLUMNS = (
    "p_delete",
    "p_spurious",
    "hub_bias",
    "seed",
    "sss",
    "struct_sim",
    "sem_sim",
    "nmi",
    "jaccard",
    "spectral_sim",
    "in_degree",
    "out_degree",
    "betweenness",
    "pagerank",
    "precision",
    "recall",
    "f1",
)


def emit_sweep_csv(rows, out_dir: str | Path) -> Path:
    """sweep.csv: degradation parameters plus every metric column, grid order."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    lines = [",".join(SWEEP_CSV_COLUMNS)]
    for spec, report in rows:
        values = [f"{spec.p_delete:g}", f"{spec.p_spurious:g}", f"{spec.hub_bias:g}", str(spec.seed)]
        values += [format_score(getattr(report.layer1, c)) for c in ("sss", "struct_sim", "sem_sim", "nmi", "jaccard", "spectral_sim")]
        values += [format_score(report.layer2.as_dict()[c]) for c in LAYER2_CSV_COLUMNS]
        values += [format_score(getattr(report.layer3, c)) for c in LAYER3_CSV_COLUMNS]
        lines.append(",".join(values))
    path = out_dir / "sweep.csv"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
