"""Command-line entry point.

Subcommands cover validation, the full analysis pipeline, synthetic dataset
generation and standalone exports.  Every analysis artifact is written under
an output directory together with a manifest of the exact configuration, so
a run can be reproduced byte for byte from its manifest.

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from .belief import PERCENTILES, build_consensus, score_all_pairs, scores_csv
from .distance import distance_matrix
from .dot import consensus_to_dot, map_to_dot
from .errors import CogmapError, MapFormatError, MapValidationError, NumericalError
from .hac import build_dendrogram, cut
from .maps import load_dataset, load_map, parse_map, validate
from .pipeline import DEFAULT_CUT_QUANTILE, DEFAULT_MIN_SIZE, analyze_clusters
from .stats import (aggregate_influence, construct_frequency, frequency_csv,
                    relationship_frequency, tables_text)
from .synthetic import PopulationSpec, Prototype, generate

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


@dataclass
class RunConfig:
    dataset: str
    out: str
    seed: int = 0
    y_min: int = 1
    y_max: int = 6
    restarts: int = 20
    max_iter: int = 500
    tol: float = 1e-8
    linkage: str = "complete"
    min_size: int = DEFAULT_MIN_SIZE
    cut_quantile: float = DEFAULT_CUT_QUANTILE
    percentiles: tuple[int, ...] = PERCENTILES

    def check(self) -> None:
        if self.y_min < 1 or self.y_max < self.y_min:
            raise UsageError(f"invalid class range {self.y_min}..{self.y_max}")
        if self.restarts < 1 or self.max_iter < 1 or self.tol <= 0:
            raise UsageError("restarts and max_iter must be >= 1, tol > 0")
        if self.linkage not in ("complete", "single", "average"):
            raise UsageError(f"unknown linkage {self.linkage!r}")
        if self.min_size < 1:
            raise UsageError("min_size must be >= 1")
        if not 0 < self.cut_quantile < 100:
            raise UsageError("cut_quantile must lie strictly between 0 and 100")
        for p in self.percentiles:
            if p not in PERCENTILES:
                raise UsageError(f"percentile must be one of {PERCENTILES}, got {p}")


class UsageError(CogmapError):
    pass


def _load_maps_or_fail(directory: str) -> list:
    path = Path(directory)
    if not path.is_dir():
        raise UsageError(f"no maps found: {directory} is not a directory")
    maps = load_dataset(path)
    if not maps:
        raise UsageError(f"no maps found in {directory}")
    return maps


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_validate(args) -> int:
    paths: list[Path] = []
    for raw in args.paths:
        p = Path(raw)
        if p.is_dir():
            paths.extend(sorted(p.glob("*.json")))
        elif p.exists():
            paths.append(p)
        else:
            print(f"{raw}: no such file or directory", file=sys.stderr)
            return EXIT_USAGE
    if not paths:
        print("no maps found", file=sys.stderr)
        return EXIT_USAGE
    failed = False
    for p in paths:
        try:
            cmap = load_map(p)
        except MapValidationError as exc:
            failed = True
            for err in exc.errors:
                print(f"{p}: error: {err}")
            for warn in exc.warnings:
                print(f"{p}: warning: {warn}")
            continue
        except MapFormatError as exc:
            failed = True
            print(f"{p}: error: {exc}")
            continue
        report = validate(cmap)
        for warn in report.warnings:
            print(f"{p}: warning: {warn}")
        print(f"{p}: OK ({cmap.respondent_id}, {len(cmap.nodes)} nodes, {len(cmap.edges)} edges)")
    return EXIT_VALIDATION if failed else EXIT_OK


def cmd_analyze(args) -> int:
    config = RunConfig(
        dataset=args.dataset,
        out=args.out,
        seed=args.seed,
        y_min=args.y_min,
        y_max=args.y_max,
        restarts=args.restarts,
        max_iter=args.max_iter,
        tol=args.tol,
        linkage=args.linkage,
        min_size=args.min_size,
        cut_quantile=args.cut_quantile,
        percentiles=tuple(args.percentiles),
    )
    if args.config:
        config = _merge_config_file(config, args.config)
    config.check()
    maps = _load_maps_or_fail(config.dataset)
    if len(maps) < 2:
        raise UsageError("analysis needs at least two maps")

    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)

    analysis = analyze_clusters(
        maps,
        seed=config.seed,
        y_range=range(config.y_min, config.y_max + 1),
        restarts=config.restarts,
        max_iter=config.max_iter,
        tol=config.tol,
        linkage=config.linkage,
        min_size=config.min_size,
        cut_quantile=config.cut_quantile,
    )

    analysis.distances.to_csv(out / "distance_matrix.csv")
    analysis.selection.to_csv(out / "aic_table.csv")
    analysis.assignment.to_csv(out / "assignments.csv")
    analysis.dendrogram.to_merge_csv(out / "dendrogram_merges.csv")
    (out / "dendrogram.txt").write_text(analysis.dendrogram.to_text(), encoding="utf-8")
    analysis.hac_clusters.to_csv(out / "hac_clusters.csv")
    analysis.robust.to_csv(out / "robust_clusters.csv")
    (out / "kuhn_verdict.txt").write_text(_verdict_text(analysis), encoding="utf-8")

    frequency_csv(construct_frequency(maps), out / "construct_frequency.csv")
    frequency_csv(relationship_frequency(maps), out / "relationship_frequency.csv")
    frequency_csv(aggregate_influence(maps), out / "aggregate_influence.csv",
                  value_header="influence_percent")
    (out / "influence_tables.txt").write_text(tables_text(maps), encoding="utf-8")

    by_id = {m.respondent_id: m for m in maps}
    populations = [("overall", maps)]
    for idx, cluster in enumerate(analysis.robust.clusters):
        populations.append((f"cluster_{idx}", [by_id[rid] for rid in sorted(cluster)]))
    for name, population in populations:
        scores_csv(score_all_pairs(population), out / f"consensus_scores_{name}.csv")
        for p in config.percentiles:
            graph = build_consensus(population, percentile=p)
            (out / f"consensus_{name}_p{p}.dot").write_text(
                consensus_to_dot(graph, name=f"{name}_p{p}"), encoding="utf-8")

    manifest = {
        "tool": "cogmap",
        "version": __version__,
        "command": "analyze",
        "config": asdict(config),
        "n_maps": len(maps),
        "respondents": sorted(by_id),
        "selected_classes": analysis.selection.best_y,
        "verdict": {
            "stage": analysis.verdict.stage,
            "qualifier": analysis.verdict.qualifier,
            "shares": list(analysis.verdict.shares),
            "clustered_fraction": analysis.verdict.clustered_fraction,
        },
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    print(f"analysis written to {out}")
    print(analysis.verdict.describe())
    return EXIT_OK


def _verdict_text(analysis) -> str:
    verdict = analysis.verdict
    lines = ["Kuhn stage classification", "=========================", ""]
    lines.append(verdict.describe())
    lines.append("")
    lines.append(f"robust clusters: {len(analysis.robust.clusters)}")
    for idx, cluster in enumerate(analysis.robust.clusters):
        lca_class, hac_idx = analysis.robust.provenance[idx]
        members = ", ".join(sorted(cluster))
        lines.append(f"  cluster {idx} (size {len(cluster)}, "
                     f"LCA class {lca_class}, HAC cluster {hac_idx}): {members}")
    lines.append(f"unclustered ({len(analysis.robust.unclustered)}): "
                 + ", ".join(sorted(analysis.robust.unclustered)))
    lines.append("")
    shares = ", ".join(f"{s:.3f}" for s in verdict.shares)
    lines.append(f"shares: [{shares}]  clustered fraction: {verdict.clustered_fraction:.3f}")
    return "\n".join(lines) + "\n"


def _merge_config_file(config: RunConfig, path: str) -> RunConfig:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise UsageError("config file must contain a JSON object")
    known = set(asdict(config))
    for key, value in raw.items():
        if key not in known:
            raise UsageError(f"unknown config key {key!r}")
        if key == "percentiles":
            value = tuple(int(v) for v in value)
        setattr(config, key, value)
    return config


def cmd_simulate(args) -> int:
    try:
        raw = json.loads(Path(args.spec).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read spec file {args.spec}: {exc}") from exc
    spec = _population_spec_from_json(raw)
    population = generate(spec)
    population.write(args.out)
    print(f"wrote {len(population.maps)} maps and labels.csv to {args.out}")
    return EXIT_OK


def _population_spec_from_json(raw) -> PopulationSpec:
    if not isinstance(raw, dict):
        raise UsageError("population spec must be a JSON object")
    schools = []
    for entry in raw.get("schools", []):
        template = parse_map(json.dumps(entry["template"]))
        proto = Prototype(
            template=template,
            inclusion=float(entry.get("inclusion", 1.0)),
            retention=float(entry.get("retention", 1.0)),
            perturbation=int(entry.get("perturbation", 0)),
        )
        schools.append((proto, int(entry["count"])))
    noise_constructs = tuple(raw.get("noise_constructs", (8, 12)))
    return PopulationSpec(
        schools=tuple(schools),
        noise=int(raw.get("noise", 0)),
        seed=int(raw.get("seed", 0)),
        noise_constructs=noise_constructs,  # type: ignore[arg-type]
    )


def cmd_export_dot(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    maps = _load_maps_or_fail(args.dataset)
    for cmap in maps:
        (out / f"{cmap.respondent_id}.dot").write_text(map_to_dot(cmap), encoding="utf-8")
    print(f"wrote {len(maps)} DOT files to {out}")
    return EXIT_OK


def cmd_distance(args) -> int:
    maps = _load_maps_or_fail(args.dataset)
    if len(maps) < 2:
        raise UsageError("distance matrix needs at least two maps")
    dm = distance_matrix(maps)
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    dm.to_csv(args.out)
    print(f"wrote {len(dm.ids)}x{len(dm.ids)} distance matrix to {args.out}")
    return EXIT_OK


def cmd_cluster(args) -> int:
    maps = _load_maps_or_fail(args.dataset)
    if len(maps) < 2:
        raise UsageError("clustering needs at least two maps")
    dm = distance_matrix(maps)
    dendrogram = build_dendrogram(dm, linkage=args.linkage)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    dendrogram.to_merge_csv(out / "dendrogram_merges.csv")
    (out / "dendrogram.txt").write_text(dendrogram.to_text(), encoding="utf-8")
    if args.k is not None:
        clusters = cut(dendrogram, k=args.k)
        clusters.to_csv(out / "clusters.csv")
    print(f"wrote dendrogram artifacts to {out}")
    return EXIT_OK


def cmd_consensus(args) -> int:
    maps = _load_maps_or_fail(args.dataset)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    scores_csv(score_all_pairs(maps), out / "consensus_scores.csv")
    for p in args.percentiles:
        if p not in PERCENTILES:
            raise UsageError(f"percentile must be one of {PERCENTILES}, got {p}")
        graph = build_consensus(maps, percentile=p)
        (out / f"consensus_p{p}.dot").write_text(
            consensus_to_dot(graph, name=f"consensus_p{p}"), encoding="utf-8")
    print(f"wrote consensus artifacts to {out}")
    return EXIT_OK


def cmd_influence(args) -> int:
    maps = _load_maps_or_fail(args.dataset)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    frequency_csv(construct_frequency(maps), out / "construct_frequency.csv")
    frequency_csv(relationship_frequency(maps), out / "relationship_frequency.csv")
    frequency_csv(aggregate_influence(maps), out / "aggregate_influence.csv",
                  value_header="influence_percent")
    (out / "influence_tables.txt").write_text(tables_text(maps), encoding="utf-8")
    print(f"wrote influence tables to {out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cogmap",
        description="Causal cognitive map consensus analysis toolkit",
    )
    parser.add_argument("--version", action="version", version=f"cogmap {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate map files")
    p.add_argument("paths", nargs="+", help="map files or dataset directories")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="run the full consensus analysis")
    p.add_argument("--dataset", required=True, help="directory of map files")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--config", help="optional JSON config file (same fields as flags)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--y-min", dest="y_min", type=int, default=1)
    p.add_argument("--y-max", dest="y_max", type=int, default=6)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--max-iter", dest="max_iter", type=int, default=500)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--linkage", choices=("complete", "single", "average"), default="complete")
    p.add_argument("--min-size", dest="min_size", type=int, default=DEFAULT_MIN_SIZE)
    p.add_argument("--cut-quantile", dest="cut_quantile", type=float,
                   default=DEFAULT_CUT_QUANTILE,
                   help="pairwise-distance percentile used as the dendrogram cut height")
    p.add_argument("--percentiles", type=int, nargs="+", default=list(PERCENTILES))
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("simulate", help="generate a synthetic dataset")
    p.add_argument("--spec", required=True, help="population spec JSON file")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("export-dot", help="export maps as Graphviz DOT files")
    p.add_argument("--dataset", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("distance", help="export the pairwise distance matrix")
    p.add_argument("--dataset", required=True)
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("cluster", help="hierarchical clustering artifacts")
    p.add_argument("--dataset", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--linkage", choices=("complete", "single", "average"), default="complete")
    p.add_argument("-k", type=int, default=None, help="also cut into k clusters")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("consensus", help="consensus graphs for a dataset")
    p.add_argument("--dataset", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--percentiles", type=int, nargs="+", default=list(PERCENTILES))
    p.set_defaults(func=cmd_consensus)

    p = sub.add_parser("influence", help="popularity and influence tables")
    p.add_argument("--dataset", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_influence)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MapFormatError, MapValidationError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except CogmapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
