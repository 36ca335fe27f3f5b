"""Combines the two clustering methods into robust clusters and classifies
the population into a Kuhnian consensus stage.

A robust cluster is a group supported by both algorithms: the intersection
of a latent-class with an (extended) hierarchical cluster, kept when it
reaches the minimum size.  The stage rules operationalize the hypotheses:
H0 no common ground, H1 competing schools, H2 majority agreement, with
transitional qualifiers for the interpretive middle grounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .distance import DistanceMatrix, distance_matrix
from .hac import ClusterSet, Dendrogram, build_dendrogram, cut, extend_clusters
from .lca import Assignment, FeatureMatrix, SelectionResult, assign, features, select_classes
from .maps import CausalMap

DEFAULT_MIN_SIZE = 4

#: Unclustered share at which H1 earns its transitional qualifier.
UNCLUSTERED_QUALIFIER_THRESHOLD = 1.0 / 3.0


@dataclass(frozen=True)
class RobustClusters:
    clusters: tuple[frozenset[str], ...]
    unclustered: frozenset[str]
    provenance: tuple[tuple[int, int], ...]  # (lca class, hac cluster index) per cluster

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.clusters)

    def to_csv(self, path: str | Path) -> None:
        lines = ["respondent_id,robust_cluster"]
        rows = []
        for k, cluster in enumerate(self.clusters):
            rows += [(rid, str(k)) for rid in cluster]
        rows += [(rid, "-") for rid in self.unclustered]
        for rid, label in sorted(rows):
            lines.append(f"{rid},{label}")
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


@dataclass(frozen=True)
class KuhnVerdict:
    stage: str  # "H0" | "H1" | "H2"
    qualifier: str | None
    shares: tuple[float, ...]  # cluster-size fractions, descending
    clustered_fraction: float

    def describe(self) -> str:
        label = {
            "H0": "no common ground (stage 1)",
            "H1": "competing schools (stage 2)",
            "H2": "majority agreement (stage 3)",
        }[self.stage]
        out = f"{self.stage}: {label}"
        if self.qualifier:
            out += f" — {self.qualifier}"
        return out


def combine(lca: Assignment, hac: ClusterSet, min_size: int = DEFAULT_MIN_SIZE) -> RobustClusters:
    """Intersect latent classes with hierarchical clusters; intersections of
    size >= min_size are robust, everything else is unclustered."""
    universe = set(lca.ids)
    if universe != set(hac.all_ids()):
        raise ValueError("latent-class and hierarchical results cover different respondents")
    clusters: list[frozenset[str]] = []
    provenance: list[tuple[int, int]] = []
    n_classes = lca.posteriors.shape[1]
    for y in range(n_classes):
        class_members = lca.members(y)
        for h, hac_cluster in enumerate(hac.clusters):
            robust = class_members & hac_cluster
            if len(robust) >= min_size:
                clusters.append(frozenset(robust))
                provenance.append((y, h))
    covered = set()
    for c in clusters:
        covered |= c
    return RobustClusters(
        clusters=tuple(clusters),
        unclustered=frozenset(universe - covered),
        provenance=tuple(provenance),
    )


def classify_stage(robust: RobustClusters, n: int) -> KuhnVerdict:
    """Stage decision from cluster-size shares.

    With shares sorted descending and T their sum: a dominant cluster at
    95%+ is normal science (H2); a majority cluster below that is H2
    transitioning from stage 2 to 3; two or more clusters jointly holding a
    majority are competing schools (H1), qualified as between stages 1 and 2
    when at least a third of respondents stay unclustered; anything else is
    no common ground (H0).
    """
    if n < 1:
        raise ValueError("population size must be positive")
    shares = tuple(sorted((len(c) / n for c in robust.clusters), reverse=True))
    total = sum(shares)
    top = shares[0] if shares else 0.0
    unclustered_fraction = len(robust.unclustered) / n

    if top >= 0.95:
        stage, qualifier = "H2", "normal science"
    elif top >= 0.50:
        stage, qualifier = "H2", "transitioning stage 2→3"
    elif total >= 0.50 and len(shares) >= 2:
        stage = "H1"
        qualifier = ("between stages 1 and 2"
                     if unclustered_fraction >= UNCLUSTERED_QUALIFIER_THRESHOLD else None)
    else:
        stage, qualifier = "H0", None
    return KuhnVerdict(
        stage=stage,
        qualifier=qualifier,
        shares=shares,
        clustered_fraction=total,
    )


@dataclass(frozen=True)
class ClusterAnalysis:
    distances: DistanceMatrix
    features: FeatureMatrix
    selection: SelectionResult
    assignment: Assignment
    dendrogram: Dendrogram
    hac_clusters: ClusterSet  # after small-cluster demotion and extension
    robust: RobustClusters
    verdict: KuhnVerdict


DEFAULT_CUT_QUANTILE = 20.0


def cut_height_for(dist: DistanceMatrix, quantile: float = DEFAULT_CUT_QUANTILE) -> float:
    """Dendrogram cut height: a low quantile of the pairwise distances, so
    only genuinely similar maps agglomerate while idiosyncratic ones stay in
    sub-threshold fragments."""
    values = dist.values
    off_diagonal = values[np.triu_indices(len(dist.ids), k=1)]
    return float(np.percentile(off_diagonal, quantile))


def analyze_clusters(dataset: list[CausalMap], *, seed: int = 0,
                     y_range=range(1, 7), restarts: int = 20, max_iter: int = 500,
                     tol: float = 1e-8, linkage: str = "complete",
                     min_size: int = DEFAULT_MIN_SIZE,
                     cut_quantile: float = DEFAULT_CUT_QUANTILE) -> ClusterAnalysis:
    """End-to-end cluster analysis over a dataset of maps.

    The hierarchy is cut at a low distance-quantile height, which typically
    yields more clusters than the AIC-selected class count; fragments below
    min_size are demoted to unassigned, the extension step re-absorbs
    compatible points, and only then are the two methods intersected.
    """
    dist = distance_matrix(dataset)
    fm = features(dataset)
    selection = select_classes(fm, y_range, seed=seed, restarts=restarts,
                               max_iter=max_iter, tol=tol)
    assignment = assign(selection.model, fm)

    dendrogram = build_dendrogram(dist, linkage=linkage)
    cut_set = cut(dendrogram, height=cut_height_for(dist, cut_quantile))
    kept = tuple(c for c in cut_set.clusters if len(c) >= min_size)
    demoted: set[str] = set()
    for c in cut_set.clusters:
        if len(c) < min_size:
            demoted |= c
    extended = extend_clusters(ClusterSet(clusters=kept, unassigned=frozenset(demoted)), dist)

    robust = combine(assignment, extended, min_size=min_size)
    verdict = classify_stage(robust, n=len(dataset))
    return ClusterAnalysis(
        distances=dist,
        features=fm,
        selection=selection,
        assignment=assignment,
        dendrogram=dendrogram,
        hac_clusters=extended,
        robust=robust,
        verdict=verdict,
    )
