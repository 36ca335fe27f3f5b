"""Agglomerative hierarchical clustering over a distance matrix.

Bottom-up merging of the closest pair under the chosen linkage until one
cluster remains.  Implemented directly (rather than delegated) because the
merge contract pins down tie-breaking: among equally close pairs the one
with the lexicographically smallest (index, index) wins, which keeps runs
reproducible bit for bit.  Cluster indices follow the usual convention:
leaves are 0..n-1 and the t-th merge creates index n+t.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .distance import DistanceMatrix

LINKAGES = ("complete", "single", "average")


@dataclass(frozen=True)
class Merge:
    left: int
    right: int
    height: float


@dataclass(frozen=True)
class Dendrogram:
    ids: tuple[str, ...]
    merges: tuple[Merge, ...]
    linkage: str

    @property
    def n_leaves(self) -> int:
        return len(self.ids)

    def to_merge_csv(self, path: str | Path) -> None:
        lines = ["left,right,height"]
        for m in self.merges:
            lines.append(f"{m.left},{m.right},{format(m.height, '.17g')}")
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    def to_text(self) -> str:
        """Nested-text rendering, children indented under merge heights."""
        members: dict[int, list[str]] = {}
        lines_for: dict[int, list[str]] = {}
        for i, rid in enumerate(self.ids):
            members[i] = [rid]
            lines_for[i] = [rid]
        for t, m in enumerate(self.merges):
            idx = self.n_leaves + t
            members[idx] = members[m.left] + members[m.right]
            body = ["  " + line for child in (m.left, m.right) for line in lines_for[child]]
            lines_for[idx] = [f"[{m.height:.6f}]"] + body
        root = self.n_leaves + len(self.merges) - 1 if self.merges else 0
        return "\n".join(lines_for[root]) + "\n"


@dataclass(frozen=True)
class ClusterSet:
    clusters: tuple[frozenset[str], ...]
    unassigned: frozenset[str] = frozenset()

    def all_ids(self) -> frozenset[str]:
        out = set(self.unassigned)
        for c in self.clusters:
            out |= c
        return frozenset(out)

    def to_csv(self, path: str | Path) -> None:
        lines = ["respondent_id,cluster"]
        rows = []
        for k, cluster in enumerate(self.clusters):
            rows += [(rid, str(k)) for rid in cluster]
        rows += [(rid, "-") for rid in self.unassigned]
        for rid, label in sorted(rows):
            lines.append(f"{rid},{label}")
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _check_matrix(dist: DistanceMatrix) -> np.ndarray:
    values = np.asarray(dist.values, dtype=np.float64)
    if values.ndim != 2 or values.shape[0] != values.shape[1]:
        raise ValueError("distance matrix must be square")
    if not np.array_equal(values, values.T):
        raise ValueError("distance matrix must be symmetric")
    if np.any(values < 0) or np.any(values > 1) or np.any(np.diag(values) != 0):
        raise ValueError("distances must lie in [0, 1] with a zero diagonal")
    return values


def _linkage_distance(linkage: str, d_left: float, d_right: float,
                      n_left: int, n_right: int) -> float:
    if linkage == "complete":
        return max(d_left, d_right)
    if linkage == "single":
        return min(d_left, d_right)
    return (n_left * d_left + n_right * d_right) / (n_left + n_right)


def build_dendrogram(dist: DistanceMatrix, linkage: str = "complete") -> Dendrogram:
    if linkage not in LINKAGES:
        raise ValueError(f"linkage must be one of {LINKAGES}")
    values = _check_matrix(dist)
    n = len(dist.ids)
    if n < 2:
        raise ValueError("clustering needs at least two points")

    active: list[int] = list(range(n))
    sizes: dict[int, int] = {i: 1 for i in range(n)}
    pair_dist: dict[tuple[int, int], float] = {}
    for i in range(n):
        for j in range(i + 1, n):
            pair_dist[(i, j)] = float(values[i, j])

    merges: list[Merge] = []
    next_index = n
    while len(active) > 1:
        best_pair = None
        best = np.inf
        for a_pos in range(len(active)):
            for b_pos in range(a_pos + 1, len(active)):
                pair = (active[a_pos], active[b_pos])
                d = pair_dist[pair]
                if d < best:  # strict: ties keep the earliest (lowest-index) pair
                    best = d
                    best_pair = pair
        left, right = best_pair
        merges.append(Merge(left=left, right=right, height=best))
        active = [c for c in active if c not in (left, right)]
        for c in active:
            d_left = pair_dist[_ordered(c, left)]
            d_right = pair_dist[_ordered(c, right)]
            pair_dist[(c, next_index)] = _linkage_distance(
                linkage, d_left, d_right, sizes[left], sizes[right])
        sizes[next_index] = sizes[left] + sizes[right]
        active.append(next_index)
        next_index += 1
    return Dendrogram(ids=dist.ids, merges=tuple(merges), linkage=linkage)


def _ordered(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def cluster_members(dendrogram: Dendrogram) -> dict[int, frozenset[str]]:
    """Leaf-id membership of every cluster index in the merge tree."""
    members: dict[int, frozenset[str]] = {
        i: frozenset([rid]) for i, rid in enumerate(dendrogram.ids)}
    for t, m in enumerate(dendrogram.merges):
        members[dendrogram.n_leaves + t] = members[m.left] | members[m.right]
    return members


def cut(dendrogram: Dendrogram, k: int | None = None, height: float | None = None) -> ClusterSet:
    """Cut the merge tree into k clusters or at a height; all points are
    assigned (no remainder)."""
    if (k is None) == (height is None):
        raise ValueError("specify exactly one of k or height")
    n = dendrogram.n_leaves
    if k is not None and not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}")
    if height is not None and height < 0:
        raise ValueError("height must be non-negative")

    if k is not None:
        n_applied = n - k
    else:
        n_applied = 0
        for m in dendrogram.merges:
            if m.height > height:
                break
            n_applied += 1

    members = {i: {rid} for i, rid in enumerate(dendrogram.ids)}
    alive = set(range(n))
    for t, m in enumerate(dendrogram.merges[:n_applied]):
        idx = n + t
        members[idx] = members.pop(m.left) | members.pop(m.right)
        alive.discard(m.left)
        alive.discard(m.right)
        alive.add(idx)
    clusters = sorted((frozenset(members[i]) for i in alive), key=min)
    return ClusterSet(clusters=tuple(clusters), unassigned=frozenset())


def max_intra_distance(cluster, dist: DistanceMatrix) -> float:
    """Largest pairwise distance inside a cluster (0 for singletons)."""
    ids = sorted(cluster)
    best = 0.0
    for i in range(len(ids)):
        a = dist.index(ids[i])
        for j in range(i + 1, len(ids)):
            d = float(dist.values[a, dist.index(ids[j])])
            if d > best:
                best = d
    return best


def extend_clusters(clusters: ClusterSet, dist: DistanceMatrix) -> ClusterSet:
    """Greedily absorb unassigned points that do not raise any cluster's
    maximum intra-cluster distance; repeats passes until a fixed point.

    Order is deterministic: points ascending by id, clusters ascending by
    their smallest member id.
    """
    known = set(dist.ids)
    missing = sorted(clusters.all_ids() - known)
    if missing:
        raise ValueError(f"ids absent from distance matrix: {', '.join(missing)}")

    groups = [set(c) for c in clusters.clusters]
    limits = [max_intra_distance(c, dist) for c in clusters.clusters]
    unassigned = set(clusters.unassigned)

    changed = True
    while changed:
        changed = False
        order = sorted(range(len(groups)), key=lambda g: min(groups[g]) if groups[g] else "")
        for rid in sorted(unassigned):
            row = dist.index(rid)
            for g in order:
                if not groups[g]:
                    continue
                reach = max(float(dist.values[row, dist.index(m)]) for m in groups[g])
                if reach <= limits[g]:
                    groups[g].add(rid)
                    unassigned.discard(rid)
                    changed = True
                    break
    out = tuple(frozenset(g) for g in groups)
    return ClusterSet(clusters=out, unassigned=frozenset(unassigned))
