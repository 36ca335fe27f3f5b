import numpy as np
import pytest

from cogmap.distance import DistanceMatrix, distance_matrix
from cogmap.hac import (ClusterSet, build_dendrogram, cut, cluster_members,
                        extend_clusters, max_intra_distance)

from conftest import random_maps


def dm(ids, values):
    return DistanceMatrix(ids=tuple(ids), values=np.asarray(values, dtype=float))


THREE = dm("abc", [[0.0, 0.1, 0.5],
                   [0.1, 0.0, 0.6],
                   [0.5, 0.6, 0.0]])


def test_two_points_single_merge():
    d = build_dendrogram(dm("ab", [[0, 0.4], [0.4, 0]]))
    assert len(d.merges) == 1
    assert d.merges[0].height == 0.4


def test_three_points_complete_linkage_trace():
    d = build_dendrogram(THREE, linkage="complete")
    assert [(m.left, m.right, m.height) for m in d.merges] == [(0, 1, 0.1), (2, 3, 0.6)]


def test_three_points_single_linkage_trace():
    d = build_dendrogram(THREE, linkage="single")
    assert [(m.left, m.right, m.height) for m in d.merges] == [(0, 1, 0.1), (2, 3, 0.5)]


def test_average_linkage():
    d = build_dendrogram(THREE, linkage="average")
    assert d.merges[1].height == pytest.approx(0.55)


def test_rejects_bad_matrices():
    with pytest.raises(ValueError, match="symmetric"):
        build_dendrogram(dm("ab", [[0, 0.2], [0.3, 0]]))
    with pytest.raises(ValueError, match="0, 1"):
        build_dendrogram(dm("ab", [[0, 1.4], [1.4, 0]]))
    with pytest.raises(ValueError, match="linkage"):
        build_dendrogram(THREE, linkage="ward")


def test_complete_linkage_heights_monotone():
    maps = random_maps(25, root_seed=41)
    d = build_dendrogram(distance_matrix(maps))
    heights = [m.height for m in d.merges]
    assert all(b >= a for a, b in zip(heights, heights[1:]))


def test_tie_break_lowest_index_pair():
    values = np.array([
        [0.0, 0.2, 0.2, 0.9],
        [0.2, 0.0, 0.9, 0.9],
        [0.2, 0.9, 0.0, 0.9],
        [0.9, 0.9, 0.9, 0.0],
    ])
    d = build_dendrogram(dm("abcd", values))
    assert (d.merges[0].left, d.merges[0].right) == (0, 1)


def test_cut_extremes():
    maps = random_maps(8, root_seed=42)
    d = build_dendrogram(distance_matrix(maps))
    singletons = cut(d, k=8)
    assert len(singletons.clusters) == 8
    assert all(len(c) == 1 for c in singletons.clusters)
    everything = cut(d, k=1)
    assert len(everything.clusters) == 1
    assert len(everything.clusters[0]) == 8


def test_cut_three_point_example():
    d = build_dendrogram(THREE)
    parts = cut(d, k=2)
    assert sorted(sorted(c) for c in parts.clusters) == [["a", "b"], ["c"]]
    by_height = cut(d, height=0.3)
    assert sorted(sorted(c) for c in by_height.clusters) == [["a", "b"], ["c"]]


def test_cut_partitions_everything():
    maps = random_maps(20, root_seed=43)
    d = build_dendrogram(distance_matrix(maps))
    for k in (1, 3, 7, 20):
        parts = cut(d, k=k)
        assert len(parts.clusters) == k
        ids = [rid for c in parts.clusters for rid in c]
        assert sorted(ids) == sorted(m.respondent_id for m in maps)


def test_cut_argument_validation():
    d = build_dendrogram(THREE)
    with pytest.raises(ValueError):
        cut(d)
    with pytest.raises(ValueError):
        cut(d, k=2, height=0.5)
    with pytest.raises(ValueError):
        cut(d, k=0)
    with pytest.raises(ValueError):
        cut(d, k=4)


def test_extend_adds_compatible_point():
    values = [[0.0, 0.3, 0.2],
              [0.3, 0.0, 0.2],
              [0.2, 0.2, 0.0]]
    d = dm(["p1", "p2", "p3"], values)
    base = ClusterSet(clusters=(frozenset({"p1", "p2"}),), unassigned=frozenset({"p3"}))
    out = extend_clusters(base, d)
    assert out.clusters[0] == {"p1", "p2", "p3"}
    assert not out.unassigned


def test_extend_rejects_distant_point():
    values = [[0.0, 0.3, 0.9],
              [0.3, 0.0, 0.9],
              [0.9, 0.9, 0.0]]
    d = dm(["p1", "p2", "p3"], values)
    base = ClusterSet(clusters=(frozenset({"p1", "p2"}),), unassigned=frozenset({"p3"}))
    out = extend_clusters(base, d)
    assert out.clusters[0] == {"p1", "p2"}
    assert out.unassigned == {"p3"}


def test_extend_idempotent_and_never_raises_max():
    maps = random_maps(30, root_seed=44)
    dmat = distance_matrix(maps)
    d = build_dendrogram(dmat)
    parts = cut(d, k=8)
    big = tuple(c for c in parts.clusters if len(c) >= 3)
    rest = frozenset().union(*[c for c in parts.clusters if len(c) < 3]) if any(
        len(c) < 3 for c in parts.clusters) else frozenset()
    base = ClusterSet(clusters=big, unassigned=rest)
    before = [max_intra_distance(c, dmat) for c in base.clusters]
    once = extend_clusters(base, dmat)
    after = [max_intra_distance(c, dmat) for c in once.clusters]
    assert all(b <= a + 1e-15 for a, b in zip(before, after))
    twice = extend_clusters(once, dmat)
    assert once == twice


def test_extend_rejects_unknown_ids():
    d = dm(["p1", "p2"], [[0, 0.1], [0.1, 0]])
    base = ClusterSet(clusters=(frozenset({"p1", "zz"}),))
    with pytest.raises(ValueError, match="zz"):
        extend_clusters(base, d)


def test_dendrogram_exports(tmp_path):
    d = build_dendrogram(THREE)
    d.to_merge_csv(tmp_path / "m.csv")
    lines = (tmp_path / "m.csv").read_text().splitlines()
    assert lines[0] == "left,right,height"
    assert len(lines) == 3
    text = d.to_text()
    assert "a" in text and "[0.100000]" in text
    members = cluster_members(d)
    assert members[4] == {"a", "b", "c"}
