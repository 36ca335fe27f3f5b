import numpy as np
import pytest

from cogmap.hac import ClusterSet
from cogmap.lca import Assignment
from cogmap.maps import CausalMap, build_map
from cogmap.pipeline import (analyze_clusters, classify_stage, combine,
                             cut_height_for)
from cogmap.synthetic import generate, three_school_spec


def assignment_from_labels(labels):
    ids = tuple(f"g{i:02d}" for i in range(len(labels)))
    n_classes = max(labels) + 1
    posts = np.zeros((len(labels), n_classes))
    for i, lab in enumerate(labels):
        posts[i, lab] = 1.0
    return Assignment(ids=ids, labels=np.array(labels), posteriors=posts)


def cluster_set(groups, unassigned=()):
    return ClusterSet(clusters=tuple(frozenset(g) for g in groups),
                      unassigned=frozenset(unassigned))


def test_combine_three_school_agreement():
    # 11 + 16 + 12 members agree across methods, 21 respondents scattered
    labels = [0] * 11 + [1] * 16 + [2] * 12 + [0, 1, 2] * 7
    lca = assignment_from_labels(labels)
    ids = lca.ids
    hac = cluster_set(
        [ids[0:11], ids[11:27], ids[27:39]],
        unassigned=ids[39:],
    )
    robust = combine(lca, hac, min_size=4)
    assert sorted(robust.sizes()) == [11, 12, 16]
    assert len(robust.unclustered) == 21
    assert robust.provenance == ((0, 0), (1, 1), (2, 2))


def test_combine_full_disagreement():
    labels = [0, 1] * 6
    lca = assignment_from_labels(labels)
    ids = lca.ids
    hac = cluster_set([ids[0:6], ids[6:12]])  # each intersection has size 3
    robust = combine(lca, hac, min_size=4)
    assert robust.clusters == ()
    assert len(robust.unclustered) == 12


def test_combine_identical_partitions():
    labels = [0] * 6 + [1] * 5 + [2] * 2
    lca = assignment_from_labels(labels)
    ids = lca.ids
    hac = cluster_set([ids[0:6], ids[6:11], ids[11:13]])
    robust = combine(lca, hac, min_size=4)
    assert sorted(robust.sizes()) == [5, 6]  # the pair is below min_size
    assert len(robust.unclustered) == 2


def test_combine_universe_mismatch():
    lca = assignment_from_labels([0, 0, 1, 1])
    hac = cluster_set([("g00", "g01")], unassigned=("g02", "nope"))
    with pytest.raises(ValueError, match="different respondents"):
        combine(lca, hac)


def robust_with_sizes(sizes, n):
    ids = [f"r{i:03d}" for i in range(n)]
    clusters = []
    cursor = 0
    for s in sizes:
        clusters.append(frozenset(ids[cursor:cursor + s]))
        cursor += s
    from cogmap.pipeline import RobustClusters
    return RobustClusters(
        clusters=tuple(clusters),
        unclustered=frozenset(ids[cursor:]),
        provenance=tuple((i, i) for i in range(len(sizes))),
    )


@pytest.mark.parametrize("sizes, n, stage, qualifier", [
    ([11, 16, 12], 60, "H1", "between stages 1 and 2"),
    ([57], 60, "H2", "normal science"),
    ([33], 60, "H2", "transitioning stage 2→3"),
    ([], 60, "H0", None),
    ([48, 9], 60, "H2", "transitioning stage 2→3"),  # the 80%/15% reading
])
def test_classify_stage_table(sizes, n, stage, qualifier):
    verdict = classify_stage(robust_with_sizes(sizes, n), n)
    assert verdict.stage == stage
    assert verdict.qualifier == qualifier


def test_classify_h1_without_qualifier_when_mostly_clustered():
    verdict = classify_stage(robust_with_sizes([20, 25], 60), 60)
    assert verdict.stage == "H1"
    assert verdict.qualifier is None


def test_classify_minority_clusters_h0():
    verdict = classify_stage(robust_with_sizes([10, 5], 60), 60)
    assert verdict.stage == "H0"


def test_classify_scale_invariance():
    rng = np.random.default_rng(6)
    for _ in range(50):
        k = int(rng.integers(0, 5))
        sizes = sorted(rng.integers(1, 30, size=k).tolist(), reverse=True)
        n = max(sum(sizes) + int(rng.integers(0, 40)), 1)
        base = classify_stage(robust_with_sizes(sizes, n), n)
        scaled = classify_stage(robust_with_sizes([s * 3 for s in sizes], n * 3), n * 3)
        assert base.stage == scaled.stage
        assert base.qualifier == scaled.qualifier


def test_classify_always_fires_exactly_one_stage():
    rng = np.random.default_rng(7)
    for _ in range(200):
        k = int(rng.integers(0, 6))
        sizes = rng.integers(1, 25, size=k).tolist()
        n = sum(sizes) + int(rng.integers(0, 30)) or 1
        verdict = classify_stage(robust_with_sizes(sizes, n), n)
        assert verdict.stage in ("H0", "H1", "H2")


def test_combine_output_disjoint():
    pop = generate(three_school_spec(3))
    analysis = analyze_clusters(pop.maps)
    seen = set()
    for cluster in analysis.robust.clusters:
        assert not (cluster & seen)
        seen |= cluster
    assert not (seen & analysis.robust.unclustered)
    assert seen | analysis.robust.unclustered == {m.respondent_id for m in pop.maps}


def test_analyze_clusters_identical_maps_normal_science():
    proto = build_map("p", {("team_quality", "ses"): 2,
                            ("developer_skill", "team_quality"): 3})
    maps = [CausalMap.create(f"r{i:02d}", proto.nodes, proto.edges) for i in range(10)]
    analysis = analyze_clusters(maps)
    assert analysis.verdict.stage == "H2"
    assert analysis.verdict.qualifier == "normal science"
    assert analysis.robust.sizes() == (10,)


def test_cut_height_tracks_quantile():
    pop = generate(three_school_spec(1))
    from cogmap.distance import distance_matrix
    dist = distance_matrix(pop.maps)
    h20 = cut_height_for(dist, 20.0)
    h50 = cut_height_for(dist, 50.0)
    assert 0 < h20 < h50
