import math

import numpy as np
import pytest

from cogmap.belief import (WeightRange, belief_function, belief_score,
                           build_consensus, edge_ranges, entropy_weight,
                           pair_universe, score_all_pairs)
from cogmap.maps import CausalMap, build_map
from cogmap.vocabulary import SES_ID

from conftest import random_maps


def grid_score(dataset, pair, points=701):
    """Midpoint-rule oracle: mean of the belief function over the weight
    domain, averaged per respondent.  Ranges are precomputed once per map;
    the integration itself stays numeric."""
    step = 7.0 / points
    xs = [-3.5 + (k + 0.5) * step for k in range(points)]
    ranges = [edge_ranges(m)[pair] for m in dataset]
    total = 0.0
    for x in xs:
        total += sum(entropy_weight(r) for r in ranges if r.contains(x))
    return total / points / len(dataset)


def complete_prototype(respondent_id, constructs=("team_quality", "developer_skill"),
                       magnitude=2):
    ids = list(constructs) + [SES_ID]
    return build_map(respondent_id,
                     {(a, b): magnitude for a in ids for b in ids if a != b})


def test_edge_ranges_explicit_response():
    r = edge_ranges(build_map("r", {("team_quality", "ses"): 1}))
    assert r[("team_quality", "ses")] == WeightRange(0.5, 1.5)
    r2 = edge_ranges(build_map("r", {("team_quality", "ses"): -3}))
    assert r2[("team_quality", "ses")] == WeightRange(-3.5, -2.5)


def test_edge_ranges_included_pair_without_arrow():
    cmap = build_map("r", {("team_quality", "ses"): 2, ("developer_skill", "ses"): 3})
    r = edge_ranges(cmap)
    assert r[("developer_skill", "team_quality")] == WeightRange(-0.5, 0.5)


def test_edge_ranges_both_absent_full_ignorance():
    r = edge_ranges(build_map("r", {("team_quality", "ses"): 1}))
    assert r[("use_of_cots", "financial_risk")] == WeightRange(-3.5, 3.5)


def test_edge_ranges_absent_construct_to_ses_bounded_by_weakest():
    cmap = build_map("r", {("team_quality", "ses"): 2, ("developer_skill", "ses"): 3})
    r = edge_ranges(cmap)
    assert r[("use_of_cots", "ses")] == WeightRange(-1.5, 1.5)
    weak = build_map("r", {("team_quality", "ses"): 1})
    assert edge_ranges(weak)[("use_of_cots", "ses")] == WeightRange(-0.5, 0.5)


def test_edge_ranges_absent_construct_other_pairs_full():
    cmap = build_map("r", {("team_quality", "ses"): 2})
    r = edge_ranges(cmap)
    assert r[("use_of_cots", "team_quality")] == WeightRange(-3.5, 3.5)
    assert r[("ses", "use_of_cots")] == WeightRange(-3.5, 3.5)


def test_edge_ranges_cover_whole_universe():
    cmap = build_map("r", {("team_quality", "ses"): 2}, other={"ses": 1})
    r = edge_ranges(cmap)
    assert set(r) == set(pair_universe())
    assert len(r) == 29 * 28


def test_entropy_weight_values():
    assert entropy_weight(WeightRange(0.5, 1.5)) == 0.0
    assert entropy_weight(WeightRange(-3.5, 3.5)) == pytest.approx(-math.log(7), abs=1e-12)
    assert entropy_weight(WeightRange(-1.0, 1.0)) == pytest.approx(-math.log(2), abs=1e-12)


def test_weight_range_validation():
    with pytest.raises(ValueError):
        WeightRange(1.0, 1.0)
    with pytest.raises(ValueError):
        WeightRange(-4.0, 0.0)


def test_belief_function_explicit_width_one():
    maps = [build_map("r", {("team_quality", "ses"): 1})]
    assert belief_function(maps, ("team_quality", "ses"), 1.0) == 0.0


def test_belief_function_ignorant_interior():
    maps = [build_map("r", {("team_quality", "ses"): 1})]
    pair = ("use_of_cots", "financial_risk")
    assert belief_function(maps, pair, 0.3) == pytest.approx(-math.log(7))


def test_belief_function_boundary_is_strict():
    maps = [build_map("r", {("team_quality", "ses"): 2, ("developer_skill", "ses"): 2})]
    pair = ("use_of_cots", "ses")  # range [-1.5, 1.5]
    assert belief_function(maps, pair, 1.5) == 0.0
    assert belief_function(maps, pair, 1.4999) != 0.0


def test_belief_score_all_explicit():
    maps = [build_map(f"r{i}", {("team_quality", "ses"): w})
            for i, w in enumerate([1, 2, 3, -1])]
    s = belief_score(maps, ("team_quality", "ses"))
    assert s.score == 0.0
    assert s.support == 4
    assert s.mean_explicit_weight == pytest.approx(1.25)


def test_belief_score_all_ignorant():
    maps = [build_map(f"r{i}", {("team_quality", "ses"): 1}) for i in range(6)]
    s = belief_score(maps, ("use_of_cots", "financial_risk"))
    assert s.score == pytest.approx(-math.log(7), abs=1e-12)
    assert s.support == 0
    assert s.mean_explicit_weight is None


def test_belief_score_half_explicit_half_ignorant():
    maps = [build_map(f"r{i}", {("use_of_cots", "financial_risk"): 1,
                                ("financial_risk", "ses"): 1}) for i in range(3)]
    maps += [build_map(f"s{i}", {("team_quality", "ses"): 1}) for i in range(3)]
    s = belief_score(maps, ("use_of_cots", "financial_risk"))
    assert s.score == pytest.approx(-math.log(7) / 2, abs=1e-12)


def test_analytic_score_matches_grid_oracle():
    maps = random_maps(6, root_seed=61)
    rng = np.random.default_rng(0)
    pairs = pair_universe()
    for idx in rng.choice(len(pairs), size=25, replace=False):
        pair = pairs[idx]
        assert belief_score(maps, pair).score == pytest.approx(
            grid_score(maps, pair), abs=1e-3)


def test_score_all_pairs_matches_single_scores():
    maps = random_maps(5, root_seed=62)
    table = {s.pair: s for s in score_all_pairs(maps)}
    rng = np.random.default_rng(1)
    pairs = pair_universe()
    for idx in rng.choice(len(pairs), size=20, replace=False):
        pair = pairs[idx]
        single = belief_score(maps, pair)
        assert table[pair].score == pytest.approx(single.score, abs=1e-15)
        assert table[pair].support == single.support


def test_score_invariant_under_dataset_permutation():
    maps = random_maps(7, root_seed=63)
    reordered = list(reversed(maps))
    a = {s.pair: s.score for s in score_all_pairs(maps)}
    b = {s.pair: s.score for s in score_all_pairs(reordered)}
    assert a == b


def test_monotonicity_explicit_beats_ignorance():
    ignorant = [build_map(f"r{i}", {("team_quality", "ses"): 1}) for i in range(4)]
    pair = ("use_of_cots", "financial_risk")
    base = belief_score(ignorant, pair).score
    informed = ignorant[:3] + [build_map("r3", {("use_of_cots", "financial_risk"): 2,
                                                ("financial_risk", "ses"): 1})]
    assert belief_score(informed, pair).score >= base


def test_identical_maps_consensus_keeps_exactly_prototype_edges():
    proto = complete_prototype("p")
    maps = [CausalMap.create(f"r{i}", proto.nodes, proto.edges) for i in range(9)]
    graph = build_consensus(maps, percentile=97)
    expected = {(e.from_id, e.to_id) for e in proto.edges}
    assert graph.edge_pairs() == expected
    assert set(graph.nodes) == {"team_quality", "developer_skill", "ses"}


def test_percentile_nesting():
    maps = random_maps(12, root_seed=64)
    kept = {p: build_consensus(maps, percentile=p).edge_pairs() for p in (97, 98, 99)}
    assert kept[99] <= kept[98] <= kept[97]


def test_consensus_edges_sorted_and_annotated():
    maps = [complete_prototype(f"r{i}") for i in range(5)]
    graph = build_consensus(maps, percentile=97)
    scores = [e.score for e in graph.edges]
    assert scores == sorted(scores, reverse=True)
    for e in graph.edges:
        assert e.support == 5
        assert e.mean_weight == pytest.approx(2.0)


def test_build_consensus_validates_percentile():
    maps = random_maps(3, root_seed=65)
    with pytest.raises(ValueError):
        build_consensus(maps, percentile=90)
