import numpy as np
import pytest

from cogmap.distance import (capped_entry, distance_matrix, lsw, max_difference,
                             partition_elements)
from cogmap.errors import NumericalError
from cogmap.maps import build_map
from cogmap.vocabulary import CANONICAL_IDS, SES_ID

from conftest import random_maps


def lsw_oracle(a, b):
    """Independent cell-by-cell evaluation over explicit edge dictionaries."""
    ids_a = a.comparable_ids()
    ids_b = b.comparable_ids()
    common = ids_a & ids_b
    order = sorted(ids_a | ids_b)

    def entry(cmap, i, j):
        e = cmap.edge(i, j)
        if e is None or e.sign is None:
            return 0
        return e.sign * e.magnitude

    total = 0
    for i in order:
        for j in order:
            if i == j:
                continue
            involves_unique = i not in common or j not in common
            total += abs(capped_entry(entry(a, i, j), involves_unique)
                         - capped_entry(entry(b, i, j), involves_unique))
    pc = len(common)
    pu1 = len(ids_a - ids_b)
    pu2 = len(ids_b - ids_a)
    denom = (6 * pc ** 2 + 2 * pc * (pu1 + pu2) + pu1 ** 2 + pu2 ** 2
             - (6 * pc + pu1 + pu2))
    return total / denom


def complete_digraph(respondent_id, constructs, weight):
    ids = list(constructs) + [SES_ID]
    weights = {(a, b): weight for a in ids for b in ids if a != b}
    return build_map(respondent_id, weights)


def test_partition_identical_node_sets():
    a = build_map("a", {("team_quality", "ses"): 1})
    b = build_map("b", {("team_quality", "ses"): 3})
    part = partition_elements(a, b)
    assert part.common == {"team_quality", "ses"}
    assert not part.unique_a and not part.unique_b
    assert part.p == 2


def test_partition_disjoint_constructs():
    a = build_map("a", {("team_quality", "ses"): 1})
    b = build_map("b", {("developer_skill", "ses"): 1})
    part = partition_elements(a, b)
    assert part.common == {"ses"}
    assert part.unique_a == {"team_quality"}
    assert part.unique_b == {"developer_skill"}


def test_partition_customs_never_shared_across_respondents():
    a = build_map("a", {("custom:time_to_market", "ses"): 2, ("team_quality", "ses"): 1})
    b = build_map("b", {("team_quality", "ses"): 1})
    part = partition_elements(a, b)
    assert "custom:time_to_market" in part.unique_a


def test_partition_excludes_other_nodes():
    a = build_map("a", {("team_quality", "ses"): 1}, other={"ses": 2})
    b = build_map("b", {("team_quality", "ses"): 1})
    part = partition_elements(a, b)
    assert part.common == {"team_quality", "ses"}
    assert not part.unique_a


@pytest.mark.parametrize("value, involves_unique, expected", [
    (3, True, 1),
    (-2, True, -1),
    (3, False, 3),
    (0, True, 0),
    (-3, False, -3),
])
def test_capped_entry(value, involves_unique, expected):
    assert capped_entry(value, involves_unique) == expected


def test_lsw_opposed_signs_fixture():
    a = build_map("a", {("team_quality", "ses"): 3})
    b = build_map("b", {("team_quality", "ses"): -3})
    assert abs(lsw(a, b) - 0.5) < 1e-12
    assert abs(lsw_oracle(a, b) - 0.5) < 1e-12


def test_lsw_disjoint_constructs_fixture():
    a = build_map("a", {("team_quality", "ses"): 2})
    b = build_map("b", {("developer_skill", "ses"): 1})
    assert abs(lsw(a, b) - 0.5) < 1e-12
    assert abs(lsw_oracle(a, b) - 0.5) < 1e-12


def test_lsw_identity():
    for cmap in random_maps(10, root_seed=21):
        assert lsw(cmap, cmap) == 0.0


def test_lsw_matches_oracle_on_random_pairs():
    maps = random_maps(40, root_seed=22)
    rng = np.random.default_rng(0)
    for _ in range(120):
        i, j = rng.integers(0, len(maps), size=2)
        assert lsw(maps[i], maps[j]) == pytest.approx(lsw_oracle(maps[i], maps[j]), abs=1e-12)


def test_lsw_metric_axioms_random_pairs():
    maps = random_maps(60, root_seed=23)
    rng = np.random.default_rng(1)
    for _ in range(300):
        i, j = rng.integers(0, len(maps), size=2)
        d_ij = lsw(maps[i], maps[j])
        assert d_ij == lsw(maps[j], maps[i])
        assert 0.0 <= d_ij <= 1.0


def test_lsw_rejects_ses_only_map():
    nodes_only_ses = build_map("a", {("team_quality", "ses"): 1})
    import cogmap.maps as m
    bad = m.CausalMap.create("b", [m.Node("ses", "ses")], [])
    with pytest.raises(ValueError, match="non-ses construct"):
        lsw(nodes_only_ses, bad)


def test_unique_unique_cells_contribute_zero():
    # cells between unique_a and unique_b always hold 0 in both maps, and the
    # denominator omits the corresponding 2*pu1*pu2 term
    a = build_map("a", {("team_quality", "ses"): 3, ("developer_skill", "team_quality"): 2})
    b = build_map("b", {("financial_risk", "ses"): -3, ("software_complexity", "financial_risk"): -2})
    assert lsw(a, b) == pytest.approx(lsw_oracle(a, b), abs=1e-15)
    pc, pu1, pu2 = 1, 2, 2
    assert max_difference(pc, pu1, pu2) == 6 + 8 + 4 + 4 - 10


def test_maximal_disagreement_attains_one():
    rng = np.random.default_rng(9)
    for _ in range(25):
        n_common = int(rng.integers(1, 5))
        n_a = int(rng.integers(0, 4))
        n_b = int(rng.integers(0, 4))
        if n_common == 1 and (n_a == 0 or n_b == 0):
            continue  # a valid map needs at least one construct
        pool = list(CANONICAL_IDS)
        rng.shuffle(pool)
        common = pool[:n_common - 1]  # plus ses
        unique_a = pool[n_common - 1: n_common - 1 + n_a]
        unique_b = pool[n_common - 1 + n_a: n_common - 1 + n_a + n_b]
        a = complete_digraph("a", common + unique_a, 3)
        b = complete_digraph("b", common + unique_b, -3)
        assert lsw(a, b) == pytest.approx(1.0, abs=1e-12)


def test_distance_matrix_identical_pair():
    a = build_map("a", {("team_quality", "ses"): 2})
    b = build_map("b", {("team_quality", "ses"): 2})
    dm = distance_matrix([a, b])
    assert dm.values.tolist() == [[0.0, 0.0], [0.0, 0.0]]


def test_distance_matrix_fixture_pair():
    a = build_map("a", {("team_quality", "ses"): 3})
    b = build_map("b", {("team_quality", "ses"): -3})
    dm = distance_matrix([a, b])
    assert dm.values[0, 1] == 0.5


def test_distance_matrix_shape_and_axioms():
    maps = random_maps(60, root_seed=24)
    dm = distance_matrix(maps)
    assert dm.values.shape == (60, 60)
    assert np.array_equal(dm.values, dm.values.T)
    assert np.all(np.diag(dm.values) == 0)
    assert np.all((dm.values >= 0) & (dm.values <= 1))


def test_distance_matrix_rejects_duplicates_and_tiny_datasets():
    a = build_map("a", {("team_quality", "ses"): 2})
    with pytest.raises(ValueError):
        distance_matrix([a])
    with pytest.raises(ValueError, match="duplicate"):
        distance_matrix([a, a])


def test_distance_matrix_names_offending_pair():
    import cogmap.maps as m
    good = build_map("good", {("team_quality", "ses"): 1})
    bad = m.CausalMap.create("bad", [m.Node("ses", "ses")], [])
    with pytest.raises(NumericalError, match="bad"):
        distance_matrix([good, bad])


def test_distance_csv_significant_digits(tmp_path):
    maps = random_maps(4, root_seed=25)
    dm = distance_matrix(maps)
    out = tmp_path / "d.csv"
    dm.to_csv(out)
    lines = out.read_text().strip().splitlines()
    assert lines[0].split(",") == list(dm.ids)
    parsed = np.array([[float(x) for x in row.split(",")] for row in lines[1:]])
    assert np.array_equal(parsed, dm.values)  # 17g round-trips exactly
