"""Entropy-weighted belief aggregation and consensus-graph extraction.

Every ordered construct pair in every map is read as a weight range: an
explicit signed response w becomes [w-0.5, w+0.5]; two included constructs
with no arrow pin the effect near zero; an excluded construct's direct
effect on ses is bounded by the map's weakest explicit response; nothing
else is known, which is the full unnormalized range [-3.5, +3.5].  Each
range contributes its entropy weight H = ln(1/width) wherever it covers the
weight axis, so ignorance counts against a pair.  A pair's score is the
mean of that aggregate over the weight domain and over respondents, and the
consensus graph keeps the pairs scoring above a percentile threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .maps import CausalMap
from .vocabulary import CANONICAL_IDS, SES_ID

FULL_RANGE = (-3.5, 3.5)
DOMAIN_WIDTH = FULL_RANGE[1] - FULL_RANGE[0]

PERCENTILES = (97, 98, 99)


@dataclass(frozen=True)
class WeightRange:
    lo: float
    hi: float

    def __post_init__(self):
        if not (FULL_RANGE[0] <= self.lo < self.hi <= FULL_RANGE[1]):
            raise ValueError(f"invalid weight range [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        return self.lo < x < self.hi  # strict on both boundaries


@dataclass(frozen=True)
class BeliefScore:
    pair: tuple[str, str]
    score: float
    support: int  # respondents with an explicit response on the pair
    mean_explicit_weight: float | None


@dataclass(frozen=True)
class ConsensusEdge:
    source: str
    target: str
    score: float
    support: int
    mean_weight: float | None


@dataclass(frozen=True)
class ConsensusGraph:
    nodes: tuple[str, ...]
    edges: tuple[ConsensusEdge, ...]
    percentile: int

    def edge_pairs(self) -> frozenset[tuple[str, str]]:
        return frozenset((e.source, e.target) for e in self.edges)


def pair_universe(vocabulary=CANONICAL_IDS) -> tuple[tuple[str, str], ...]:
    """All ordered distinct pairs over vocabulary plus ses."""
    ids = tuple(vocabulary) + (SES_ID,)
    return tuple((a, b) for a in ids for b in ids if a != b)


def edge_ranges(cmap: CausalMap, vocabulary=CANONICAL_IDS) -> dict[tuple[str, str], WeightRange]:
    """Weight range for every ordered pair of one map.

    Other pseudo-nodes never enter the pair universe, and custom constructs
    fall outside the shared vocabulary.
    """
    universe = set(vocabulary) | {SES_ID}
    present = {n.id for n in cmap.nodes if n.kind != "other" and n.id in universe}

    explicit: dict[tuple[str, str], int] = {}
    min_magnitude = None
    other_ids = {n.id for n in cmap.nodes if n.kind == "other"}
    for e in cmap.edges:
        if e.from_id in other_ids:
            continue
        if min_magnitude is None or e.magnitude < min_magnitude:
            min_magnitude = e.magnitude
        if e.from_id in universe and e.to_id in universe:
            explicit[(e.from_id, e.to_id)] = e.sign * e.magnitude
    floor = max(min_magnitude or 1, 1)

    ranges: dict[tuple[str, str], WeightRange] = {}
    for pair in pair_universe(vocabulary):
        cause, effect = pair
        if pair in explicit:
            w = explicit[pair]
            ranges[pair] = WeightRange(w - 0.5, w + 0.5)
        elif cause in present and effect in present:
            ranges[pair] = WeightRange(-0.5, 0.5)
        elif cause not in present and effect == SES_ID:
            bound = floor - 0.5
            ranges[pair] = WeightRange(-bound, bound)
        else:
            ranges[pair] = WeightRange(*FULL_RANGE)
    return ranges


def entropy_weight(weight_range: WeightRange) -> float:
    """H = ln(1/width): zero for a unit range, negative for wider ones."""
    return math.log(1.0 / weight_range.width)


def belief_function(dataset: list[CausalMap], pair: tuple[str, str], x: float,
                    vocabulary=CANONICAL_IDS) -> float:
    """Sum of entropy weights over the maps whose range for this pair
    strictly contains x."""
    total = 0.0
    for cmap in dataset:
        r = edge_ranges(cmap, vocabulary)[pair]
        if r.contains(x):
            total += entropy_weight(r)
    return total


def belief_score(dataset: list[CausalMap], pair: tuple[str, str],
                 vocabulary=CANONICAL_IDS) -> BeliefScore:
    """Mean of the belief function over the weight domain, averaged per
    respondent so scores stay comparable across clusters of any size."""
    if not dataset:
        raise ValueError("dataset is empty")
    total = 0.0
    support = 0
    weight_sum = 0.0
    for cmap in dataset:
        r = edge_ranges(cmap, vocabulary)[pair]
        total += entropy_weight(r) * r.width
        e = cmap.edge(*pair)
        if e is not None and e.sign is not None:
            support += 1
            weight_sum += e.sign * e.magnitude
    return BeliefScore(
        pair=pair,
        score=total / (DOMAIN_WIDTH * len(dataset)),
        support=support,
        mean_explicit_weight=(weight_sum / support) if support else None,
    )


def score_all_pairs(dataset: list[CausalMap],
                    vocabulary=CANONICAL_IDS) -> tuple[BeliefScore, ...]:
    """Belief scores for the whole pair universe in one pass over the maps."""
    if not dataset:
        raise ValueError("dataset is empty")
    pairs = pair_universe(vocabulary)
    totals = {p: 0.0 for p in pairs}
    support = {p: 0 for p in pairs}
    weight_sum = {p: 0.0 for p in pairs}
    for cmap in dataset:
        ranges = edge_ranges(cmap, vocabulary)
        for p in pairs:
            r = ranges[p]
            totals[p] += entropy_weight(r) * r.width
        other_ids = {n.id for n in cmap.nodes if n.kind == "other"}
        for e in cmap.edges:
            p = (e.from_id, e.to_id)
            if e.from_id not in other_ids and p in totals and e.sign is not None:
                support[p] += 1
                weight_sum[p] += e.sign * e.magnitude
    n = len(dataset)
    return tuple(
        BeliefScore(
            pair=p,
            score=totals[p] / (DOMAIN_WIDTH * n),
            support=support[p],
            mean_explicit_weight=(weight_sum[p] / support[p]) if support[p] else None,
        )
        for p in pairs
    )


def build_consensus(dataset: list[CausalMap], percentile: int = 97,
                    vocabulary=CANONICAL_IDS) -> ConsensusGraph:
    """Keep the pairs scoring strictly above the given percentile of all
    pair scores; isolated nodes are dropped."""
    if percentile not in PERCENTILES:
        raise ValueError(f"percentile must be one of {PERCENTILES}")
    scores = score_all_pairs(dataset, vocabulary)
    threshold = float(np.percentile([s.score for s in scores], percentile))
    kept = [s for s in scores if s.score > threshold]
    kept.sort(key=lambda s: (-s.score, s.pair))
    edges = tuple(
        ConsensusEdge(source=s.pair[0], target=s.pair[1], score=s.score,
                      support=s.support, mean_weight=s.mean_explicit_weight)
        for s in kept
    )
    touched = sorted({e.source for e in edges} | {e.target for e in edges})
    return ConsensusGraph(nodes=tuple(touched), edges=edges, percentile=percentile)


def scores_csv(scores: tuple[BeliefScore, ...], path: str | Path) -> None:
    lines = ["cause,effect,score,support,mean_explicit_weight"]
    for s in sorted(scores, key=lambda s: (-s.score, s.pair)):
        mean = format(s.mean_explicit_weight, ".17g") if s.mean_explicit_weight is not None else ""
        lines.append(f"{s.pair[0]},{s.pair[1]},{format(s.score, '.17g')},{s.support},{mean}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
