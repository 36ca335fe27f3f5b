"""Synthetic respondent populations with planted schools of thought.

Used to verify the clustering pipeline end to end: member maps are noisy
copies of a school prototype, noise maps are structureless fillers drawn
over random construct subsets.  Generation is deterministic given the root
seed; each map derives its own child generator from (root seed, map index)
so parallel generation cannot change the output.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import GenerationError
from .maps import CausalMap, Edge, Node, OTHER_PREFIX, build_map, save_map, validate
from .vocabulary import CANONICAL_IDS, SES_ID


@dataclass(frozen=True)
class Prototype:
    """A school-of-thought template plus per-member noise knobs.

    Each member keeps every template construct with probability
    ``inclusion`` (and picks up each non-template construct with the
    complementary probability), keeps each surviving edge with probability
    ``retention``, and perturbs each kept weight by up to ``perturbation``
    integer steps.
    """

    template: CausalMap
    inclusion: float = 1.0
    retention: float = 1.0
    perturbation: int = 0


@dataclass(frozen=True)
class PopulationSpec:
    schools: tuple[tuple[Prototype, int], ...]
    noise: int = 0
    seed: int = 0
    noise_constructs: tuple[int, int] = (8, 12)

    def total(self) -> int:
        return sum(count for _, count in self.schools) + self.noise


@dataclass
class GeneratedPopulation:
    maps: list[CausalMap]
    labels: list[str]  # school index as string, "-" for noise

    def write(self, directory: str | Path) -> None:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        for m in self.maps:
            save_map(m, directory / f"{m.respondent_id}.json")
        lines = ["respondent_id,label"]
        lines += [f"{m.respondent_id},{label}" for m, label in zip(self.maps, self.labels)]
        (directory / "labels.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")


def generate(spec: PopulationSpec) -> GeneratedPopulation:
    if spec.total() < 2:
        raise ValueError("population must contain at least two maps")
    if any(count < 0 for _, count in spec.schools) or spec.noise < 0:
        raise ValueError("member counts must be non-negative")
    maps: list[CausalMap] = []
    labels: list[str] = []
    width = max(3, len(str(spec.total())))
    map_index = 0
    for school_idx, (proto, count) in enumerate(spec.schools):
        for _ in range(count):
            rng = np.random.default_rng([spec.seed, map_index])
            rid = f"m{map_index:0{width}d}"
            maps.append(_sample_member(proto, rid, rng))
            labels.append(str(school_idx))
            map_index += 1
    for _ in range(spec.noise):
        rng = np.random.default_rng([spec.seed, map_index])
        rid = f"m{map_index:0{width}d}"
        maps.append(random_map(rng, rid, spec.noise_constructs))
        labels.append("-")
        map_index += 1
    return GeneratedPopulation(maps=maps, labels=labels)


def _sample_member(proto: Prototype, respondent_id: str, rng: np.random.Generator) -> CausalMap:
    template = proto.template
    template_constructs = sorted(template.comparable_ids() - {SES_ID})
    outside = [c for c in CANONICAL_IDS if c not in set(template_constructs)]
    for _ in range(100):
        kept = {c for c in template_constructs if rng.random() < proto.inclusion}
        added = [c for c in outside if rng.random() < (1.0 - proto.inclusion)]
        present = kept | set(added) | {SES_ID}

        nodes = [Node(nid, template.node(nid).kind) for nid in sorted(kept)]
        nodes.append(Node(SES_ID, "ses"))
        nodes += [Node(nid, "construct") for nid in added]
        edges = []
        for e in template.edges:
            from_other = e.from_id.startswith(OTHER_PREFIX)
            if from_other:
                continue  # handled with the surviving other cards below
            if e.from_id not in present or e.to_id not in present:
                continue
            if rng.random() >= proto.retention:
                continue
            w = e.sign * e.magnitude
            if proto.perturbation:
                w += int(rng.integers(-proto.perturbation, proto.perturbation + 1))
                w = max(-3, min(3, w))
                if w == 0:
                    w = 1 if e.sign > 0 else -1  # weight scale skips zero
            edges.append(Edge(e.from_id, e.to_id, abs(w), 1 if w > 0 else -1))
        for n in template.nodes:
            if n.kind == "other" and n.attached_to in present:
                magnitude = template.edge(n.id, n.attached_to).magnitude
                nodes.append(Node(n.id, "other", attached_to=n.attached_to))
                edges.append(Edge(n.id, n.attached_to, magnitude, None))
        for c in added:
            w = _random_weight(rng)
            edges.append(Edge(c, SES_ID, abs(w), 1 if w > 0 else -1))

        candidate = CausalMap.create(respondent_id, nodes, edges)
        if validate(candidate).ok:
            return candidate
    raise GenerationError(
        f"could not sample a valid member for {respondent_id!r} in 100 attempts")


def random_map(rng: np.random.Generator, respondent_id: str,
               size_range: tuple[int, int] = (8, 12)) -> CausalMap:
    """A structureless valid map: a random recursive arrow tree rooted at ses
    over a uniformly sampled construct subset, with occasional extra arrows
    and other cards."""
    lo, hi = size_range
    size = int(rng.integers(lo, hi + 1))
    picks = rng.choice(len(CANONICAL_IDS), size=size, replace=False)
    constructs = [CANONICAL_IDS[i] for i in picks]

    nodes = [Node(SES_ID, "ses")] + [Node(c, "construct") for c in constructs]
    placed = [SES_ID]
    weights: dict[tuple[str, str], int] = {}
    for c in constructs:
        target = placed[int(rng.integers(len(placed)))]
        weights[(c, target)] = _random_weight(rng)
        placed.append(c)
    # A few cross arrows for shape variety; targets stay earlier in the
    # placement order so reachability is preserved.
    for idx, c in enumerate(constructs):
        if rng.random() < 0.3:
            candidates = [p for p in placed[:idx + 1] if p != c and (c, p) not in weights]
            if candidates:
                target = candidates[int(rng.integers(len(candidates)))]
                weights[(c, target)] = _random_weight(rng)

    edges = [Edge(a, b, abs(w), 1 if w > 0 else -1) for (a, b), w in weights.items()]
    incoming = {b for (_, b) in weights}
    for target in sorted(incoming):
        if rng.random() < 0.5:
            oid = OTHER_PREFIX + target
            nodes.append(Node(oid, "other", attached_to=target))
            edges.append(Edge(oid, target, int(rng.integers(1, 4)), None))
    return CausalMap.create(respondent_id, nodes, edges)


def _random_weight(rng: np.random.Generator) -> int:
    magnitude = int(rng.integers(1, 4))
    return magnitude if rng.random() < 0.5 else -magnitude


def school_prototype(name: str, constructs, rng: np.random.Generator) -> CausalMap:
    """A school-of-thought template over a construct block: every construct
    carries a direct arrow to ses (so members stay valid under edge
    dropping), plus chain arrows between neighbours and other cards."""
    constructs = list(constructs)
    weights: dict[tuple[str, str], int] = {}
    for c in constructs:
        weights[(c, SES_ID)] = _random_weight(rng)
    for a, b in zip(constructs[1::2], constructs[0::2]):
        weights[(a, b)] = _random_weight(rng)
    other = {SES_ID: int(rng.integers(1, 4))}
    for c in constructs[::3]:
        if any(to == c for (_, to) in weights):
            other[c] = int(rng.integers(1, 4))
    return build_map(name, weights, other=other)


def three_school_spec(seed: int = 0, *, counts: tuple[int, int, int] = (11, 16, 12),
                      noise: int = 21, inclusion: float = 0.9, retention: float = 0.9,
                      perturbation: int = 1) -> PopulationSpec:
    """Three schools over disjoint construct blocks plus structureless noise,
    sized like the study population (11/16/12 members + 21 noise = 60)."""
    rng = np.random.default_rng([seed, 10**9])
    blocks = (CANONICAL_IDS[0:9], CANONICAL_IDS[9:18], CANONICAL_IDS[18:28])
    schools = []
    for idx, (block, count) in enumerate(zip(blocks, counts)):
        template = school_prototype(f"school_{idx}", block, rng)
        proto = Prototype(template=template, inclusion=inclusion,
                          retention=retention, perturbation=perturbation)
        schools.append((proto, count))
    return PopulationSpec(schools=tuple(schools), noise=noise, seed=seed)


def binary_sampler(class_profiles, counts, seed: int = 0):
    """Independent Bernoulli draws per class profile.

    Returns (data, labels): data is a (sum(counts), d) 0/1 array, labels the
    planted class index per row.  Deterministic given the seed.
    """
    profiles = np.asarray(class_profiles, dtype=np.float64)
    if profiles.ndim != 2:
        raise ValueError("class_profiles must be a 2-D array of probabilities")
    if np.any(profiles < 0) or np.any(profiles > 1):
        raise ValueError("profiles must lie in [0, 1]")
    counts = list(counts)
    if len(counts) != profiles.shape[0]:
        raise ValueError("need one count per class profile")
    rng = np.random.default_rng(seed)
    blocks = []
    labels = []
    for cls, count in enumerate(counts):
        draws = rng.random((count, profiles.shape[1]))
        blocks.append((draws < profiles[cls]).astype(np.int64))
        labels += [cls] * count
    return np.vstack(blocks), np.array(labels, dtype=np.int64)
