"""Popularity tables and aggregated transitive influence.

Construct and relationship frequencies count canonical-vocabulary presence
across a dataset.  Transitive influence propagates each antecedent's
squared-weight share backward from ses: for every node with antecedents the
squared weights are normalized to sum to one (other cards participate via
their magnitude, so ignorance leaks weight out of the explicit graph), and a
node's influence is the share-weighted sum of its successors' influence.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import NumericalError
from .maps import CausalMap
from .vocabulary import CANONICAL_IDS, SES_ID

INFLUENCE_TOL = 1e-9
INFLUENCE_MAX_ITER = 10_000


@dataclass(frozen=True)
class NormalizedWeights:
    """Per target node, each antecedent's squared-weight share; shares of a
    target sum to exactly one."""

    shares: dict[str, dict[str, float]]

    def share(self, antecedent: str, target: str) -> float:
        return self.shares.get(target, {}).get(antecedent, 0.0)


@dataclass(frozen=True)
class InfluenceVector:
    """Influence of every non-other node on ses, in [0, 1] for acyclic maps
    (strong unleaked cycles can push values above 1)."""

    values: dict[str, float]

    def get(self, node_id: str) -> float:
        return self.values.get(node_id, 0.0)


def construct_frequency(dataset: list[CausalMap]) -> tuple[tuple[str, float], ...]:
    """Fraction of maps containing each canonical construct, descending."""
    if not dataset:
        raise ValueError("dataset is empty")
    counts = {cid: 0 for cid in CANONICAL_IDS}
    for m in dataset:
        for cid in m.construct_ids():
            counts[cid] += 1
    n = len(dataset)
    rows = [(cid, counts[cid] / n) for cid in CANONICAL_IDS]
    rows.sort(key=lambda r: (-r[1], r[0]))
    return tuple(rows)


def relationship_frequency(dataset: list[CausalMap]) -> tuple[tuple[tuple[str, str], float], ...]:
    """Fraction of maps containing each ordered (cause, effect) pair over the
    canonical vocabulary and ses; other and custom edges excluded."""
    if not dataset:
        raise ValueError("dataset is empty")
    eligible = set(CANONICAL_IDS) | {SES_ID}
    counts: dict[tuple[str, str], int] = {}
    for m in dataset:
        for e in m.edges:
            if e.from_id in eligible and e.to_id in eligible:
                counts[(e.from_id, e.to_id)] = counts.get((e.from_id, e.to_id), 0) + 1
    n = len(dataset)
    rows = [(pair, count / n) for pair, count in counts.items()]
    rows.sort(key=lambda r: (-r[1], r[0]))
    return tuple(rows)


def normalize_weights(cmap: CausalMap) -> NormalizedWeights:
    """Squared-weight antecedent shares per node; signs vanish under
    squaring, so unknown-sign other edges contribute their magnitude."""
    incoming: dict[str, list] = {}
    for e in cmap.edges:
        incoming.setdefault(e.to_id, []).append(e)
    shares: dict[str, dict[str, float]] = {}
    for target in sorted(incoming):
        edges = incoming[target]
        total = float(sum(e.magnitude ** 2 for e in edges))
        shares[target] = {e.from_id: (e.magnitude ** 2) / total
                          for e in sorted(edges, key=lambda e: e.from_id)}
    return NormalizedWeights(shares=shares)


def transitive_influence(cmap: CausalMap) -> InfluenceVector:
    """Fixed-point influence of every node on ses (ses pinned at 1).

    Starts from zero and iterates the share-weighted successor sum to within
    INFLUENCE_TOL; a non-convergent loop is retried with 0.5 damping and, if
    still divergent, reported with the offending cycle.  Other pseudo-nodes
    are computed but left out of the result.
    """
    weights = normalize_weights(cmap)
    nodes = sorted(n.id for n in cmap.nodes)
    successors: dict[str, list[tuple[str, float]]] = {nid: [] for nid in nodes}
    for e in cmap.edges:
        successors[e.from_id].append((e.to_id, weights.share(e.from_id, e.to_id)))
    for nid in nodes:
        successors[nid].sort()

    values = _iterate(nodes, successors, damping=0.0)
    if values is None:
        values = _iterate(nodes, successors, damping=0.5)
    if values is None:
        cycle = _cyclic_nodes(nodes, successors)
        raise NumericalError(
            "influence iteration did not converge; cycle involving: " + ", ".join(cycle))

    other_ids = {n.id for n in cmap.nodes if n.kind == "other"}
    return InfluenceVector(values={nid: v for nid, v in values.items()
                                   if nid not in other_ids})


def _iterate(nodes, successors, damping: float) -> dict[str, float] | None:
    values = {nid: 0.0 for nid in nodes}
    values[SES_ID] = 1.0
    for _ in range(INFLUENCE_MAX_ITER):
        delta = 0.0
        new_values = dict(values)
        for nid in nodes:
            if nid == SES_ID:
                continue
            total = sum(share * values[succ] for succ, share in successors[nid])
            updated = damping * values[nid] + (1.0 - damping) * total
            delta = max(delta, abs(updated - values[nid]))
            new_values[nid] = updated
        values = new_values
        if delta < INFLUENCE_TOL:
            return values
    return None


def _cyclic_nodes(nodes, successors) -> list[str]:
    """Nodes on a directed cycle that does not pass through ses (ses is
    pinned, so cycles through it cannot feed back)."""
    remaining = set(nodes) - {SES_ID}
    trimmed = True
    while trimmed:
        trimmed = False
        for nid in sorted(remaining):
            if not any(succ in remaining for succ, _ in successors[nid]):
                remaining.discard(nid)
                trimmed = True
    return sorted(remaining)


def aggregate_influence(dataset: list[CausalMap]) -> tuple[tuple[str, float], ...]:
    """Mean transitive influence per canonical construct across a dataset,
    scaled to percent, treating absence as zero influence.  Constructs with
    indirect effects are counted through every path, so the column can sum
    beyond 100."""
    if not dataset:
        raise ValueError("dataset is empty")
    totals = {cid: 0.0 for cid in CANONICAL_IDS}
    for m in dataset:
        influence = transitive_influence(m)
        for cid in m.construct_ids():
            totals[cid] += influence.get(cid)
    n = len(dataset)
    rows = [(cid, 100.0 * totals[cid] / n) for cid in CANONICAL_IDS]
    rows.sort(key=lambda r: (-r[1], r[0]))
    return tuple(rows)


# ---------------------------------------------------------------------------
# Exports
# ---------------------------------------------------------------------------

def frequency_csv(rows, path: str | Path, value_header: str = "fraction") -> None:
    lines = [f"construct,{value_header}"]
    for key, value in rows:
        name = "->".join(key) if isinstance(key, tuple) else key
        lines.append(f"{name},{format(value, '.17g')}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def tables_text(dataset: list[CausalMap], top: int = 15) -> str:
    """Aligned-text report of the three popularity/influence tables."""
    sections = []
    freq = construct_frequency(dataset)[:top]
    sections.append(_aligned("Most popular constructs (excluding other)",
                             [(cid, f"{100 * v:.0f}") for cid, v in freq]))
    rel = relationship_frequency(dataset)[:top]
    sections.append(_aligned("Most popular relationships (excluding other)",
                             [(f"{a} -> {b}", f"{100 * v:.0f}") for (a, b), v in rel]))
    agg = aggregate_influence(dataset)[:top]
    sections.append(_aligned("Aggregated transitive construct influence",
                             [(cid, f"{v:.0f}") for cid, v in agg]))
    return "\n\n".join(sections) + "\n"


def _aligned(title: str, rows: list[tuple[str, str]]) -> str:
    width = max((len(name) for name, _ in rows), default=0)
    lines = [title, "-" * len(title)]
    lines += [f"{name.ljust(width)}  {value.rjust(4)}" for name, value in rows]
    return "\n".join(lines)
