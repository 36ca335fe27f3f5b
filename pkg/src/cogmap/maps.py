"""Causal map data model: nodes, signed weighted edges, parsing, validation
and adjacency-matrix projection.

A causal map is one respondent's weighted digraph over constructs.  It always
contains exactly one ``ses`` node (the top-level dependent variable), every
construct must reach ``ses`` through directed arrows, and unlabeled ``other``
pseudo-antecedents capture unlisted influences with magnitude but no sign.

File format (one map per file, JSON):

    {
      "format_version": "1.0",
      "respondent_id": "r042",
      "nodes": [{"id": ..., "kind": ..., "attached_to": ..., "label": ...}],
      "edges": [{"from": ..., "to": ..., "magnitude": 1..3, "sign": 1|-1|null}]
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import MapFormatError, MapValidationError
from .vocabulary import CANONICAL_ID_SET, CUSTOM_PREFIX, SES_ID, is_custom_id

FORMAT_VERSION = "1.0"

NODE_KINDS = ("construct", "custom", "ses", "other")
OTHER_PREFIX = "other:"


@dataclass(frozen=True, order=True)
class Node:
    id: str
    kind: str
    attached_to: str | None = None  # present iff kind == "other"


@dataclass(frozen=True, order=True)
class Edge:
    from_id: str
    to_id: str
    magnitude: int  # 1..3; absence of an edge encodes zero
    sign: int | None  # +1, -1, or None (unknown; only on edges out of `other`)

    @property
    def signed_weight(self) -> int | None:
        """sign * magnitude, or None when the sign is unknown."""
        if self.sign is None:
            return None
        return self.sign * self.magnitude


@dataclass(frozen=True)
class CausalMap:
    respondent_id: str
    nodes: tuple[Node, ...]
    edges: tuple[Edge, ...]

    @staticmethod
    def create(respondent_id: str, nodes, edges) -> "CausalMap":
        """Build a map with nodes/edges in canonical sorted order."""
        return CausalMap(
            respondent_id=respondent_id,
            nodes=tuple(sorted(nodes, key=lambda n: n.id)),
            edges=tuple(sorted(edges, key=lambda e: (e.from_id, e.to_id))),
        )

    def node_ids(self) -> tuple[str, ...]:
        return tuple(n.id for n in self.nodes)

    def node(self, node_id: str) -> Node:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise KeyError(node_id)

    def comparable_ids(self) -> frozenset[str]:
        """Construct, custom and ses ids; `other` pseudo-nodes excluded."""
        return frozenset(n.id for n in self.nodes if n.kind != "other")

    def construct_ids(self) -> frozenset[str]:
        """Canonical construct ids present in the map."""
        return frozenset(n.id for n in self.nodes if n.kind == "construct")

    def edge(self, from_id: str, to_id: str) -> Edge | None:
        for e in self.edges:
            if e.from_id == from_id and e.to_id == to_id:
                return e
        return None


@dataclass(frozen=True)
class SignedMatrix:
    """Square adjacency projection; entry (i, j) is sign*magnitude of the
    edge order[i] -> order[j], or 0 when absent."""

    order: tuple[str, ...]
    entries: np.ndarray  # int array, shape (len(order), len(order))


@dataclass
class ValidationReport:
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors


def build_map(respondent_id: str, weights: dict, other: dict | None = None) -> CausalMap:
    """Convenience constructor from signed weights.

    ``weights`` maps (from_id, to_id) -> signed weight in {-3..-1, 1..3};
    ``other`` maps target_id -> magnitude for auto-generated other cards.
    Node kinds are inferred from the ids.
    """
    node_ids: set[str] = set()
    for (a, b) in weights:
        node_ids.add(a)
        node_ids.add(b)
    node_ids.add(SES_ID)
    nodes = [Node(nid, _infer_kind(nid)) for nid in node_ids]
    edges = []
    for (a, b), w in weights.items():
        w = int(w)
        if w == 0 or abs(w) > 3:
            raise ValueError(f"signed weight must be in ±{{1,2,3}}, got {w} for {a}->{b}")
        edges.append(Edge(a, b, abs(w), 1 if w > 0 else -1))
    for target, magnitude in (other or {}).items():
        oid = OTHER_PREFIX + target
        nodes.append(Node(oid, "other", attached_to=target))
        edges.append(Edge(oid, target, int(magnitude), None))
    return CausalMap.create(respondent_id, nodes, edges)


def _infer_kind(node_id: str) -> str:
    if node_id == SES_ID:
        return "ses"
    if is_custom_id(node_id):
        return "custom"
    return "construct"


# ---------------------------------------------------------------------------
# Parsing and serialization
# ---------------------------------------------------------------------------

def parse_map(document: str) -> CausalMap:
    """Parse a canonical map document and raise unless all invariants hold."""
    try:
        raw = json.loads(document)
    except json.JSONDecodeError as exc:
        raise MapFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise MapFormatError("document root must be an object")
    version = raw.get("format_version")
    if version != FORMAT_VERSION:
        raise MapFormatError(f"unsupported format_version {version!r}")
    respondent_id = raw.get("respondent_id")
    if not isinstance(respondent_id, str) or not respondent_id:
        raise MapFormatError("respondent_id must be a non-empty string")

    nodes = []
    seen_ids: set[str] = set()
    for item in _expect_list(raw, "nodes"):
        node = _parse_node(item)
        if node.id in seen_ids:
            raise MapFormatError(f"duplicate node id {node.id!r}")
        seen_ids.add(node.id)
        nodes.append(node)

    edges = []
    seen_pairs: set[tuple[str, str]] = set()
    other_ids = {n.id for n in nodes if n.kind == "other"}
    for item in _expect_list(raw, "edges"):
        edge = _parse_edge(item, other_ids)
        pair = (edge.from_id, edge.to_id)
        if pair in seen_pairs:
            raise MapFormatError(f"duplicate edge {pair[0]} -> {pair[1]}")
        seen_pairs.add(pair)
        edges.append(edge)

    cmap = CausalMap.create(respondent_id, nodes, edges)
    report = validate(cmap)
    if not report.ok:
        raise MapValidationError(report.errors, report.warnings)
    return cmap


def _expect_list(raw: dict, key: str) -> list:
    value = raw.get(key)
    if not isinstance(value, list):
        raise MapFormatError(f"{key!r} must be an array")
    return value


def _parse_node(item) -> Node:
    if not isinstance(item, dict):
        raise MapFormatError("node entries must be objects")
    node_id = item.get("id")
    kind = item.get("kind")
    if not isinstance(node_id, str) or not node_id:
        raise MapFormatError("node id must be a non-empty string")
    if kind not in NODE_KINDS:
        raise MapFormatError(f"node {node_id!r} has unknown kind {kind!r}")
    attached_to = item.get("attached_to")
    if kind == "other":
        if not isinstance(attached_to, str) or not attached_to:
            raise MapFormatError(f"other node {node_id!r} requires attached_to")
    elif attached_to is not None:
        raise MapFormatError(f"attached_to is only allowed on other nodes, found on {node_id!r}")
    if kind == "construct" and node_id not in CANONICAL_ID_SET:
        raise MapFormatError(f"unknown canonical construct id {node_id!r}")
    if kind == "custom" and not is_custom_id(node_id):
        raise MapFormatError(f"custom node id {node_id!r} must carry the {CUSTOM_PREFIX!r} prefix")
    if kind == "ses" and node_id != SES_ID:
        raise MapFormatError(f"ses node must have id {SES_ID!r}, got {node_id!r}")
    if kind != "ses" and node_id == SES_ID:
        raise MapFormatError(f"id {SES_ID!r} is reserved for the ses node")
    return Node(node_id, kind, attached_to if kind == "other" else None)


def _parse_edge(item, other_ids: set[str]) -> Edge:
    if not isinstance(item, dict):
        raise MapFormatError("edge entries must be objects")
    from_id = item.get("from")
    to_id = item.get("to")
    if not isinstance(from_id, str) or not isinstance(to_id, str):
        raise MapFormatError("edge endpoints must be strings")
    magnitude = item.get("magnitude")
    if not isinstance(magnitude, int) or isinstance(magnitude, bool) or magnitude not in (1, 2, 3):
        raise MapFormatError(
            f"edge {from_id} -> {to_id} magnitude must be 1, 2 or 3, got {magnitude!r}")
    sign = item.get("sign")
    if sign not in (1, -1, None):
        raise MapFormatError(f"edge {from_id} -> {to_id} sign must be 1, -1 or null, got {sign!r}")
    if sign is None and from_id not in other_ids:
        raise MapFormatError(f"edge {from_id} -> {to_id} lacks a sign on a non-other edge")
    return Edge(from_id, to_id, magnitude, sign)


def serialize_map(cmap: CausalMap) -> str:
    """Inverse of parse_map; emits deterministic, sorted JSON."""
    payload = {
        "format_version": FORMAT_VERSION,
        "respondent_id": cmap.respondent_id,
        "nodes": [
            {"id": n.id, "kind": n.kind}
            | ({"attached_to": n.attached_to} if n.kind == "other" else {})
            for n in cmap.nodes
        ],
        "edges": [
            {"from": e.from_id, "to": e.to_id, "magnitude": e.magnitude, "sign": e.sign}
            for e in cmap.edges
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def load_map(path: str | Path) -> CausalMap:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MapFormatError(f"cannot read {path}: {exc}") from exc
    return parse_map(text)


def save_map(cmap: CausalMap, path: str | Path) -> None:
    Path(path).write_text(serialize_map(cmap), encoding="utf-8")


def load_dataset(directory: str | Path) -> list[CausalMap]:
    """Load every ``*.json`` map in a directory, sorted by filename."""
    directory = Path(directory)
    paths = sorted(directory.glob("*.json"))
    maps = [load_map(p) for p in paths]
    seen: dict[str, int] = {}
    for m in maps:
        seen[m.respondent_id] = seen.get(m.respondent_id, 0) + 1
    dupes = sorted(rid for rid, count in seen.items() if count > 1)
    if dupes:
        raise MapFormatError(f"duplicate respondent ids in dataset: {', '.join(dupes)}")
    return maps


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def validate(cmap: CausalMap) -> ValidationReport:
    """Check every model invariant; invariant violations are errors, a
    missing other card on a node with antecedents is only a warning (its
    absence legitimately encodes "no other significant antecedents")."""
    report = ValidationReport()
    err = report.errors.append

    ids = [n.id for n in cmap.nodes]
    if len(ids) != len(set(ids)):
        err("duplicate node ids")
    by_id = {n.id: n for n in cmap.nodes}

    ses_nodes = [n for n in cmap.nodes if n.kind == "ses"]
    if len(ses_nodes) != 1:
        err(f"expected exactly one ses node, found {len(ses_nodes)}")
    for n in cmap.nodes:
        if n.kind not in NODE_KINDS:
            err(f"node {n.id}: unknown kind {n.kind!r}")
        if n.kind == "construct" and n.id not in CANONICAL_ID_SET:
            err(f"node {n.id}: not a canonical construct id")
        if n.kind == "custom" and not is_custom_id(n.id):
            err(f"node {n.id}: custom ids must carry the {CUSTOM_PREFIX!r} prefix")
        if n.kind == "ses" and n.id != SES_ID:
            err(f"node {n.id}: ses node must have id {SES_ID!r}")
        if (n.attached_to is not None) != (n.kind == "other"):
            err(f"node {n.id}: attached_to present iff kind is other")
        if n.kind == "other" and n.attached_to is not None and n.attached_to not in by_id:
            err(f"other node {n.id}: attached_to {n.attached_to!r} is not in the map")

    constructs = [n for n in cmap.nodes if n.kind in ("construct", "custom")]
    if not constructs:
        err("map contains no constructs")

    pairs: set[tuple[str, str]] = set()
    incoming: dict[str, list[Edge]] = {n.id: [] for n in cmap.nodes}
    outgoing: dict[str, list[Edge]] = {n.id: [] for n in cmap.nodes}
    for e in cmap.edges:
        if e.from_id not in by_id or e.to_id not in by_id:
            err(f"edge {e.from_id} -> {e.to_id}: endpoint not in the map")
            continue
        if e.from_id == e.to_id:
            err(f"edge {e.from_id} -> {e.to_id}: self-loops are forbidden")
        if (e.from_id, e.to_id) in pairs:
            err(f"edge {e.from_id} -> {e.to_id}: duplicate ordered pair")
        pairs.add((e.from_id, e.to_id))
        if e.magnitude not in (1, 2, 3):
            err(f"edge {e.from_id} -> {e.to_id}: magnitude {e.magnitude} outside {{1,2,3}}")
        from_other = by_id[e.from_id].kind == "other"
        if from_other and e.sign is not None:
            err(f"edge {e.from_id} -> {e.to_id}: edges out of other nodes carry no sign")
        if not from_other and e.sign not in (1, -1):
            err(f"edge {e.from_id} -> {e.to_id}: sign must be +1 or -1")
        incoming[e.to_id].append(e)
        outgoing[e.from_id].append(e)

    for n in cmap.nodes:
        if n.kind != "other":
            continue
        outs = outgoing.get(n.id, [])
        if len(outs) != 1 or (outs and outs[0].to_id != n.attached_to):
            err(f"other node {n.id}: must have exactly one outgoing edge to {n.attached_to}")
        if incoming.get(n.id):
            err(f"other node {n.id}: must have no incoming edges")

    # Reachability: every construct/custom node reaches ses through arrows.
    if ses_nodes:
        reaches = _reaching_set(cmap, SES_ID)
        for n in sorted(constructs, key=lambda n: n.id):
            if n.id not in reaches:
                err(f"node {n.id}: no directed path to {SES_ID}")

    # Missing other card: legitimate, but worth surfacing.
    othered = {n.attached_to for n in cmap.nodes if n.kind == "other"}
    for n in sorted(cmap.nodes, key=lambda n: n.id):
        if n.kind == "other":
            continue
        real_in = [e for e in incoming.get(n.id, []) if by_id.get(e.from_id) and by_id[e.from_id].kind != "other"]
        if real_in and n.id not in othered:
            report.warnings.append(
                f"node {n.id} has antecedents but no other card (read as: no other significant antecedents)")
    return report


def _reaching_set(cmap: CausalMap, target: str) -> set[str]:
    """All node ids with a directed path to ``target`` (target included)."""
    preds: dict[str, set[str]] = {}
    for e in cmap.edges:
        preds.setdefault(e.to_id, set()).add(e.from_id)
    reached = {target}
    frontier = [target]
    while frontier:
        current = frontier.pop()
        for p in preds.get(current, ()):
            if p not in reached:
                reached.add(p)
                frontier.append(p)
    return reached


# ---------------------------------------------------------------------------
# Adjacency projection
# ---------------------------------------------------------------------------

def adjacency(cmap: CausalMap, order: list[str] | tuple[str, ...],
              include_other: bool = False) -> SignedMatrix:
    """Project the map onto a signed adjacency matrix over ``order``.

    Nodes absent from the map yield all-zero rows and columns.  With
    include_other=False (the default) edges touching other pseudo-nodes are
    omitted.  Unknown-sign other edges are encoded with positive sign; only
    their magnitude is meaningful downstream.
    """
    order = tuple(order)
    if len(set(order)) != len(order):
        raise ValueError("duplicate ids in adjacency order")
    index = {nid: i for i, nid in enumerate(order)}
    other_ids = {n.id for n in cmap.nodes if n.kind == "other"}
    entries = np.zeros((len(order), len(order)), dtype=np.int64)
    for e in cmap.edges:
        if not include_other and (e.from_id in other_ids or e.to_id in other_ids):
            continue
        i = index.get(e.from_id)
        j = index.get(e.to_id)
        if i is None or j is None:
            continue
        sign = e.sign if e.sign is not None else 1
        entries[i, j] = sign * e.magnitude
    return SignedMatrix(order=order, entries=entries)
