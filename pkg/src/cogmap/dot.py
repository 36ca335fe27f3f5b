"""Graphviz DOT rendering for causal maps and consensus graphs."""

from __future__ import annotations

from .belief import ConsensusGraph
from .maps import CausalMap
from .vocabulary import SES_ID, label_for


def _quote(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def _node_line(node_id: str, kind: str) -> str:
    attrs = {"label": label_for(node_id)}
    if kind == "ses":
        attrs.update(shape="box", style="filled", fillcolor="gold")
    elif kind == "other":
        attrs.update(shape="ellipse", style="dashed", label="other")
    elif kind == "custom":
        attrs.update(shape="box", style="rounded")
    else:
        attrs["shape"] = "box"
    body = ", ".join(f"{k}={_quote(v)}" for k, v in attrs.items())
    return f"  {_quote(node_id)} [{body}];"


def map_to_dot(cmap: CausalMap) -> str:
    lines = [f"digraph {_quote(cmap.respondent_id)} {{", "  rankdir=LR;"]
    for n in cmap.nodes:
        lines.append(_node_line(n.id, n.kind))
    for e in cmap.edges:
        if e.sign is None:
            label = f"{e.magnitude}?"
        else:
            label = f"{e.sign * e.magnitude:+d}"
        lines.append(f"  {_quote(e.from_id)} -> {_quote(e.to_id)} [label={_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def consensus_to_dot(graph: ConsensusGraph, name: str = "consensus") -> str:
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;"]
    for node_id in graph.nodes:
        kind = "ses" if node_id == SES_ID else "construct"
        lines.append(_node_line(node_id, kind))
    for e in graph.edges:
        mean = f"{e.mean_weight:+.2f}" if e.mean_weight is not None else "-"
        label = f"{e.score:.3f} / {mean}"
        lines.append(f"  {_quote(e.source)} -> {_quote(e.target)} [label={_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
