"""Graphviz DOT rendering of a protocol's game tree."""

from __future__ import annotations

from typing import Iterable

from ..model import Edge, ExchangeProtocol
from ..semantics import terminal_payoffs
from .codec import render_number

ANNOTATIONS = frozenset({"payoffs", "faithfulness", "costs"})


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _edge_label(edge: Edge, costs: bool) -> str:
    if not costs:
        return edge.label
    a = edge.attributes
    parts = [edge.label]
    if a.share_to_A or a.share_to_B:
        parts.append(f"rho=({render_number(a.share_to_A)},{render_number(a.share_to_B)})")
    if a.cost:
        parts.append(f"cost={render_number(a.cost)}")
    if a.deposit:
        parts.append(f"deposit={render_number(a.deposit)}")
    if a.comp_to_A or a.comp_to_B:
        parts.append(f"comp=({render_number(a.comp_to_A)},{render_number(a.comp_to_B)})")
    return "\\n".join(parts)


def export_dot(protocol: ExchangeProtocol, annotate: Iterable[str] = ANNOTATIONS) -> str:
    """Directed graph text; leave moves dotted, unfaithful dashed, faithful solid."""
    annotate = set(annotate)
    unknown = annotate - ANNOTATIONS
    if unknown:
        raise ValueError(f"unknown annotations: {sorted(unknown)}")
    payoffs = terminal_payoffs(protocol) if "payoffs" in annotate else {}
    lines = ["digraph protocol {", "  rankdir=TB;", "  node [fontname=Helvetica];",
             "  edge [fontname=Helvetica];"]
    for vertex in protocol.walk():
        if protocol.outgoing(vertex.id):
            name = protocol.name_of(vertex.owner)
            label = f"{vertex.id}\\n{vertex.owner}: {name}"
            lines.append(f"  {_quote(vertex.id)} [label={_quote(label)}, shape=ellipse];")
        else:
            label = vertex.id
            if vertex.id in payoffs:
                p = payoffs[vertex.id]
                label += f"\\n({render_number(p.p_A)}, {render_number(p.p_B)})"
            lines.append(f"  {_quote(vertex.id)} [label={_quote(label)}, shape=box];")
    for vertex in protocol.walk():
        for e in protocol.outgoing(vertex.id):
            style = "solid"
            if "faithfulness" in annotate:
                style = "dotted" if e.leave else ("solid" if e.faithful else "dashed")
            label = _edge_label(e, "costs" in annotate)
            lines.append(f"  {_quote(e.source)} -> {_quote(e.target)} "
                         f"[label={_quote(label)}, style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
