"""The ``.xproto`` protocol description format (version 1).

A line-oriented UTF-8 document.  ``#`` starts a comment.  Header lines come
first, then sections::

    xproto 1
    currency Gas
    root v0

    [players]
    A seller
    B buyer

    [items]
    data A                      # item id, owning role
    payment B

    [valuations]
    A data linear 500000        # player role, item id, kind, value(s)
    B data table 1/2:100 1:300  # share:value breakpoints; (0, 0) is implied

    [vertices]
    v0 A                        # owner role, or "-" for a terminal
    t0 -

    [edges]
    v0 init -> v1 faithful cost=1050000
    v0 refuse -> t0 leave

Edge lines read ``<source> <label> -> <target> <faithful|unfaithful|leave>``
followed by optional ``key=value`` attributes out of ``share_to_A``,
``share_to_B``, ``cost``, ``deposit``, ``comp_to_A`` and ``comp_to_B``
(omitted means 0).  Numbers are integers, decimals, or ``num/den``.
Sibling edges keep their order of appearance.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..model import (ROLES, Edge, ExchangeProtocol, Item, MoveAttributes, ProtocolDraft, ProtocolError,
                     Valuation, Vertex, check_protocol, exact, validate_protocol)

FORMAT_VERSION = 1
SECTIONS = ("players", "items", "valuations", "vertices", "edges")
ATTRIBUTE_KEYS = ("share_to_A", "share_to_B", "cost", "deposit", "comp_to_A", "comp_to_B")

_TOKEN = re.compile(r"^[A-Za-z0-9_.\-]+$")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line else message)


def render_number(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _number(text: str, line: int, what: str) -> Fraction:
    try:
        return exact(text)
    except (TypeError, ValueError):
        raise ParseError(f"{what}: not an exact number {text!r}", line) from None


def _token(text: str, line: int, what: str) -> str:
    if not _TOKEN.match(text):
        raise ParseError(f"{what}: invalid identifier {text!r}", line)
    return text


@dataclass
class _Locations:
    vertices: dict
    edges: dict
    header: dict


def parse_protocol(text: str) -> ExchangeProtocol:
    """Parse and validate a document; errors name the offending line."""
    draft, where = _parse(text)
    report = check_protocol(draft)
    if not report.ok:
        issue = report.errors[0]
        line = _locate(issue.where, where)
        raise ParseError(str(issue), line) from ProtocolError(report)
    return validate_protocol(draft)


def _locate(where: str, loc: _Locations):
    kind, _, ident = where.partition(" ")
    if kind == "edge":
        return loc.edges.get(ident)
    if kind == "vertex":
        return loc.vertices.get(ident)
    return loc.header.get(kind)


def _parse(text: str):
    draft = ProtocolDraft(players={})
    draft.root = None
    loc = _Locations({}, {}, {})
    section = None
    seen_version = False
    item_ids = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]") or line[1:-1] not in SECTIONS:
                raise ParseError(f"unknown section {line}", lineno)
            section = line[1:-1]
            loc.header.setdefault(section, lineno)
            continue
        fields = line.split()
        if section is None:
            key = fields[0]
            if len(fields) != 2:
                raise ParseError(f"header line needs exactly one value: {line!r}", lineno)
            if key == "xproto":
                if fields[1] != str(FORMAT_VERSION):
                    raise ParseError(f"unsupported format version {fields[1]}", lineno)
                seen_version = True
            elif key == "currency":
                draft.currency_unit = _token(fields[1], lineno, "currency")
            elif key == "root":
                draft.root = _token(fields[1], lineno, "root")
                loc.header["root"] = lineno
            else:
                raise ParseError(f"unknown header field {key!r}", lineno)
        elif section == "players":
            if len(fields) != 2 or fields[0] not in ROLES:
                raise ParseError("player line is '<A|B> <name>'", lineno)
            if fields[0] in draft.players:
                raise ParseError(f"duplicate player {fields[0]}", lineno)
            draft.players[fields[0]] = _token(fields[1], lineno, "player name")
        elif section == "items":
            if len(fields) != 2 or fields[1] not in ROLES:
                raise ParseError("item line is '<id> <A|B>'", lineno)
            if fields[0] in item_ids:
                raise ParseError(f"duplicate item {fields[0]}", lineno)
            item_ids.add(_token(fields[0], lineno, "item"))
            draft.items.append(Item(fields[0], fields[1]))
        elif section == "valuations":
            draft.valuations.append(_valuation(fields, lineno))
        elif section == "vertices":
            if len(fields) != 2:
                raise ParseError("vertex line is '<id> <A|B|->'", lineno)
            vid = _token(fields[0], lineno, "vertex")
            if vid in loc.vertices:
                raise ParseError(f"duplicate vertex {vid}", lineno)
            owner = None if fields[1] == "-" else fields[1]
            if owner is not None and owner not in ROLES:
                raise ParseError(f"vertex {vid}: unknown owner {fields[1]!r}", lineno)
            loc.vertices[vid] = lineno
            draft.vertices.append(Vertex(vid, owner))
        elif section == "edges":
            edge = _edge(fields, lineno)
            if edge.source not in loc.vertices or edge.target not in loc.vertices:
                missing = edge.source if edge.source not in loc.vertices else edge.target
                raise ParseError(f"edge {edge.ref} references unknown vertex {missing!r}", lineno)
            if edge.ref in loc.edges:
                raise ParseError(f"duplicate edge {edge.ref}", lineno)
            loc.edges[edge.ref] = lineno
            draft.edges.append(edge)
    if not seen_version and (draft.vertices or draft.root):
        raise ParseError("missing 'xproto 1' header")
    if draft.root is None:
        raise ParseError("missing root")
    return draft, loc


def _valuation(fields, lineno) -> Valuation:
    if len(fields) < 4:
        raise ParseError("valuation line is '<A|B> <item> linear <value>' or '... table s:v ...'", lineno)
    player, item, kind, *rest = fields
    if player not in ROLES:
        raise ParseError(f"unknown player role {player!r}", lineno)
    try:
        if kind == "linear":
            if len(rest) != 1:
                raise ParseError("linear valuation takes one value", lineno)
            return Valuation.linear(player, item, _number(rest[0], lineno, "valuation"))
        if kind == "table":
            points = []
            for pair in rest:
                share, sep, value = pair.partition(":")
                if not sep:
                    raise ParseError(f"table breakpoint must be share:value, got {pair!r}", lineno)
                points.append((_number(share, lineno, "share"), _number(value, lineno, "value")))
            return Valuation.from_table(player, item, points)
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"valuation {player}/{item}: {exc}", lineno) from None
    raise ParseError(f"unknown valuation kind {kind!r}", lineno)


def _edge(fields, lineno) -> Edge:
    if len(fields) < 5 or fields[2] != "->":
        raise ParseError("edge line is '<source> <label> -> <target> <faithful|unfaithful|leave> [k=v ...]'",
                         lineno)
    source, label, _, target, flag, *attrs = fields
    for value, what in ((source, "source"), (label, "label"), (target, "target")):
        _token(value, lineno, what)
    if flag not in ("faithful", "unfaithful", "leave"):
        raise ParseError(f"edge {source}:{label}: expected faithful, unfaithful or leave, got {flag!r}", lineno)
    values = {}
    for pair in attrs:
        key, sep, value = pair.partition("=")
        if not sep or key not in ATTRIBUTE_KEYS:
            raise ParseError(f"edge {source}:{label}: unknown field {key!r}", lineno)
        if key in values:
            raise ParseError(f"edge {source}:{label}: {key} given twice", lineno)
        values[key] = _number(value, lineno, f"edge {source}:{label} {key}")
    try:
        attributes = MoveAttributes(**values)
    except ValueError as exc:
        raise ParseError(f"edge {source}:{label}: {exc}", lineno) from None
    return Edge(source, target, label, attributes, flag == "faithful", flag == "leave")


def serialize_protocol(protocol: ExchangeProtocol) -> str:
    """Canonical text: fixed section order, ids sorted, sibling moves in declaration order."""
    out = [f"xproto {FORMAT_VERSION}", f"currency {protocol.currency_unit}", f"root {protocol.root}", ""]
    out.append("[players]")
    out += [f"{p.role} {p.name}" for p in protocol.players]
    out += ["", "[items]"]
    out += [f"{i.id} {i.owner}" for i in sorted(protocol.items, key=lambda i: i.id)]
    out += ["", "[valuations]"]
    for v in sorted(protocol.valuations, key=lambda v: (v.player, v.item)):
        if v.kind == "linear":
            out.append(f"{v.player} {v.item} linear {render_number(v.full_value)}")
        else:
            points = " ".join(f"{render_number(s)}:{render_number(x)}" for s, x in v.table)
            out.append(f"{v.player} {v.item} table {points}")
    vertices = sorted(protocol.vertices, key=lambda v: v.id)
    out += ["", "[vertices]"]
    out += [f"{v.id} {v.owner or '-'}" for v in vertices]
    out += ["", "[edges]"]
    for v in vertices:
        for e in protocol.outgoing(v.id):
            flag = "leave" if e.leave else ("faithful" if e.faithful else "unfaithful")
            parts = [e.source, e.label, "->", e.target, flag]
            for key in ATTRIBUTE_KEYS:
                value = getattr(e.attributes, key)
                if value:
                    parts.append(f"{key}={render_number(value)}")
            out.append(" ".join(parts))
    return "\n".join(out) + "\n"


def load_protocol(path) -> ExchangeProtocol:
    with open(path, encoding="utf-8") as fh:
        return parse_protocol(fh.read())


def save_protocol(protocol: ExchangeProtocol, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_protocol(protocol))
