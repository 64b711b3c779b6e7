"""Attribute-annotated extensive games for two-party exchange protocols.

A protocol is a game tree whose moves carry financial attributes (item
shares released, transaction cost, deposit change, compensation payouts)
and a faithfulness label.  Everything monetary is an exact
:class:`fractions.Fraction`.

Protocols are assembled through a mutable :class:`ProtocolDraft` and turned
into an immutable :class:`ExchangeProtocol` by :func:`validate_protocol`.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Union

ROLES = ("A", "B")

Number = Union[int, str, Fraction, Decimal]


def opponent(role: str) -> str:
    if role == "A":
        return "B"
    if role == "B":
        return "A"
    raise ValueError(f"unknown player role {role!r}")


def exact(value: Number) -> Fraction:
    """Convert ``value`` to a Fraction without going through binary floats.

    Strings may be integers, decimals (``"0.25"``) or ``"num/den"``.
    Floats are refused.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Decimal)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip().replace("_", "")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact number: {value!r}") from exc
    if isinstance(value, float):
        raise TypeError(f"float {value!r} refused; pass a string or Fraction")
    raise TypeError(f"cannot interpret {value!r} as an exact number")


class ProtocolError(ValueError):
    """Raised when a protocol description violates a structural invariant."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__("; ".join(str(issue) for issue in report.errors))


@dataclass(frozen=True)
class Player:
    role: str
    name: str

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValueError(f"player role must be 'A' or 'B', got {self.role!r}")


@dataclass(frozen=True)
class Item:
    id: str
    owner: str


@dataclass(frozen=True)
class Valuation:
    """How much ``player`` values holding a share of ``item``.

    ``kind`` is ``"linear"`` (share times ``full_value``) or ``"table"``
    (piecewise-linear over ``table`` breakpoints, with an implicit ``(0, 0)``).
    """

    player: str
    item: str
    full_value: Fraction
    kind: str = "linear"
    table: tuple[tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "full_value", exact(self.full_value))
        points = tuple((exact(s), exact(v)) for s, v in self.table)
        object.__setattr__(self, "table", points)
        if self.kind == "linear":
            if points:
                raise ValueError("linear valuation takes no table")
            if self.full_value < 0:
                raise ValueError("valuation must be non-decreasing in share")
        elif self.kind == "table":
            if not points:
                raise ValueError("table valuation needs breakpoints")
            if points[0][0] == 0:
                if points[0][1] != 0:
                    raise ValueError("value at share 0 must be 0")
                points = points[1:]
                object.__setattr__(self, "table", points)
            previous = (Fraction(0), Fraction(0))
            for share, value in points:
                if not 0 < share <= 1 or share <= previous[0]:
                    raise ValueError("table shares must be strictly increasing within (0, 1]")
                if value < previous[1]:
                    raise ValueError("valuation must be non-decreasing in share")
                previous = (share, value)
            if points[-1][0] != 1:
                raise ValueError("table must include share 1")
            if self.full_value != points[-1][1]:
                raise ValueError("full_value must equal the table value at share 1")
        else:
            raise ValueError(f"unknown valuation kind {self.kind!r}")

    @classmethod
    def linear(cls, player: str, item: str, full_value: Number) -> "Valuation":
        return cls(player, item, exact(full_value))

    @classmethod
    def from_table(cls, player: str, item: str, points: Iterable[tuple[Number, Number]]) -> "Valuation":
        points = sorted((exact(s), exact(v)) for s, v in points)
        return cls(player, item, points[-1][1], "table", tuple(points))

    def __call__(self, share: Number) -> Fraction:
        return value_of(self, share)


def value_of(valuation: Valuation, share: Number) -> Fraction:
    share = exact(share)
    if not 0 <= share <= 1:
        raise ValueError(f"share {share} outside [0, 1]")
    if valuation.kind == "linear":
        return share * valuation.full_value
    points = ((Fraction(0), Fraction(0)),) + valuation.table
    shares = [s for s, _ in points]
    i = bisect_left(shares, share)
    if shares[i] == share:
        return points[i][1]
    (s0, v0), (s1, v1) = points[i - 1], points[i]
    return v0 + (v1 - v0) * (share - s0) / (s1 - s0)


@dataclass(frozen=True)
class MoveAttributes:
    """Financial and item effects of a single move.

    ``share_to_A`` is the portion of B's item released to A (and vice versa).
    ``cost`` is paid by the acting party, ``deposit`` is what the acting party
    puts into (positive) or takes out of (negative) escrow, and the
    compensations are paid out of escrow to each party.
    """

    share_to_A: Fraction = Fraction(0)
    share_to_B: Fraction = Fraction(0)
    cost: Fraction = Fraction(0)
    deposit: Fraction = Fraction(0)
    comp_to_A: Fraction = Fraction(0)
    comp_to_B: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("share_to_A", "share_to_B", "cost", "deposit", "comp_to_A", "comp_to_B"):
            object.__setattr__(self, name, exact(getattr(self, name)))
        for name in ("share_to_A", "share_to_B"):
            if not 0 <= getattr(self, name) <= 1:
                raise ValueError(f"{name} must lie in [0, 1]")
        for name in ("cost", "comp_to_A", "comp_to_B"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")

    def share(self, role: str) -> Fraction:
        return self.share_to_A if role == "A" else self.share_to_B

    def comp(self, role: str) -> Fraction:
        return self.comp_to_A if role == "A" else self.comp_to_B

    @property
    def escrow_delta(self) -> Fraction:
        return self.deposit - self.comp_to_A - self.comp_to_B

    def is_zero(self) -> bool:
        return self == ZERO_ATTRIBUTES

    def as_tuple(self) -> tuple:
        """The ``((rho_A, rho_B), cost, deposit, (comp_A, comp_B))`` form."""
        return ((self.share_to_A, self.share_to_B), self.cost, self.deposit,
                (self.comp_to_A, self.comp_to_B))


ZERO_ATTRIBUTES = MoveAttributes()


@dataclass(frozen=True)
class Vertex:
    id: str
    owner: Optional[str] = None

    @property
    def terminal(self) -> bool:
        return self.owner is None


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    label: str
    attributes: MoveAttributes = ZERO_ATTRIBUTES
    faithful: bool = True
    leave: bool = False

    @property
    def ref(self) -> str:
        return f"{self.source}:{self.label}"


@dataclass(frozen=True)
class Issue:
    where: str
    message: str

    def __str__(self):
        return f"{self.where}: {self.message}"


@dataclass
class ValidationReport:
    errors: list[Issue] = field(default_factory=list)
    warnings: list[Issue] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors


@dataclass
class ProtocolDraft:
    """Mutable description of a protocol, prior to validation."""

    players: dict[str, str] = field(default_factory=lambda: {"A": "A", "B": "B"})
    items: list[Item] = field(default_factory=list)
    valuations: list[Valuation] = field(default_factory=list)
    vertices: list[Vertex] = field(default_factory=list)
    edges: list[Edge] = field(default_factory=list)
    root: Optional[str] = None
    currency_unit: str = "unit"

    def item(self, item_id: str, owner: str) -> "ProtocolDraft":
        self.items.append(Item(item_id, owner))
        return self

    def value(self, player: str, item_id: str, full_value: Number = None, *, table=None) -> "ProtocolDraft":
        if table is not None:
            self.valuations.append(Valuation.from_table(player, item_id, table))
        else:
            self.valuations.append(Valuation.linear(player, item_id, full_value))
        return self

    def vertex(self, vertex_id: str, owner: Optional[str] = None) -> "ProtocolDraft":
        self.vertices.append(Vertex(vertex_id, owner))
        if self.root is None:
            self.root = vertex_id
        return self

    def move(self, source: str, target: str, label: str, *, faithful: bool = True,
             share_to_A: Number = 0, share_to_B: Number = 0, cost: Number = 0,
             deposit: Number = 0, comp_to_A: Number = 0, comp_to_B: Number = 0) -> "ProtocolDraft":
        attributes = MoveAttributes(share_to_A, share_to_B, cost, deposit, comp_to_A, comp_to_B)
        self.edges.append(Edge(source, target, label, attributes, faithful))
        return self

    def leave(self, source: str, target: str, label: str = "leave") -> "ProtocolDraft":
        self.edges.append(Edge(source, target, label, ZERO_ATTRIBUTES, False, True))
        return self


@dataclass(frozen=True, eq=False)
class ExchangeProtocol:
    """A validated exchange protocol.  Build through :func:`validate_protocol`."""

    players: tuple[Player, Player]
    items: tuple[Item, Item]
    valuations: tuple[Valuation, ...]
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    root: str
    currency_unit: str = "unit"
    warnings: tuple[Issue, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "_vertex", {v.id: v for v in self.vertices})
        children: dict[str, list[Edge]] = {v.id: [] for v in self.vertices}
        incoming: dict[str, Edge] = {}
        for e in self.edges:
            children[e.source].append(e)
            incoming[e.target] = e
        object.__setattr__(self, "_children", {k: tuple(v) for k, v in children.items()})
        object.__setattr__(self, "_incoming", incoming)
        object.__setattr__(self, "_values", {(v.player, v.item): v for v in self.valuations})

    # vertex order is irrelevant; sibling move order is not; warnings are ignored
    def _key(self):
        vertices = tuple(sorted(self.vertices, key=lambda v: v.id))
        edges = tuple(e for v in vertices for e in self._children[v.id])
        return (self.players, self.items, tuple(sorted(self.valuations, key=lambda v: (v.player, v.item))),
                vertices, edges, self.root, self.currency_unit)

    def __eq__(self, other):
        if not isinstance(other, ExchangeProtocol):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def player(self, key: str) -> Player:
        """Look up a player by role (``"A"``/``"B"``) or by name."""
        for p in self.players:
            if key == p.role:
                return p
        for p in self.players:
            if key == p.name:
                return p
        raise KeyError(f"unknown player {key!r}")

    def role(self, key: str) -> str:
        return self.player(key).role

    def name_of(self, role: str) -> str:
        return self.player(role).name

    def item_of(self, role: str) -> Item:
        return next(i for i in self.items if i.owner == role)

    def valuation(self, player: str, item_id: str) -> Valuation:
        return self._values[(player, item_id)]

    def vertex(self, vertex_id: str) -> Vertex:
        try:
            return self._vertex[vertex_id]
        except KeyError:
            raise KeyError(f"unknown vertex {vertex_id!r}") from None

    def owner(self, vertex_id: str) -> Optional[str]:
        return self.vertex(vertex_id).owner

    def is_terminal(self, vertex_id: str) -> bool:
        return not self._children[self.vertex(vertex_id).id]

    def outgoing(self, vertex_id: str) -> tuple[Edge, ...]:
        self.vertex(vertex_id)
        return self._children[vertex_id]

    def edge(self, vertex_id: str, label: str) -> Edge:
        for e in self.outgoing(vertex_id):
            if e.label == label:
                return e
        raise KeyError(f"vertex {vertex_id!r} has no move labelled {label!r}")

    def parent_edge(self, vertex_id: str) -> Optional[Edge]:
        return self._incoming.get(vertex_id)

    def path_to(self, vertex_id: str) -> tuple[Edge, ...]:
        """Root-to-``vertex_id`` sequence of edges."""
        path = []
        edge = self._incoming.get(self.vertex(vertex_id).id)
        while edge is not None:
            path.append(edge)
            edge = self._incoming.get(edge.source)
        return tuple(reversed(path))

    def walk(self) -> Iterator[Vertex]:
        """Depth-first pre-order traversal following declaration order."""
        stack = [self.root]
        while stack:
            vid = stack.pop()
            yield self._vertex[vid]
            stack.extend(e.target for e in reversed(self._children[vid]))

    def terminals(self) -> list[Vertex]:
        return [v for v in self.walk() if not self._children[v.id]]

    def owned_by(self, role: str) -> list[Vertex]:
        return [v for v in self.walk() if v.owner == role]

    def to_draft(self) -> ProtocolDraft:
        return ProtocolDraft(
            players={p.role: p.name for p in self.players},
            items=list(self.items),
            valuations=list(self.valuations),
            vertices=list(self.vertices),
            edges=list(self.edges),
            root=self.root,
            currency_unit=self.currency_unit,
        )

    def with_attributes(self, vertex_id: str, label: str, **changes) -> "ExchangeProtocol":
        """Copy of the protocol with some attributes of one move replaced."""
        draft = self.to_draft()
        for i, e in enumerate(draft.edges):
            if e.source == vertex_id and e.label == label:
                fields = dict(zip(
                    ("share_to_A", "share_to_B", "cost", "deposit", "comp_to_A", "comp_to_B"),
                    (e.attributes.share_to_A, e.attributes.share_to_B, e.attributes.cost,
                     e.attributes.deposit, e.attributes.comp_to_A, e.attributes.comp_to_B)))
                fields.update(changes)
                draft.edges[i] = Edge(e.source, e.target, e.label, MoveAttributes(**fields),
                                      e.faithful, e.leave)
                return validate_protocol(draft)
        raise KeyError(f"vertex {vertex_id!r} has no move labelled {label!r}")


def outgoing_edges(protocol: ExchangeProtocol, vertex_id: str) -> tuple[Edge, ...]:
    return protocol.outgoing(vertex_id)


def check_protocol(draft: ProtocolDraft) -> ValidationReport:
    """Collect every invariant violation of ``draft`` without raising."""
    report = ValidationReport()
    err = report.errors.append

    roles = set(draft.players)
    if roles != set(ROLES):
        err(Issue("players", "exactly two players with roles A and B are required"))
    elif draft.players["A"] == draft.players["B"]:
        err(Issue("players", "player names must differ"))

    item_ids = [i.id for i in draft.items]
    if len(draft.items) != 2 or sorted(i.owner for i in draft.items) != ["A", "B"]:
        err(Issue("items", "exactly two items, one owned by each player, are required"))
    if len(set(item_ids)) != len(item_ids):
        err(Issue("items", "duplicate item id"))
    seen_vals = set()
    for v in draft.valuations:
        key = (v.player, v.item)
        if key in seen_vals:
            err(Issue(f"valuation {v.player}/{v.item}", "duplicate valuation"))
        seen_vals.add(key)
        if v.player not in ROLES or v.item not in item_ids:
            err(Issue(f"valuation {v.player}/{v.item}", "refers to unknown player or item"))
    for role in ROLES:
        for item in item_ids:
            if (role, item) not in seen_vals:
                err(Issue(f"valuation {role}/{item}", "missing valuation"))

    vertex_ids = [v.id for v in draft.vertices]
    vertices = {}
    for v in draft.vertices:
        if v.id in vertices:
            err(Issue(f"vertex {v.id}", "duplicate vertex id"))
        vertices[v.id] = v
        if v.owner is not None and v.owner not in ROLES:
            err(Issue(f"vertex {v.id}", f"unknown owner {v.owner!r}"))
    if draft.root is None:
        err(Issue("root", "missing root"))
        return report
    if draft.root not in vertices:
        err(Issue("root", f"root {draft.root!r} is not a declared vertex"))
        return report

    children: dict[str, list[Edge]] = {vid: [] for vid in vertex_ids}
    incoming: dict[str, Edge] = {}
    for e in draft.edges:
        where = f"edge {e.ref}"
        if e.source not in vertices or e.target not in vertices:
            missing = e.source if e.source not in vertices else e.target
            err(Issue(where, f"references unknown vertex {missing!r}"))
            continue
        if any(s.label == e.label for s in children[e.source]):
            err(Issue(where, "duplicate move label at this vertex"))
        children[e.source].append(e)
        if e.target == draft.root:
            err(Issue(where, "root cannot have an incoming move"))
        elif e.target in incoming:
            err(Issue(where, f"vertex {e.target!r} has more than one incoming move"))
        else:
            incoming[e.target] = e
        if e.leave and (not e.attributes.is_zero() or e.faithful):
            err(Issue(where, "leave move must have all-zero attributes and be unfaithful"))
    if report.errors:
        return report

    for vid, v in vertices.items():
        if children[vid] and v.owner is None:
            err(Issue(f"vertex {vid}", "non-terminal vertex has no owner"))
        if not children[vid] and v.owner is not None:
            err(Issue(f"vertex {vid}", "terminal vertex must not have an owner"))
        if v.owner is not None and children[vid] and not any(e.faithful for e in children[vid]):
            report.warnings.append(Issue(
                f"vertex {vid}", f"owner {v.owner} has no faithful move here; every faithful strategy is trapped"))

    # walk the tree carrying per-path running sums
    reached = set()
    flagged = set()
    stack = [(draft.root, Fraction(0), Fraction(0), Fraction(0))]
    while stack:
        vid, to_a, to_b, balance = stack.pop()
        if vid in reached:
            err(Issue(f"vertex {vid}", "cycle detected"))
            return report
        reached.add(vid)
        for e in children[vid]:
            a = e.attributes
            na, nb, nbal = to_a + a.share_to_A, to_b + a.share_to_B, balance + a.escrow_delta
            if e.ref not in flagged:
                if na > 1:
                    err(Issue(f"edge {e.ref}", f"share of B's item released to A exceeds 1 on this path ({na})"))
                    flagged.add(e.ref)
                if nb > 1:
                    err(Issue(f"edge {e.ref}", f"share of A's item released to B exceeds 1 on this path ({nb})"))
                    flagged.add(e.ref)
                if nbal < 0:
                    err(Issue(f"edge {e.ref}", f"escrow prefix negative at edge {e.label} (balance {nbal})"))
                    flagged.add(e.ref)
            stack.append((e.target, na, nb, nbal))
    unreachable = [vid for vid in vertex_ids if vid not in reached]
    if unreachable:
        err(Issue("tree", f"vertices not reachable from root: {', '.join(unreachable)}"))
    return report


def validate_protocol(draft: ProtocolDraft) -> ExchangeProtocol:
    """Validate ``draft`` and freeze it, or raise :class:`ProtocolError`."""
    report = check_protocol(draft)
    if not report.ok:
        raise ProtocolError(report)
    players = (Player("A", draft.players["A"]), Player("B", draft.players["B"]))
    items = tuple(sorted(draft.items, key=lambda i: i.owner))
    return ExchangeProtocol(
        players=players,
        items=items,
        valuations=tuple(draft.valuations),
        vertices=tuple(draft.vertices),
        edges=tuple(draft.edges),
        root=draft.root,
        currency_unit=draft.currency_unit,
        warnings=tuple(report.warnings),
    )


@dataclass(frozen=True)
class Strategy:
    """Pure strategy of one player: owned vertex id -> chosen move label.

    ``reduced`` strategies only cover the owned vertices still reachable
    given the player's own earlier choices.
    """

    player: str
    choices: tuple[tuple[str, str], ...] = ()
    reduced: bool = True

    def __post_init__(self):
        object.__setattr__(self, "choices", tuple(self.choices))
        object.__setattr__(self, "_lookup", dict(self.choices))

    @classmethod
    def of(cls, player: str, mapping: Mapping[str, str] = None, reduced: bool = True, **kw) -> "Strategy":
        mapping = dict(mapping or {}, **kw)
        return cls(player, tuple(mapping.items()), reduced)

    def choice(self, vertex_id: str) -> Optional[str]:
        return self._lookup.get(vertex_id)

    def as_dict(self) -> dict[str, str]:
        return dict(self._lookup)

    def __len__(self):
        return len(self.choices)

    def render(self) -> str:
        return ",".join(f"{v}={label}" for v, label in self.choices)


def strategy_problems(protocol: ExchangeProtocol, strategy: Strategy) -> list[str]:
    """Reasons ``strategy`` is malformed for ``protocol`` (empty if fine)."""
    problems = []
    for vid, label in strategy.choices:
        try:
            vertex = protocol.vertex(vid)
        except KeyError:
            problems.append(f"unknown vertex {vid!r}")
            continue
        if vertex.owner != strategy.player:
            problems.append(f"vertex {vid!r} is not owned by {strategy.player}")
        elif label not in {e.label for e in protocol.outgoing(vid)}:
            problems.append(f"vertex {vid!r} has no move {label!r}")
    if problems:
        return problems
    owned = {v.id for v in protocol.owned_by(strategy.player)}
    domain = set(strategy.as_dict())
    if strategy.reduced:
        expected = set()
        stack = [protocol.root]
        while stack:
            vid = stack.pop()
            vertex = protocol.vertex(vid)
            if vertex.owner == strategy.player:
                expected.add(vid)
                label = strategy.choice(vid)
                if label is None:
                    continue
                stack.append(protocol.edge(vid, label).target)
            else:
                stack.extend(e.target for e in protocol.outgoing(vid))
        if domain != expected:
            problems.append("reduced strategy domain differs from own-reachable vertices")
    elif domain != owned:
        problems.append("complete strategy must choose at every owned vertex")
    return problems
