"""Playing strategy pairs: realized paths, escrow ledger, payoffs, outcomes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .model import Edge, ExchangeProtocol, Strategy, Vertex, opponent


class StrategyError(ValueError):
    """A strategy does not say what to do at a vertex the play reaches."""


@dataclass(frozen=True)
class PlayOut:
    path: tuple[Edge, ...]
    moves_A: tuple[Edge, ...]
    moves_B: tuple[Edge, ...]
    terminal: Vertex

    def moves(self, role: str) -> tuple[Edge, ...]:
        return self.moves_A if role == "A" else self.moves_B


@dataclass(frozen=True)
class EscrowTrace:
    balances: tuple[Fraction, ...]
    first_violation: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.first_violation is None

    @property
    def closed_at_end(self) -> bool:
        """Terminal-only form of the closed-system condition."""
        return not self.balances or self.balances[-1] >= 0


@dataclass(frozen=True)
class PayoffPair:
    p_A: Fraction
    p_B: Fraction

    def of(self, role: str) -> Fraction:
        return self.p_A if role == "A" else self.p_B

    def __iter__(self):
        return iter((self.p_A, self.p_B))


@dataclass(frozen=True)
class Outcome:
    kind: str  # complete | void | unbalanced
    received_by_A: Fraction
    received_by_B: Fraction


def play(protocol: ExchangeProtocol, strategy_A: Strategy, strategy_B: Strategy) -> PlayOut:
    """Walk from the root, letting each vertex owner apply its choice."""
    by_role = {"A": strategy_A, "B": strategy_B}
    if strategy_A.player != "A" or strategy_B.player != "B":
        raise StrategyError("strategies must belong to players A and B, in that order")
    path = []
    vid = protocol.root
    while True:
        vertex = protocol.vertex(vid)
        edges = protocol.outgoing(vid)
        if not edges:
            break
        label = by_role[vertex.owner].choice(vid)
        if label is None:
            raise StrategyError(f"strategy of {vertex.owner} is undefined at reached vertex {vid!r}")
        edge = protocol.edge(vid, label)
        path.append(edge)
        vid = edge.target
    return playout_of_path(protocol, path)


def playout_of_path(protocol: ExchangeProtocol, path: Sequence[Edge]) -> PlayOut:
    path = tuple(path)
    terminal = protocol.vertex(path[-1].target if path else protocol.root)
    moves_A = tuple(e for e in path if protocol.owner(e.source) == "A")
    moves_B = tuple(e for e in path if protocol.owner(e.source) == "B")
    return PlayOut(path, moves_A, moves_B, terminal)


def path_payoff(protocol: ExchangeProtocol, playout: PlayOut) -> PayoffPair:
    received = {r: sum((e.attributes.share(r) for e in playout.path), Fraction(0)) for r in "AB"}
    result = {}
    for role in "AB":
        other = opponent(role)
        own_item = protocol.item_of(role).id
        their_item = protocol.item_of(other).id
        value = (protocol.valuation(role, their_item)(received[role])
                 - protocol.valuation(role, own_item)(received[other]))
        for e in playout.moves(role):
            a = e.attributes
            value += a.comp(role) - a.deposit - a.cost
        for e in playout.moves(other):
            value += e.attributes.comp(role)
        result[role] = value
    return PayoffPair(result["A"], result["B"])


def payoff(protocol: ExchangeProtocol, strategy_A: Strategy, strategy_B: Strategy) -> PayoffPair:
    return path_payoff(protocol, play(protocol, strategy_A, strategy_B))


def terminal_payoffs(protocol: ExchangeProtocol) -> dict[str, PayoffPair]:
    """Payoff labelling of every terminal vertex (via its unique root path)."""
    return {t.id: path_payoff(protocol, playout_of_path(protocol, protocol.path_to(t.id)))
            for t in protocol.terminals()}


def escrow_trace(protocol: ExchangeProtocol, path: Sequence[Edge]) -> EscrowTrace:
    balances = []
    balance = Fraction(0)
    violation = None
    for i, e in enumerate(path):
        balance += e.attributes.escrow_delta
        balances.append(balance)
        if balance < 0 and violation is None:
            violation = i
    return EscrowTrace(tuple(balances), violation)


def classify_outcome(protocol: ExchangeProtocol, path: Sequence[Edge]) -> Outcome:
    to_a = sum((e.attributes.share_to_A for e in path), Fraction(0))
    to_b = sum((e.attributes.share_to_B for e in path), Fraction(0))
    if to_a == 1 and to_b == 1:
        kind = "complete"
    elif to_a == 0 and to_b == 0:
        kind = "void"
    else:
        kind = "unbalanced"
    return Outcome(kind, to_a, to_b)
