"""Strategy enumeration, faithfulness, and environment predicates."""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from typing import Iterator, Optional

from .model import ExchangeProtocol, Strategy, opponent, strategy_problems
from .semantics import play

DEFAULT_CAP = 10**6
CAP_ENV = "COSTFAIR_ENUM_CAP"

KINDS = ("all", "faithful", "unfaithful")


class EnumerationOverflow(RuntimeError):
    def __init__(self, player: str, size: int, cap: int):
        self.player, self.size, self.cap = player, size, cap
        super().__init__(f"{size} strategies for player {player} exceed the enumeration cap {cap}"
                         f" (raise it with {CAP_ENV})")


def enumeration_cap(cap: Optional[int] = None) -> int:
    if cap is not None:
        return cap
    return int(os.environ.get(CAP_ENV, DEFAULT_CAP))


@dataclass(frozen=True)
class StrategySet:
    player: str
    strategies: tuple[Strategy, ...]
    kind: str = "all"

    def __len__(self):
        return len(self.strategies)

    def __iter__(self):
        return iter(self.strategies)


@dataclass(frozen=True)
class EnvironmentReport:
    nonnegligible_cost: bool
    can_leave_any_time_A: bool
    can_leave_any_time_B: bool
    initializer: Optional[str]

    def can_leave(self, role: str) -> bool:
        return self.can_leave_any_time_A if role == "A" else self.can_leave_any_time_B


def count_strategies(protocol: ExchangeProtocol, player: str, faithful_only: bool = False,
                     reduced: bool = True) -> int:
    def usable(vid):
        return [e for e in protocol.outgoing(vid) if e.faithful or not faithful_only]

    if not reduced:
        return math.prod(len(usable(v.id)) for v in protocol.owned_by(player))

    def count(vid: str) -> int:
        edges = protocol.outgoing(vid)
        if not edges:
            return 1
        if protocol.owner(vid) == player:
            return sum(count(e.target) for e in usable(vid))
        return math.prod(count(e.target) for e in edges)

    return count(protocol.root)


def _reduced_choices(protocol: ExchangeProtocol, vid: str, player: str,
                     faithful_only: bool) -> Iterator[tuple]:
    edges = protocol.outgoing(vid)
    if not edges:
        yield ()
    elif protocol.owner(vid) == player:
        for e in edges:
            if faithful_only and not e.faithful:
                continue
            for rest in _reduced_choices(protocol, e.target, player, faithful_only):
                yield ((vid, e.label),) + rest
    else:
        # materialised per child so the product can be re-iterated
        parts = [list(_reduced_choices(protocol, e.target, player, faithful_only)) for e in edges]
        for combo in itertools.product(*parts):
            yield tuple(itertools.chain.from_iterable(combo))


def iter_strategies(protocol: ExchangeProtocol, player: str, kind: str = "all",
                    reduced: bool = True) -> Iterator[Strategy]:
    """Lazily yield strategies in deterministic declaration order."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    faithful_only = kind == "faithful"
    if reduced:
        source = _reduced_choices(protocol, protocol.root, player, faithful_only)
    else:
        owned = protocol.owned_by(player)
        options = [[(v.id, e.label) for e in protocol.outgoing(v.id) if e.faithful or not faithful_only]
                   for v in owned]
        source = itertools.product(*options)
    for choices in source:
        strategy = Strategy(player, choices, reduced)
        if kind == "unfaithful" and is_faithful_strategy(protocol, strategy):
            continue
        yield strategy


def enumerate_strategies(protocol: ExchangeProtocol, player: str, kind: str = "all",
                         reduced: bool = True, cap: Optional[int] = None) -> StrategySet:
    player = protocol.role(player)
    size = count_strategies(protocol, player, kind == "faithful", reduced)
    limit = enumeration_cap(cap)
    if size > limit:
        raise EnumerationOverflow(player, size, limit)
    return StrategySet(player, tuple(iter_strategies(protocol, player, kind, reduced)), kind)


def is_faithful_strategy(protocol: ExchangeProtocol, strategy: Strategy) -> bool:
    return all(protocol.edge(vid, label).faithful for vid, label in strategy.choices)


def can_leave_at_any_time(protocol: ExchangeProtocol, player: str) -> bool:
    """Structural test: a leave move at every owned vertex, and no owned vertex after leaving."""
    player = protocol.role(player)
    for vertex in protocol.owned_by(player):
        leaves = [e for e in protocol.outgoing(vertex.id) if e.leave]
        if not leaves:
            return False
        for e in leaves:
            stack = [e.target]
            while stack:
                vid = stack.pop()
                if protocol.owner(vid) == player:
                    return False
                stack.extend(c.target for c in protocol.outgoing(vid))
    return True


def _descendants(protocol: ExchangeProtocol, vid: str) -> set[str]:
    seen, stack = set(), [e.target for e in protocol.outgoing(vid)]
    while stack:
        v = stack.pop()
        seen.add(v)
        stack.extend(e.target for e in protocol.outgoing(v))
    return seen


def leave_any_time_by_enumeration(protocol: ExchangeProtocol, player: str,
                                  cap: Optional[int] = None) -> bool:
    """Check the quantified leave-at-any-time condition on enumerated strategies.

    For every play and every prefix of ``player``'s conducted moves, cutting
    the strategy short with a leave move must give a valid, unfaithful strategy.
    Exponential; meant for small trees.
    """
    player = protocol.role(player)
    other = opponent(player)
    own = enumerate_strategies(protocol, player, cap=cap)
    theirs = enumerate_strategies(protocol, other, cap=cap)
    for s in own:
        for t in theirs:
            pair = (s, t) if player == "A" else (t, s)
            out = play(protocol, *pair)
            for edge in out.moves(player):
                leaves = [e for e in protocol.outgoing(edge.source) if e.leave]
                if not leaves:
                    return False
                cut = _descendants(protocol, edge.source)
                mapping = {v: c for v, c in s.choices if v not in cut}
                mapping[edge.source] = leaves[0].label
                truncated = Strategy.of(player, mapping)
                if strategy_problems(protocol, truncated) or is_faithful_strategy(protocol, truncated):
                    return False
    return True


def has_nonnegligible_cost(protocol: ExchangeProtocol) -> bool:
    return all(e.attributes.cost > 0 for e in protocol.edges if not e.leave)


def environment_report(protocol: ExchangeProtocol) -> EnvironmentReport:
    return EnvironmentReport(
        nonnegligible_cost=has_nonnegligible_cost(protocol),
        can_leave_any_time_A=can_leave_at_any_time(protocol, "A"),
        can_leave_any_time_B=can_leave_at_any_time(protocol, "B"),
        initializer=protocol.owner(protocol.root),
    )
