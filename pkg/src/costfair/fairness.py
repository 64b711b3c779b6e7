"""Partial/full cost fairness, Asokan-style fairness, and theorem premises.

Two independent solvers decide partial cost fairness in favour of a player P:

* ``bruteforce`` enumerates every (reduced) adversary strategy and, for each,
  every faithful reduced strategy of P, keeping the min over the adversary of
  P's best faithful payoff;
* ``induction`` does one backward pass over the tree (max over faithful moves
  at P's vertices, min over all moves at the adversary's).

A vertex of P without any faithful move is worth ``-inf``: no faithful
strategy of P covers that branch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Union

from .model import Edge, ExchangeProtocol, Strategy, opponent
from .semantics import PayoffPair, classify_outcome, path_payoff, payoff, play, terminal_payoffs
from .strategies import EnvironmentReport, enumerate_strategies, environment_report

NEG_INF = float("-inf")

Value = Union[Fraction, float]

METHODS = ("bruteforce", "induction")


@dataclass(frozen=True)
class Counterexample:
    adversary: Strategy
    response: Optional[Strategy]
    payoff: Optional[PayoffPair]
    path: tuple[Edge, ...] = ()

    def render_path(self) -> str:
        return ",".join(f"{e.source}={e.label}" for e in self.path)


@dataclass(frozen=True)
class FairnessVerdict:
    predicate: str
    player: str
    holds: bool
    worst_case_value: Optional[Value]
    counterexample: Optional[Counterexample]
    method: str
    reason: Optional[str] = None


@dataclass(frozen=True)
class FullFairness:
    favoring_A: FairnessVerdict
    favoring_B: FairnessVerdict

    @property
    def holds(self) -> bool:
        return self.favoring_A.holds and self.favoring_B.holds

    def __iter__(self):
        return iter((self.favoring_A, self.favoring_B))


@dataclass(frozen=True)
class TheoremReport:
    environment: EnvironmentReport
    theorem1_premises_hold: bool
    theorem2_premises_hold: bool
    sequential: bool
    fair_exchange: bool
    predicted_failures: tuple[str, ...]
    notes: tuple[str, ...] = field(default=())


def _partial_name(role: str) -> str:
    return f"partial-cf-favoring-{role}"


def _bruteforce(protocol: ExchangeProtocol, player: str, objective: Callable[[str], Value],
                cap: Optional[int]):
    """Literal min over adversary strategies of max over faithful responses.

    Returns (value, adversary, response) with ties broken by enumeration order.
    """
    adversaries = enumerate_strategies(protocol, opponent(player), "all", cap=cap)
    responses = enumerate_strategies(protocol, player, "faithful", cap=cap)
    if not responses.strategies:
        first = adversaries.strategies[0]
        return NEG_INF, first, None
    worst = None
    for s in adversaries:
        lookup_adv = s.as_dict()
        best, best_r = None, None
        for r in responses:
            lookup_own = r.as_dict()
            vid = protocol.root
            while True:
                edges = protocol.outgoing(vid)
                if not edges:
                    break
                table = lookup_own if protocol.owner(vid) == player else lookup_adv
                vid = protocol.edge(vid, table[vid]).target
            value = objective(vid)
            if best is None or value > best:
                best, best_r = value, r
        if worst is None or best < worst[0]:
            worst = (best, s, best_r)
    return worst


def _induction(protocol: ExchangeProtocol, player: str, objective: Callable[[str], Value]):
    """Backward pass; returns (value, adversary, response)."""
    value: dict[str, Value] = {}
    pick: dict[str, Optional[Edge]] = {}
    order = list(protocol.walk())
    for vertex in reversed(order):
        edges = protocol.outgoing(vertex.id)
        if not edges:
            value[vertex.id] = objective(vertex.id)
            continue
        chosen = None
        if vertex.owner == player:
            best = NEG_INF
            for e in edges:
                if e.faithful and (chosen is None or value[e.target] > best):
                    best, chosen = value[e.target], e
        else:
            best = None
            for e in edges:
                if best is None or value[e.target] < best:
                    best, chosen = value[e.target], e
        value[vertex.id] = best
        pick[vertex.id] = chosen

    def strategy_for(role: str) -> Optional[Strategy]:
        choices = []
        stack = [protocol.root]
        while stack:
            vid = stack.pop()
            edges = protocol.outgoing(vid)
            if not edges:
                continue
            if protocol.owner(vid) == role:
                e = pick[vid]
                if e is None:
                    return None
                choices.append((vid, e.label))
                stack.append(e.target)
            else:
                stack.extend(e.target for e in reversed(edges))
        return Strategy(role, tuple(choices))

    return value[protocol.root], strategy_for(opponent(player)), strategy_for(player)


def _solve(protocol, player, objective, method, cap):
    if method == "bruteforce":
        return _bruteforce(protocol, player, objective, cap)
    if method == "induction":
        return _induction(protocol, player, objective)
    raise ValueError(f"method must be one of {METHODS}")


def _counterexample(protocol, player, adversary, response) -> Counterexample:
    if response is None:
        return Counterexample(adversary, None, None, ())
    pair = (response, adversary) if player == "A" else (adversary, response)
    out = play(protocol, *pair)
    return Counterexample(adversary, response, path_payoff(protocol, out), out.path)


def partial_cost_fairness(protocol: ExchangeProtocol, favored: str, method: str = "induction",
                          cap: Optional[int] = None) -> FairnessVerdict:
    player = protocol.role(favored)
    payoffs = terminal_payoffs(protocol)
    value, adversary, response = _solve(protocol, player, lambda t: payoffs[t].of(player), method, cap)
    holds = value >= 0
    reason = None
    if value == NEG_INF:
        reason = "no faithful strategy"
    counterexample = None if holds else _counterexample(protocol, player, adversary, response)
    return FairnessVerdict(_partial_name(player), player, holds, value, counterexample, method, reason)


def partial_cost_fairness_bruteforce(protocol: ExchangeProtocol, favored: str,
                                     cap: Optional[int] = None) -> FairnessVerdict:
    return partial_cost_fairness(protocol, favored, "bruteforce", cap)


def partial_cost_fairness_induction(protocol: ExchangeProtocol, favored: str) -> FairnessVerdict:
    return partial_cost_fairness(protocol, favored, "induction")


def full_cost_fairness(protocol: ExchangeProtocol, method: str = "induction",
                       cap: Optional[int] = None) -> FullFairness:
    return FullFairness(partial_cost_fairness(protocol, "A", method, cap),
                        partial_cost_fairness(protocol, "B", method, cap))


def asokan_fairness(protocol: ExchangeProtocol, protected: str, method: str = "induction",
                    cap: Optional[int] = None) -> FairnessVerdict:
    """Can ``protected`` always force a complete-or-void outcome while staying faithful?"""
    player = protocol.role(protected)

    def fair_outcome(terminal: str) -> Value:
        kind = classify_outcome(protocol, protocol.path_to(terminal)).kind
        return 1 if kind in ("complete", "void") else 0

    value, adversary, response = _solve(protocol, player, fair_outcome, method, cap)
    holds = value == 1
    reason = "no faithful strategy" if value == NEG_INF else None
    counterexample = None if holds else _counterexample(protocol, player, adversary, response)
    return FairnessVerdict(f"asokan-fairness-{player}", player, holds, None, counterexample, method, reason)


def minmax_double_loop(protocol: ExchangeProtocol, favored: str, cap: Optional[int] = None) -> Value:
    """min over complete adversary strategies of max over complete faithful strategies.

    The direct reading of "for every S_B there is a faithful S_A"; used to
    check that the min-max solvers do not depend on perfect-information
    shortcuts.
    """
    player = protocol.role(favored)
    other = opponent(player)
    own = enumerate_strategies(protocol, player, "faithful", reduced=False, cap=cap)
    theirs = enumerate_strategies(protocol, other, "all", reduced=False, cap=cap)
    worst = None
    for s in theirs:
        best = NEG_INF
        for r in own:
            pair = (r, s) if player == "A" else (s, r)
            best = max(best, payoff(protocol, *pair).of(player))
        worst = best if worst is None else min(worst, best)
    return worst


def theorem_premises(protocol: ExchangeProtocol) -> TheoremReport:
    env = environment_report(protocol)
    init = env.initializer
    t1 = init is not None and env.nonnegligible_cost and env.can_leave(opponent(init))
    t2 = init is not None and env.nonnegligible_cost and env.can_leave_any_time_A and env.can_leave_any_time_B
    fair = asokan_fairness(protocol, "A").holds and asokan_fairness(protocol, "B").holds
    predicted = []
    if t1 or t2:
        predicted += [_partial_name(init), "full-cf"]
    notes = ["moves in a game tree are always sequential"]
    if init is None:
        notes.append("root is terminal: no initializer")
    if (t1 or t2) and not fair:
        notes.append("protocol is not fair in the Asokan sense; the impossibility argument assumes it is")
    return TheoremReport(env, t1, t2, True, fair, tuple(predicted), tuple(notes))


def prediction_agreement(protocol: ExchangeProtocol, method: str = "induction",
                         cap: Optional[int] = None) -> list[tuple[str, bool, bool]]:
    """(predicate, predicted_to_fail, actually_holds) for every predicted failure."""
    report = theorem_premises(protocol)
    rows = []
    full = None
    for predicate in report.predicted_failures:
        if predicate == "full-cf":
            full = full or full_cost_fairness(protocol, method, cap)
            rows.append((predicate, True, full.holds))
        else:
            role = predicate[-1]
            rows.append((predicate, True, partial_cost_fairness(protocol, role, method, cap).holds))
    return rows
