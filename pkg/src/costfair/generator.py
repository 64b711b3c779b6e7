"""Seeded random protocol families for exercising the impossibility theorems."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .model import ExchangeProtocol, ProtocolDraft, opponent, validate_protocol


class InfeasibleConfig(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorConfig:
    """Shape and constraints of a generated protocol.

    ``branching`` is the maximum out-degree; each vertex draws its degree
    between the number of mandatory moves and this bound.
    ``both_can_leave`` gives both players a leave move everywhere (the
    Theorem 2 setting) and implies the cost premise.
    """

    depth: int
    branching: int
    seed: int
    enforce_theorem1_premises: bool = False
    enforce_fair_exchange: bool = True
    both_can_leave: bool = False
    initializer: Optional[str] = None

    @property
    def premises(self) -> bool:
        return self.enforce_theorem1_premises or self.both_can_leave


@dataclass
class _PathState:
    to_A: Fraction = Fraction(0)
    to_B: Fraction = Fraction(0)
    balance: Fraction = Fraction(0)
    net_deposit: dict = field(default_factory=lambda: {"A": Fraction(0), "B": Fraction(0)})
    acted: frozenset = frozenset()
    settled: bool = False

    def copy(self, **changes) -> "_PathState":
        state = _PathState(self.to_A, self.to_B, self.balance, dict(self.net_deposit), self.acted, self.settled)
        for k, v in changes.items():
            setattr(state, k, v)
        return state


class _Builder:
    def __init__(self, config: GeneratorConfig):
        self.config = config
        self.rng = random.Random(config.seed)
        self.draft = ProtocolDraft(currency_unit="unit")
        self.counter = {"v": 0, "t": 0}

    def fresh(self, prefix: str) -> str:
        name = f"{prefix}{self.counter[prefix]}"
        self.counter[prefix] += 1
        return name

    def cost(self) -> Fraction:
        rng = self.rng
        positive = Fraction(rng.randint(1, 200), rng.choice((1, 1, 2, 4)))
        if self.config.premises or rng.random() < 0.7:
            return positive
        return Fraction(0)

    def money_flow(self, owner: str, state: _PathState):
        """Deposit and compensations keeping every escrow prefix non-negative."""
        rng = self.rng
        deposit = Fraction(0)
        roll = rng.random()
        own = state.net_deposit[owner]
        if roll < 0.3:
            deposit = Fraction(rng.randint(1, 100))
        elif roll < 0.5 and own > 0 and state.balance > 0:
            deposit = -Fraction(rng.randint(1, int(min(own, state.balance))))
        comps = {"A": Fraction(0), "B": Fraction(0)}
        available = state.balance + deposit
        if available >= 1 and rng.random() < 0.35:
            comps[rng.choice("AB")] = Fraction(rng.randint(1, int(available)))
        return deposit, comps

    def shares(self, owner: str, faithful: bool, state: _PathState, last_level: bool):
        rng = self.rng
        if self.config.enforce_fair_exchange:
            both_acted = opponent(owner) in state.acted
            if faithful and both_acted and not state.settled and (last_level or rng.random() < 0.5):
                return Fraction(1), Fraction(1)
            return Fraction(0), Fraction(0)
        out = []
        for received in (state.to_A, state.to_B):
            room = 1 - received
            if room > 0 and rng.random() < 0.3:
                out.append(min(room, Fraction(rng.randint(1, 4), 4)))
            else:
                out.append(Fraction(0))
        return tuple(out)

    def build(self) -> ExchangeProtocol:
        cfg, rng = self.config, self.rng
        if cfg.depth < 1 or cfg.branching < 1:
            raise InfeasibleConfig("depth and branching must be at least 1")
        if cfg.premises and cfg.branching < 2:
            raise InfeasibleConfig("premises need a leave move and a faithful move at each leaver vertex; "
                                   "branching must be at least 2")
        init = cfg.initializer or rng.choice("AB")
        if cfg.both_can_leave:
            self.leavers = {"A", "B"}
        elif cfg.enforce_theorem1_premises:
            self.leavers = {opponent(init)}
        else:
            self.leavers = {r for r in "AB" if rng.random() < 0.5}
        self.optional_leave = 0.5

        d = self.draft
        d.item("item_A", "A").item("item_B", "B")
        for role in "AB":
            for item in ("item_A", "item_B"):
                if rng.random() < 0.2:
                    mid = Fraction(rng.randint(1, 3), 4)
                    top = rng.randint(20, 300)
                    d.value(role, item, table=[(mid, rng.randint(0, top)), (1, top)])
                else:
                    d.value(role, item, rng.randint(10, 300))
        self.vertex(init, 0, _PathState())
        return validate_protocol(d)

    def vertex(self, owner: Optional[str], level: int, state: _PathState) -> str:
        cfg, rng, d = self.config, self.rng, self.draft
        if owner is None or level >= cfg.depth:
            vid = self.fresh("t")
            d.vertex(vid)
            return vid
        vid = self.fresh("v")
        d.vertex(vid, owner)
        has_leave = owner in self.leavers or (not cfg.premises and rng.random() < 0.3) \
            or (cfg.premises and rng.random() < self.optional_leave)
        required = 1 + has_leave
        if required > cfg.branching:
            has_leave = False
            required = 1
        degree = rng.randint(required, cfg.branching)
        kinds = ["faithful"] + ["faithful" if rng.random() < 0.5 else "unfaithful"
                                for _ in range(degree - required)]
        if has_leave:
            kinds.insert(rng.randrange(len(kinds) + 1), "leave")
        counts = {"f": 0, "u": 0}
        for kind in kinds:
            if kind == "leave":
                target = self.after_leave(owner, level, state)
                d.leave(vid, target)
                continue
            faithful = kind == "faithful"
            prefix = "f" if faithful else "u"
            label = f"{prefix}{counts[prefix]}"
            counts[prefix] += 1
            cost = self.cost()
            deposit, comps = self.money_flow(owner, state)
            s_a, s_b = self.shares(owner, faithful, state, level == cfg.depth - 1)
            net = dict(state.net_deposit)
            net[owner] += deposit
            child = state.copy(
                to_A=state.to_A + s_a, to_B=state.to_B + s_b,
                balance=state.balance + deposit - comps["A"] - comps["B"],
                net_deposit=net, acted=state.acted | {owner},
                settled=state.settled or (s_a == 1 and s_b == 1),
            )
            target = self.vertex(opponent(owner), level + 1, child)
            d.move(vid, target, label, faithful=faithful, share_to_A=s_a, share_to_B=s_b, cost=cost,
                   deposit=deposit, comp_to_A=comps["A"], comp_to_B=comps["B"])
        return vid

    def after_leave(self, leaver: str, level: int, state: _PathState) -> str:
        """Terminal, or one vertex where the remaining party can recover funds."""
        cfg, rng, d = self.config, self.rng, self.draft
        other = opponent(leaver)
        needs_leave = other in self.leavers
        if level + 1 >= cfg.depth or rng.random() < 0.5 or 1 + needs_leave > cfg.branching:
            vid = self.fresh("t")
            d.vertex(vid)
            return vid
        vid = self.fresh("v")
        d.vertex(vid, other)
        own = state.net_deposit[other]
        deposit = -min(own, state.balance) if own > 0 else Fraction(0)
        rest = state.balance + deposit
        comp = Fraction(rng.randint(0, int(rest))) if rest >= 1 else Fraction(0)
        recover = self.fresh("t")
        d.vertex(recover)
        d.move(vid, recover, "recover", cost=self.cost(), deposit=deposit,
               comp_to_A=comp if other == "A" else 0, comp_to_B=comp if other == "B" else 0)
        if needs_leave:
            gone = self.fresh("t")
            d.vertex(gone)
            d.leave(vid, gone)
        return vid


def generate_random_protocol(config: GeneratorConfig = None, **kwargs) -> ExchangeProtocol:
    """Build the protocol described by ``config`` (or by keyword arguments)."""
    if config is None:
        config = GeneratorConfig(**kwargs)
    elif kwargs:
        raise TypeError("pass either a config or keyword arguments")
    return _Builder(config).build()
