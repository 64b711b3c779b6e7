"""Randomized checks of the two impossibility theorems on generated protocols."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .fairness import full_cost_fairness, partial_cost_fairness, theorem_premises
from .generator import GeneratorConfig, generate_random_protocol
from .model import ExchangeProtocol

DEFAULT_SEEDS = range(1, 1001)
MAX_DEPTH = 5
MAX_BRANCHING = 3


def corpus_config(seed: int, theorem: int = 1, fair_exchange: bool = True) -> GeneratorConfig:
    """Shape for one corpus member: depth 1..5 and branching 2..3, drawn from the seed."""
    shape = random.Random(f"shape-{seed}")
    return GeneratorConfig(
        depth=shape.randint(1, MAX_DEPTH),
        branching=shape.randint(2, MAX_BRANCHING),
        seed=seed,
        enforce_theorem1_premises=True,
        enforce_fair_exchange=fair_exchange,
        both_can_leave=theorem == 2,
    )


def corpus(seeds: Iterable[int] = DEFAULT_SEEDS, theorem: int = 1,
           fair_exchange: bool = True) -> Iterator[tuple[int, ExchangeProtocol]]:
    for seed in seeds:
        yield seed, generate_random_protocol(corpus_config(seed, theorem, fair_exchange))


@dataclass
class LabResult:
    theorem: int
    instances: int = 0
    confirmed: int = 0
    exceptions: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def rate(self) -> float:
        return self.confirmed / self.instances if self.instances else 0.0

    def summary(self) -> str:
        return (f"theorem {self.theorem}: {self.confirmed}/{self.instances} instances confirm the impossibility, "
                f"{len(self.exceptions)} exceptions, {self.elapsed:.2f}s")


def run_theorem_lab(theorem: int, seeds: Iterable[int] = DEFAULT_SEEDS, method: str = "induction",
                    fair_exchange: bool = True) -> LabResult:
    """Check on every generated instance that the predicted cost-fairness failure happens.

    Instances whose premises do not hold, or whose verdict contradicts the
    prediction, are listed in ``exceptions`` as ``(seed, reason)``.
    """
    result = LabResult(theorem)
    start = time.perf_counter()
    for seed, protocol in corpus(seeds, theorem, fair_exchange):
        result.instances += 1
        report = theorem_premises(protocol)
        premise = report.theorem1_premises_hold if theorem == 1 else report.theorem2_premises_hold
        if not premise:
            result.exceptions.append((seed, "premises not met"))
            continue
        if theorem == 1:
            holds = partial_cost_fairness(protocol, report.environment.initializer, method).holds
        else:
            holds = full_cost_fairness(protocol, method).holds
        if holds:
            result.exceptions.append((seed, "cost fairness holds"))
        else:
            result.confirmed += 1
    result.elapsed = time.perf_counter() - start
    return result
