import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from costfair.fairness import theorem_premises
from costfair.generator import GeneratorConfig, InfeasibleConfig, generate_random_protocol
from costfair.lab import corpus_config, run_theorem_lab
from costfair.model import check_protocol, opponent
from costfair.protolib import serialize_protocol
from costfair.semantics import classify_outcome
from costfair.strategies import can_leave_at_any_time, has_nonnegligible_cost
from oracles import root_paths, running_balances


def test_seed_42_satisfies_theorem1_premises():
    p = generate_random_protocol(depth=3, branching=2, seed=42, enforce_theorem1_premises=True)
    assert check_protocol(p.to_draft()).ok
    assert theorem_premises(p).theorem1_premises_hold


def test_same_seed_same_bytes():
    config = GeneratorConfig(depth=4, branching=3, seed=7, enforce_theorem1_premises=True)
    assert serialize_protocol(generate_random_protocol(config)) == \
        serialize_protocol(generate_random_protocol(config))


def test_different_seeds_differ():
    texts = {serialize_protocol(generate_random_protocol(depth=3, branching=3, seed=s)) for s in range(20)}
    assert len(texts) > 15


def test_infeasible_configs():
    with pytest.raises(InfeasibleConfig):
        generate_random_protocol(depth=1, branching=1, seed=0, enforce_theorem1_premises=True)
    with pytest.raises(InfeasibleConfig):
        generate_random_protocol(depth=0, branching=2, seed=0)


def test_config_or_keywords_not_both():
    with pytest.raises(TypeError):
        generate_random_protocol(GeneratorConfig(1, 2, 3), seed=4)


def test_corpus_shapes_stay_in_bounds():
    for seed in range(1, 200):
        config = corpus_config(seed)
        assert 1 <= config.depth <= 5 and 2 <= config.branching <= 3


def test_lab_summary_reports_all_instances():
    result = run_theorem_lab(1, seeds=range(1, 21))
    assert result.instances == 20 and result.confirmed == 20 and result.exceptions == []
    assert "20/20" in result.summary()


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 5), st.integers(2, 3), st.integers(0, 10**6), st.sampled_from([1, 2]),
       st.sampled_from("AB"))
def test_premises_and_fair_exchange_are_enforced(depth, branching, seed, theorem, init):
    p = generate_random_protocol(depth=depth, branching=branching, seed=seed, initializer=init,
                                 enforce_theorem1_premises=True, both_can_leave=theorem == 2)
    assert p.owner(p.root) == init
    assert has_nonnegligible_cost(p)
    assert can_leave_at_any_time(p, opponent(init))
    if theorem == 2:
        assert can_leave_at_any_time(p, init)
    for path in root_paths(p):
        assert all(b >= 0 for b in running_balances(path))
        assert classify_outcome(p, path).kind in ("complete", "void")
        # the releasing move itself may be the second party's first move
        acted = set()
        for e in path:
            if not e.leave:
                acted.add(p.owner(e.source))
            if e.attributes.share_to_A or e.attributes.share_to_B:
                assert acted == {"A", "B"}


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5), st.integers(1, 3), st.integers(0, 10**6), st.booleans())
def test_unconstrained_generation_is_valid(depth, branching, seed, fair):
    p = generate_random_protocol(depth=depth, branching=branching, seed=seed, enforce_fair_exchange=fair)
    assert check_protocol(p.to_draft()).ok
    assert all(len(p.outgoing(v.id)) <= branching for v in p.vertices)
    owners = [(p.owner(e.source), p.owner(e.target)) for e in p.edges if not e.leave]
    assert all(b is None or a != b for a, b in owners)
