import pytest
from hypothesis import given, settings

from costfair.model import ProtocolDraft, Strategy, validate_protocol
from costfair.protolib import builtin
from costfair.semantics import play
from costfair.strategies import (EnumerationOverflow, can_leave_at_any_time, count_strategies,
                                 enumerate_strategies, environment_report, has_nonnegligible_cost,
                                 is_faithful_strategy, leave_any_time_by_enumeration)
from conftest import small_protocols
from oracles import complete_strategies, follow


def restrict(protocol, role, choice):
    """Restriction of a complete strategy to the vertices its own choices leave reachable."""
    kept, stack = {}, [protocol.root]
    while stack:
        vid = stack.pop()
        edges = protocol.outgoing(vid)
        if not edges:
            continue
        if protocol.owner(vid) == role:
            kept[vid] = choice[vid]
            stack.append(protocol.edge(vid, choice[vid]).target)
        else:
            stack.extend(e.target for e in edges)
    return frozenset(kept.items())


def census(protocol, role, faithful_only=False):
    return {restrict(protocol, role, c) for c in complete_strategies(protocol, role, faithful_only)}


def binary_tree():
    d = ProtocolDraft()
    d.item("x", "A").item("y", "B")
    for r in "AB":
        d.value(r, "x", 1).value(r, "y", 1)
    d.vertex("r", "A").vertex("l", "B").vertex("m", "B")
    d.move("r", "l", "left", cost=1).move("r", "m", "right", cost=1)
    for parent in ("l", "m"):
        for label in ("a", "b"):
            d.vertex(f"{parent}{label}")
            d.move(parent, f"{parent}{label}", label, cost=1)
    return validate_protocol(d)


def test_fairswap_buyer_first_decision():
    fs = builtin("fairswap-eth")
    assert [e.label for e in fs.outgoing("v1")] == ["pay", "leave"]
    buyer = enumerate_strategies(fs, "buyer")
    assert len(buyer) == len(census(fs, "B"))
    assert Strategy.of("B", {"v1": "leave"}) in set(buyer)


def test_player_without_vertices_has_one_empty_strategy():
    g = builtin("empty-game")
    for reduced in (True, False):
        s = enumerate_strategies(g, "A", reduced=reduced)
        assert len(s) == 1 and len(s.strategies[0]) == 0


def test_depth_two_binary_tree_counts():
    p = binary_tree()
    assert len(enumerate_strategies(p, "A")) == 2
    assert len(enumerate_strategies(p, "B", reduced=False)) == 4
    assert len(enumerate_strategies(p, "B")) == 4 == len(census(p, "B"))
    assert len(enumerate_strategies(p, "A", reduced=False)) == 2


def test_faithfulness_of_strategies():
    fs = builtin("fairswap-eth")
    assert is_faithful_strategy(fs, Strategy.of("A", {"v0": "init", "v2": "reveal", "v5": "finalize",
                                                      "v6": "finalize"}))
    assert not is_faithful_strategy(fs, Strategy.of("B", {"v1": "leave"}))
    shop = builtin("shoplifter")
    assert not is_faithful_strategy(shop, Strategy.of("B", {"v1": "steal", "v2": "confess"}))


def test_leave_predicates():
    fs = builtin("fairswap-eth")
    assert can_leave_at_any_time(fs, "buyer")
    assert not can_leave_at_any_time(builtin("shoplifter"), "B")
    assert can_leave_at_any_time(builtin("empty-game"), "A")


def test_cost_predicate():
    assert has_nonnegligible_cost(builtin("fairswap-eth"))
    assert not has_nonnegligible_cost(builtin("free-deposit"))
    d = ProtocolDraft()
    d.item("x", "A").item("y", "B")
    for r in "AB":
        d.value(r, "x", 1).value(r, "y", 1)
    d.vertex("v0", "A").vertex("t")
    d.leave("v0", "t")
    assert has_nonnegligible_cost(validate_protocol(d))


def test_environment_reports():
    env = environment_report(builtin("fairswap-eth"))
    assert env.nonnegligible_cost and env.can_leave_any_time_B and env.initializer == "A"
    assert not environment_report(builtin("free-deposit")).nonnegligible_cost
    assert environment_report(builtin("empty-game")).initializer is None


def test_overflow_is_explicit(monkeypatch):
    fs = builtin("fairswap-eth")
    with pytest.raises(EnumerationOverflow):
        enumerate_strategies(fs, "B", cap=3)
    monkeypatch.setenv("COSTFAIR_ENUM_CAP", "2")
    with pytest.raises(EnumerationOverflow):
        enumerate_strategies(fs, "B")


@settings(max_examples=60, deadline=None)
@given(small_protocols(max_depth=3))
def test_partition_and_counts(protocol):
    for role in "AB":
        for reduced in (True, False):
            every = enumerate_strategies(protocol, role, "all", reduced)
            good = enumerate_strategies(protocol, role, "faithful", reduced)
            bad = enumerate_strategies(protocol, role, "unfaithful", reduced)
            assert len(every) == len(good) + len(bad)
            assert set(good).isdisjoint(bad)
            assert set(good) | set(bad) == set(every)
            assert all(is_faithful_strategy(protocol, s) for s in good)
            assert len(every) == count_strategies(protocol, role, reduced=reduced)
        reduced_set = {frozenset(s.choices) for s in enumerate_strategies(protocol, role)}
        assert reduced_set == census(protocol, role)


@settings(max_examples=60, deadline=None)
@given(small_protocols(max_depth=3))
def test_reduced_and_complete_realise_the_same_paths(protocol):
    reduced = {play(protocol, a, b).path
               for a in enumerate_strategies(protocol, "A") for b in enumerate_strategies(protocol, "B")}
    complete = {follow(protocol, a, b)
                for a in complete_strategies(protocol, "A") for b in complete_strategies(protocol, "B")}
    assert reduced == complete


@settings(max_examples=60, deadline=None)
@given(small_protocols(max_depth=3))
def test_structural_leave_implies_enumerated_definition(protocol):
    for role in "AB":
        if can_leave_at_any_time(protocol, role):
            assert leave_any_time_by_enumeration(protocol, role)
