from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from costfair.model import Edge, MoveAttributes, ProtocolDraft, Strategy, validate_protocol
from costfair.protolib import builtin
from costfair.semantics import (PayoffPair, StrategyError, classify_outcome, escrow_trace, path_payoff, play,
                                payoff, playout_of_path, terminal_payoffs)
from conftest import small_protocols
from oracles import follow, naive_payoff, root_paths, running_balances


def edge(label, **attrs):
    return Edge("x", "y", label, MoveAttributes(**attrs))


def test_grieving_play():
    fs = builtin("fairswap-eth")
    out = play(fs, Strategy.of("A", {"v0": "init"}), Strategy.of("B", {"v1": "leave"}))
    assert [e.label for e in out.path] == ["init", "leave"]
    assert [e.label for e in out.moves_A] == ["init"]
    assert [e.label for e in out.moves_B] == ["leave"]
    assert out.terminal.id == "t_grief"
    assert tuple(path_payoff(fs, out)) == (-1050000, 0)
    assert classify_outcome(fs, out.path).kind == "void"


def test_empty_game_plays_empty_path():
    g = builtin("empty-game")
    out = play(g, Strategy.of("A"), Strategy.of("B"))
    assert out.path == ()
    assert payoff(g, Strategy.of("A"), Strategy.of("B")) == PayoffPair(0, 0)


def test_figure2_faithful_exchange():
    fig = builtin("figure2-naive")
    out = play(fig, Strategy.of("A", {"v0": "pay"}), Strategy.of("B", {"v1": "deliver"}))
    assert len(out.path) == 2
    outcome = classify_outcome(fig, out.path)
    assert (outcome.kind, outcome.received_by_A, outcome.received_by_B) == ("complete", 1, 1)
    assert classify_outcome(fig, fig.path_to("t_robbed")).kind == "unbalanced"


def test_single_move_payoff_by_hand():
    d = ProtocolDraft()
    d.item("iota_A", "A").item("iota_B", "B")
    d.value("A", "iota_A", 80).value("A", "iota_B", 0)
    d.value("B", "iota_A", 100).value("B", "iota_B", 0)
    d.vertex("v0", "A").vertex("t")
    d.move("v0", "t", "send", share_to_B=1, cost=50)
    p = validate_protocol(d)
    assert tuple(payoff(p, Strategy.of("A", {"v0": "send"}), Strategy.of("B"))) == (-130, 100)


def test_undefined_choice_raises():
    fs = builtin("fairswap-eth")
    with pytest.raises(StrategyError):
        play(fs, Strategy.of("A", {"v0": "init"}), Strategy.of("B"))


def test_escrow_examples():
    trace = escrow_trace(None, [edge("a", deposit=100), edge("b", deposit=150),
                                edge("c", deposit=-100, comp_to_A=150)])
    assert trace.balances == (100, 250, 0) and trace.ok
    assert escrow_trace(None, []).balances == () and escrow_trace(None, []).ok
    bad = escrow_trace(None, [edge("e1", comp_to_A=150)])
    assert bad.balances == (-150,) and bad.first_violation == 0
    assert not bad.closed_at_end


def test_escrow_example_embedded_in_a_protocol():
    d = ProtocolDraft()
    d.item("x", "A").item("y", "B")
    for r in "AB":
        d.value(r, "x", 1).value(r, "y", 1)
    d.vertex("v0", "A").vertex("v1", "B").vertex("v2", "A").vertex("t")
    d.move("v0", "v1", "dep", deposit=100)
    d.move("v1", "v2", "dep", deposit=150)
    d.move("v2", "t", "withdraw", deposit=-100, comp_to_A=150)
    p = validate_protocol(d)
    out = playout_of_path(p, p.path_to("t"))
    assert escrow_trace(p, out.path).balances == (100, 250, 0)
    # A put in 100, took 100 back and 150 in compensation; B lost its 150 deposit
    assert tuple(path_payoff(p, out)) == (150, -150)


def test_terminal_payoffs_cover_every_terminal(any_builtin):
    labels = terminal_payoffs(any_builtin)
    assert set(labels) == {t.id for t in any_builtin.terminals()}
    for tid, pair in labels.items():
        assert tuple(pair) == naive_payoff(any_builtin, any_builtin.path_to(tid))


@settings(max_examples=80, deadline=None)
@given(small_protocols())
def test_payoff_matches_naive_oracle(protocol):
    for path in root_paths(protocol):
        assert tuple(path_payoff(protocol, playout_of_path(protocol, path))) == naive_payoff(protocol, path)


@settings(max_examples=80, deadline=None)
@given(small_protocols(), st.data())
def test_path_sufficiency(protocol, data):
    def random_complete(role):
        return {v.id: data.draw(st.sampled_from([e.label for e in protocol.outgoing(v.id)]))
                for v in protocol.owned_by(role) if protocol.outgoing(v.id)}

    a1, b1 = random_complete("A"), random_complete("B")
    path = follow(protocol, a1, b1)
    # a second pair that agrees on the path but is arbitrary elsewhere
    a2, b2 = random_complete("A"), random_complete("B")
    for e in path:
        (a2 if protocol.owner(e.source) == "A" else b2)[e.source] = e.label
    assert follow(protocol, a2, b2) == path
    first = payoff(protocol, Strategy.of("A", a1, reduced=False), Strategy.of("B", b1, reduced=False))
    second = payoff(protocol, Strategy.of("A", a2, reduced=False), Strategy.of("B", b2, reduced=False))
    assert first == second


@settings(max_examples=80, deadline=None)
@given(small_protocols())
def test_escrow_conservation(protocol):
    for path in root_paths(protocol):
        trace = escrow_trace(protocol, path)
        assert list(trace.balances) == running_balances(path)
        assert trace.ok
        paid = sum((e.attributes.comp_to_A + e.attributes.comp_to_B for e in path), Fraction(0))
        deposited = sum((e.attributes.deposit for e in path if e.attributes.deposit > 0), Fraction(0))
        assert paid <= deposited
        net_deposits = sum((e.attributes.deposit for e in path), Fraction(0))
        assert net_deposits - paid == (trace.balances[-1] if path else 0)


@settings(max_examples=40, deadline=None)
@given(small_protocols())
def test_playout_partitions_moves(protocol):
    for path in root_paths(protocol):
        out = playout_of_path(protocol, path)
        assert len(out.moves_A) + len(out.moves_B) == len(out.path)
        assert set(out.moves_A).isdisjoint(out.moves_B)
        assert all(protocol.owner(e.source) == "A" for e in out.moves_A)
