from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from costfair.fairness import (NEG_INF, asokan_fairness, full_cost_fairness, minmax_double_loop,
                               partial_cost_fairness, partial_cost_fairness_bruteforce,
                               partial_cost_fairness_induction, prediction_agreement, theorem_premises)
from costfair.model import ProtocolDraft, validate_protocol
from costfair.protolib import builtin
from costfair.protolib.builtins import free_deposit
from conftest import small_protocols
from oracles import recursive_worst_case


def tiny(**attrs):
    d = ProtocolDraft()
    d.item("x", "A").item("y", "B")
    for r in "AB":
        d.value(r, "x", 5).value(r, "y", 5)
    d.vertex("v0", "A").vertex("t")
    d.move("v0", "t", "go", **attrs)
    return validate_protocol(d)


@pytest.mark.parametrize("method", ["bruteforce", "induction"])
def test_fairswap_seller_is_not_protected(method):
    v = partial_cost_fairness(builtin("fairswap-eth"), "seller", method)
    assert not v.holds
    assert v.worst_case_value == -1050000
    assert v.predicate == "partial-cf-favoring-A"
    cx = v.counterexample
    assert cx.adversary.as_dict() == {"v1": "leave"}
    assert cx.render_path() == "v0=init,v1=leave"
    assert tuple(cx.payoff) == (-1050000, 0)


def test_named_wrappers_agree():
    fs = builtin("fairswap-eth")
    assert partial_cost_fairness_bruteforce(fs, "A").worst_case_value == \
        partial_cost_fairness_induction(fs, "A").worst_case_value


def test_single_zero_move_holds_at_zero():
    v = partial_cost_fairness_bruteforce(tiny(), "A")
    assert v.holds and v.worst_case_value == 0 and v.counterexample is None


def test_no_faithful_continuation_is_minus_infinity():
    d = ProtocolDraft()
    d.item("x", "A").item("y", "B")
    for r in "AB":
        d.value(r, "x", 5).value(r, "y", 5)
    d.vertex("v0", "A").vertex("t")
    d.move("v0", "t", "cheat", faithful=False)
    p = validate_protocol(d)
    for method in ("bruteforce", "induction"):
        v = partial_cost_fairness(p, "A", method)
        assert not v.holds and v.worst_case_value == NEG_INF
        assert v.reason == "no faithful strategy"


def test_deposit_compensated_protects_the_buyer():
    assert partial_cost_fairness_bruteforce(builtin("deposit-compensated"), "B").holds


def test_full_cost_fairness_examples():
    fs = full_cost_fairness(builtin("fairswap-eth"))
    assert not fs.holds and not fs.favoring_A.holds
    assert full_cost_fairness(builtin("empty-game")).holds
    assert full_cost_fairness(builtin("free-deposit"), "bruteforce").holds
    empty = full_cost_fairness(builtin("empty-game"), "bruteforce")
    assert [v.worst_case_value for v in empty] == [0, 0]


def test_free_deposit_breaks_with_any_opening_cost():
    for cost in (Fraction(1, 1000), 1, 37):
        assert not full_cost_fairness(free_deposit(open_cost=cost), "bruteforce").holds


def test_asokan_examples():
    fs = builtin("fairswap-eth")
    assert asokan_fairness(fs, "A").holds and asokan_fairness(fs, "B").holds
    fig = builtin("figure2-naive")
    payer = asokan_fairness(fig, "buyer", "bruteforce")
    assert not payer.holds and payer.worst_case_value is None
    assert [e.label for e in payer.counterexample.path] == ["pay", "keep"]
    assert asokan_fairness(builtin("empty-game"), "A").holds


def test_theorem_premises_on_builtins():
    fs = theorem_premises(builtin("fairswap-eth"))
    assert fs.theorem1_premises_hold and fs.environment.initializer == "A"
    assert "partial-cf-favoring-A" in fs.predicted_failures
    assert fs.sequential and fs.fair_exchange
    assert all(not holds for _, _, holds in prediction_agreement(builtin("fairswap-eth")))
    assert not theorem_premises(builtin("shoplifter")).theorem1_premises_hold
    free = theorem_premises(builtin("free-deposit"))
    assert not free.theorem1_premises_hold and not free.theorem2_premises_hold
    assert free.predicted_failures == ()


def test_builtin_solvers_agree(any_builtin):
    for role in "AB":
        a = partial_cost_fairness(any_builtin, role, "bruteforce")
        b = partial_cost_fairness(any_builtin, role, "induction")
        assert (a.holds, a.worst_case_value) == (b.holds, b.worst_case_value)
        assert a.worst_case_value == recursive_worst_case(any_builtin, role)


@settings(max_examples=100, deadline=None)
@given(small_protocols(), st.sampled_from("AB"))
def test_solvers_match_each_other_and_the_oracle(protocol, role):
    brute = partial_cost_fairness(protocol, role, "bruteforce")
    induct = partial_cost_fairness(protocol, role, "induction")
    assert brute.worst_case_value == induct.worst_case_value == recursive_worst_case(protocol, role)
    assert brute.holds == induct.holds == (brute.worst_case_value >= 0)
    assert (brute.counterexample is None) == brute.holds
    if not brute.holds and brute.counterexample.payoff is not None:
        assert brute.counterexample.payoff.of(role) == brute.worst_case_value
        assert induct.counterexample.payoff.of(role) == induct.worst_case_value


@settings(max_examples=60, deadline=None)
@given(small_protocols(max_depth=3), st.sampled_from("AB"))
def test_quantifier_collapse(protocol, role):
    assert minmax_double_loop(protocol, role) == partial_cost_fairness(protocol, role, "bruteforce").worst_case_value


@settings(max_examples=100, deadline=None)
@given(small_protocols(), st.sampled_from("AB"), st.integers(1, 500))
def test_extra_cost_on_own_moves_never_helps(protocol, role, delta):
    before = partial_cost_fairness(protocol, role)
    # prefer a move of the favored party on the worst-case path
    path = before.counterexample.path if before.counterexample else ()
    own = [e for e in path if protocol.owner(e.source) == role and not e.leave]
    own += [e for e in protocol.edges if protocol.owner(e.source) == role and not e.leave]
    if not own:
        return
    target = own[0]
    after = partial_cost_fairness(
        protocol.with_attributes(target.source, target.label, cost=target.attributes.cost + delta), role)
    assert after.worst_case_value <= before.worst_case_value
