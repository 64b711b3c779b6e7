"""Ready-made protocol models.

All amounts are in the model's currency unit.  For ``fairswap-eth`` the unit
is Gas; only the deployment cost (1,050,000 Gas) is a measured figure, the
other move costs and the valuations are illustrative defaults that can be
overridden through :func:`fairswap_eth`.
"""

from __future__ import annotations

from typing import Callable

from ..model import ExchangeProtocol, ProtocolDraft, validate_protocol

FAIRSWAP_DEPLOY_GAS = 1_050_000

FAIRSWAP_DEFAULTS = dict(
    deploy=FAIRSWAP_DEPLOY_GAS,
    pay=50_000,
    reveal=50_000,
    confirm=30_000,
    complain=100_000,
    finalize=30_000,
    refund=30_000,
    price=2_000_000,
    seller_data_value=500_000,
    buyer_data_value=3_000_000,
)


def fairswap_eth(**overrides) -> ExchangeProtocol:
    """Cost skeleton of FairSwap: a seller (A) sells data to a buyer (B).

    The seller deploys the contract, the buyer pays into it, the seller
    reveals the key, and the buyer can confirm or complain; after a timeout
    the seller finalizes and collects the payment.  Payment held by the
    contract is not available to anyone, so it carries share 0 until released.
    """
    unknown = set(overrides) - set(FAIRSWAP_DEFAULTS)
    if unknown:
        raise TypeError(f"unknown FairSwap parameters: {sorted(unknown)}")
    p = dict(FAIRSWAP_DEFAULTS, **overrides)
    d = ProtocolDraft(players={"A": "seller", "B": "buyer"}, currency_unit="Gas")
    d.item("data", "A").item("payment", "B")
    d.value("A", "data", p["seller_data_value"]).value("A", "payment", p["price"])
    d.value("B", "data", p["buyer_data_value"]).value("B", "payment", p["price"])

    d.vertex("v0", "A")
    d.move("v0", "v1", "init", cost=p["deploy"])
    d.leave("v0", "t_refused", "refuse")

    d.vertex("v1", "B")
    d.move("v1", "v2", "pay", cost=p["pay"])
    d.leave("v1", "t_grief")

    d.vertex("v2", "A")
    d.move("v2", "v3", "reveal", cost=p["reveal"], share_to_B=1)
    d.move("v2", "v4", "reveal_wrong", cost=p["reveal"], faithful=False)
    d.leave("v2", "v8")

    # buyer after a correct key
    d.vertex("v3", "B")
    d.move("v3", "t_confirmed", "confirm", cost=p["confirm"], share_to_A=1)
    d.move("v3", "v5", "complain", cost=p["complain"], faithful=False)
    d.leave("v3", "v6")
    d.vertex("v5", "A")
    d.move("v5", "t_disputed", "finalize", cost=p["finalize"], share_to_A=1)
    d.leave("v5", "t_disputed_stuck")
    d.vertex("v6", "A")
    d.move("v6", "t_finalized", "finalize", cost=p["finalize"], share_to_A=1)
    d.leave("v6", "t_stuck")

    # buyer after a wrong key
    d.vertex("v4", "B")
    d.move("v4", "t_refunded_complaint", "complain", cost=p["complain"])
    d.leave("v4", "v7")
    d.vertex("v7", "A")
    # the contract lets the seller collect once the complaint window closes
    d.move("v7", "t_cheated", "finalize", cost=p["finalize"], share_to_A=1)
    d.leave("v7", "t_wrong_stuck")

    # seller never revealed
    d.vertex("v8", "B")
    d.move("v8", "t_refunded", "refund", cost=p["refund"])
    d.leave("v8", "t_unrefunded")

    for t in ("t_refused", "t_grief", "t_confirmed", "t_disputed", "t_disputed_stuck", "t_finalized",
              "t_stuck", "t_refunded_complaint", "t_cheated", "t_wrong_stuck", "t_refunded",
              "t_unrefunded"):
        d.vertex(t)
    return validate_protocol(d)


def figure2_naive() -> ExchangeProtocol:
    """Data-for-money exchange without a third party; the protocol says "pay first".

    Paying first or asking for the data first are both possible; only the
    pay-then-deliver order is faithful.
    """
    d = ProtocolDraft(players={"A": "buyer", "B": "seller"})
    d.item("money", "A").item("data", "B")
    d.value("A", "money", 80).value("A", "data", 100)
    d.value("B", "money", 80).value("B", "data", 20)
    d.vertex("v0", "A")
    d.move("v0", "v1", "pay", share_to_B=1)
    d.move("v0", "v2", "wait", faithful=False)
    d.vertex("v1", "B")
    d.move("v1", "t_exchanged", "deliver", share_to_A=1)
    d.move("v1", "t_robbed", "keep", faithful=False)
    d.vertex("v2", "B")
    d.move("v2", "v3", "deliver", share_to_A=1, faithful=False)
    d.move("v2", "t_declined", "decline")
    d.vertex("v3", "A")
    d.move("v3", "t_exchanged_late", "pay", share_to_B=1)
    d.move("v3", "t_unpaid", "keep", faithful=False)
    for t in ("t_exchanged", "t_robbed", "t_declined", "t_exchanged_late", "t_unpaid"):
        d.vertex(t)
    return validate_protocol(d)


def shoplifter() -> ExchangeProtocol:
    """A customer (B) may buy or steal; a caught thief cannot walk away."""
    d = ProtocolDraft(players={"A": "shop", "B": "customer"})
    d.item("goods", "A").item("money", "B")
    d.value("A", "goods", 100).value("A", "money", 120)
    d.value("B", "goods", 130).value("B", "money", 120)
    d.vertex("v0", "A")
    d.move("v0", "v1", "open", cost=1)
    d.leave("v0", "t_closed", "close")
    d.vertex("v1", "B")
    d.move("v1", "t_bought", "pay", cost=1, share_to_A=1, share_to_B=1)
    d.move("v1", "v2", "steal", cost=1, share_to_B=1, faithful=False)
    d.vertex("v2", "B")
    d.move("v2", "t_confessed", "confess", cost=1, deposit=150, comp_to_A=150)
    d.move("v2", "t_denied", "not_confess", cost=20, faithful=False)
    for t in ("t_closed", "t_bought", "t_confessed", "t_denied"):
        d.vertex(t)
    return validate_protocol(d)


def deposit_compensated() -> ExchangeProtocol:
    """The initializer deposits up front; the other side is paid from it if the initializer walks away."""
    d = ProtocolDraft(players={"A": "seller", "B": "buyer"})
    d.item("data", "A").item("payment", "B")
    d.value("A", "data", 200).value("A", "payment", 1000)
    d.value("B", "data", 1500).value("B", "payment", 1000)
    d.vertex("v0", "A")
    d.move("v0", "v1", "init", cost=100, deposit=300)
    d.leave("v0", "t_idle")
    d.vertex("v1", "B")
    d.move("v1", "v2", "accept", cost=50)
    d.leave("v1", "v1_left")
    d.vertex("v1_left", "A")
    d.move("v1_left", "t_reclaimed", "reclaim", cost=50, deposit=-300)
    d.leave("v1_left", "t_abandoned")
    d.vertex("v2", "A")
    d.move("v2", "t_swapped", "deliver", cost=50, deposit=-300, share_to_A=1, share_to_B=1)
    d.leave("v2", "v2_left")
    d.vertex("v2_left", "B")
    d.move("v2_left", "t_compensated", "claim", cost=50, comp_to_B=300)
    d.leave("v2_left", "t_unclaimed")
    for t in ("t_idle", "t_reclaimed", "t_abandoned", "t_swapped", "t_compensated", "t_unclaimed"):
        d.vertex(t)
    return validate_protocol(d)


def free_deposit(open_cost=0) -> ExchangeProtocol:
    """Mutual deposits where depositing and withdrawing carry no transaction cost.

    ``open_cost`` is the cost of the initial deposit move; any positive value
    breaks cost fairness for the initializer.
    """
    d = ProtocolDraft(players={"A": "seller", "B": "buyer"})
    d.item("data", "A").item("payment", "B")
    d.value("A", "data", 200).value("A", "payment", 1000)
    d.value("B", "data", 1500).value("B", "payment", 1000)
    d.vertex("v0", "A")
    d.move("v0", "v1", "open", cost=open_cost, deposit=100)
    d.leave("v0", "t_idle")
    d.vertex("v1", "B")
    d.move("v1", "v2", "join", cost=10, deposit=100)
    d.leave("v1", "v1_left")
    d.vertex("v1_left", "A")
    d.move("v1_left", "t_refunded", "refund", deposit=-100)
    d.leave("v1_left", "t_abandoned")
    d.vertex("v2", "A")
    d.move("v2", "v3", "swap", cost=10, deposit=-100, share_to_A=1, share_to_B=1)
    d.leave("v2", "v2_left")
    d.vertex("v3", "B")
    d.move("v3", "t_done", "withdraw", deposit=-100)
    d.leave("v3", "t_forfeited")
    d.vertex("v2_left", "B")
    d.move("v2_left", "t_compensated", "claim", cost=10, deposit=-100, comp_to_B=100)
    d.leave("v2_left", "t_unclaimed")
    for t in ("t_idle", "t_abandoned", "t_refunded", "t_done", "t_forfeited", "t_compensated", "t_unclaimed"):
        d.vertex(t)
    return validate_protocol(d)


def empty_game() -> ExchangeProtocol:
    d = ProtocolDraft()
    d.item("a_item", "A").item("b_item", "B")
    for role in "AB":
        d.value(role, "a_item", 1).value(role, "b_item", 1)
    d.vertex("v0")
    return validate_protocol(d)


BUILTINS: dict[str, Callable[[], ExchangeProtocol]] = {
    "fairswap-eth": fairswap_eth,
    "figure2-naive": figure2_naive,
    "shoplifter": shoplifter,
    "deposit-compensated": deposit_compensated,
    "free-deposit": free_deposit,
    "empty-game": empty_game,
}


def builtin(name: str) -> ExchangeProtocol:
    try:
        factory = BUILTINS[name]
    except KeyError:
        raise KeyError(f"unknown built-in {name!r}; choose from {', '.join(BUILTINS)}") from None
    return factory()
