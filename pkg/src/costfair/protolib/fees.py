"""Gas fee to fiat conversion, exact until the final rounding."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from ..model import Number, exact

GWEI_PER_ETH = 10**9


@dataclass(frozen=True)
class FeeQuote:
    gas: int
    gas_price: Fraction  # GWei per Gas
    fiat_rate: Fraction  # fiat per Eth
    fiat_total: Fraction

    @property
    def eth(self) -> Fraction:
        return self.gas * self.gas_price / GWEI_PER_ETH

    def rounded(self) -> Decimal:
        """Fiat total to cents, half-even (``round`` on a Fraction is half-even)."""
        return Decimal(round(self.fiat_total * 100)).scaleb(-2)

    def __str__(self):
        return f"{self.rounded():.2f}"


def gas_fee_to_fiat(gas: Number, gas_price_gwei: Number, eth_fiat_rate: Number) -> FeeQuote:
    gas_q, price, rate = exact(gas), exact(gas_price_gwei), exact(eth_fiat_rate)
    if gas_q < 0 or price < 0 or rate < 0:
        raise ValueError("gas, gas price and exchange rate must be non-negative")
    if gas_q.denominator != 1:
        raise ValueError("gas must be a whole number of units")
    total = gas_q * price / GWEI_PER_ETH * rate
    return FeeQuote(int(gas_q), price, rate, total)
