"""Turning Gas into dollars, exactly.

The deployment figures for FairSwap are quoted in Gas.  At 60 GWei per Gas
and 3880 USD per Eth, the observed 1,500,000 Gas comes to 349.20 USD, while
the 1,050,000 Gas used in the payoff model comes to 244.44 USD.
"""

from costfair.protolib import gas_fee_to_fiat

for gas in (1_050_000, 1_500_000):
    quote = gas_fee_to_fiat(gas, 60, 3880)
    print(f"{gas:>9,} Gas = {float(quote.eth):.4f} Eth = {quote} USD (exact total {quote.fiat_total})")
