"""Why a FairSwap seller can be griefed.

Builds the FairSwap cost model, asks whether the seller is protected against
transaction-cost losses, and walks through the counterexample the checker
finds.  Then repeats the question for the buyer.
"""

from costfair import builtin, full_cost_fairness, payoff, theorem_premises
from costfair.model import Strategy
from costfair.protolib import gas_fee_to_fiat

fs = builtin("fairswap-eth")
print(f"FairSwap model: {len(fs.vertices)} vertices, {len(fs.edges)} moves, unit {fs.currency_unit}")

seller, buyer = full_cost_fairness(fs, method="bruteforce")
print(f"\nIs the seller cost-fair?  {seller.holds}")
print(f"  worst case for the seller: {seller.worst_case_value} Gas")
print(f"  adversary (buyer) strategy: {seller.counterexample.adversary.render()}")
print(f"  realized path:             {seller.counterexample.render_path()}")

# replaying the grieving attack by hand gives the same numbers
grief = payoff(fs, Strategy.of("A", {"v0": "init"}), Strategy.of("B", {"v1": "leave"}))
print(f"  replayed payoff (seller, buyer): ({grief.p_A}, {grief.p_B})")
print(f"  at 60 GWei/Gas and 3880 USD/Eth that is {gas_fee_to_fiat(-grief.p_A, 60, 3880)} USD lost")

print(f"\nIs the buyer cost-fair?  {buyer.holds}")
print(f"  worst case for the buyer: {buyer.worst_case_value} Gas along {buyer.counterexample.render_path()}")

report = theorem_premises(fs)
print("\nThe seller initializes and the buyer can leave at any time, and every move costs Gas:")
print(f"  theorem 1 premises hold: {report.theorem1_premises_hold}")
print(f"  predicted failures:      {', '.join(report.predicted_failures)}")
