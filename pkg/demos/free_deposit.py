"""Making an exchange cost-fair with free deposits.

When the opening deposit costs nothing, neither side can be made to pay for
a failed exchange.  Any positive fee on that first move brings the
impossibility back.
"""

from fractions import Fraction

from costfair import environment_report, full_cost_fairness
from costfair.protolib.builtins import free_deposit

fair = free_deposit()
print("free-deposit, opening move costs 0")
print(f"  non-negligible cost environment: {environment_report(fair).nonnegligible_cost}")
for verdict in full_cost_fairness(fair, method="bruteforce"):
    print(f"  {verdict.predicate}: holds={verdict.holds}, worst case {verdict.worst_case_value}")

for fee in (Fraction(1, 100), 1, 25):
    verdicts = full_cost_fairness(free_deposit(open_cost=fee), method="bruteforce")
    seller = verdicts.favoring_A
    print(f"opening fee {fee}: full cost fairness {verdicts.holds}; seller's worst case {seller.worst_case_value}"
          f" via {seller.counterexample.render_path()}")
