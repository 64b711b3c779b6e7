"""Cost fairness analysis of two-party exchange protocols modelled as extensive games."""

from .fairness import (FairnessVerdict, FullFairness, TheoremReport, asokan_fairness, full_cost_fairness,
                       minmax_double_loop, partial_cost_fairness, partial_cost_fairness_bruteforce,
                       partial_cost_fairness_induction, theorem_premises)
from .generator import GeneratorConfig, InfeasibleConfig, generate_random_protocol
from .model import (Edge, ExchangeProtocol, Item, MoveAttributes, Player, ProtocolDraft, ProtocolError,
                    Strategy, Valuation, Vertex, check_protocol, outgoing_edges, validate_protocol, value_of)
from .protolib import builtin, export_dot, gas_fee_to_fiat, parse_protocol, serialize_protocol
from .semantics import (EscrowTrace, Outcome, PayoffPair, PlayOut, classify_outcome, escrow_trace, payoff,
                        play)
from .strategies import (EnumerationOverflow, StrategySet, can_leave_at_any_time, enumerate_strategies,
                         environment_report, has_nonnegligible_cost, is_faithful_strategy)

__version__ = "0.1.0"
