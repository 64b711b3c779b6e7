"""File format, DOT export, built-in models and fee conversion."""

from .builtins import BUILTINS, builtin, fairswap_eth, free_deposit
from .codec import ParseError, load_protocol, parse_protocol, save_protocol, serialize_protocol
from .dot import export_dot
from .fees import FeeQuote, gas_fee_to_fiat

__all__ = [
    "BUILTINS", "builtin", "fairswap_eth", "free_deposit",
    "ParseError", "load_protocol", "parse_protocol", "save_protocol", "serialize_protocol",
    "export_dot", "FeeQuote", "gas_fee_to_fiat",
]
