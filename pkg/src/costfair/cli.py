"""Command line interface.

Exit status: 0 when every requested check holds (or the command succeeded),
1 when a requested check fails, 2 on invalid input, 3 when ``--method both``
finds the two solvers disagreeing.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Optional, Sequence

from .fairness import (METHODS, NEG_INF, FairnessVerdict, asokan_fairness, partial_cost_fairness,
                       theorem_premises)
from .generator import GeneratorConfig, InfeasibleConfig, generate_random_protocol
from .model import ExchangeProtocol, ProtocolError, Strategy, opponent, strategy_problems
from .protolib import BUILTINS, ParseError, builtin, export_dot, gas_fee_to_fiat, load_protocol
from .protolib.codec import render_number, serialize_protocol
from .semantics import StrategyError, escrow_trace, path_payoff, play
from .strategies import EnumerationOverflow, environment_report

REPORT_SCHEMA = "costfair.analysis/1"
CHECKS = ("partial-cf:A", "partial-cf:B", "full-cf", "fairness:A", "fairness:B", "closed-system", "env",
          "theorems")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_DISAGREE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _money(value) -> Optional[str]:
    if value is None:
        return None
    if value == NEG_INF:
        return "-inf"
    return render_number(Fraction(value))


def _ordinal(n: int) -> str:
    words = {1: "first", 2: "second", 3: "third", 4: "fourth", 5: "fifth"}
    return words.get(n, f"{n}th")


def describe_counterexample(protocol: ExchangeProtocol, verdict: FairnessVerdict) -> Optional[str]:
    cx = verdict.counterexample
    if cx is None:
        return None
    adversary = opponent(verdict.player)
    name = protocol.name_of(adversary)
    if not cx.path:
        return f"{name} plays {cx.adversary.render() or '(nothing)'}; no faithful response exists"
    count = 0
    for e in cx.path:
        if protocol.owner(e.source) == adversary:
            count += 1
            if e.leave:
                return f"{name} leaves at {_ordinal(count)} decision vertex ({e.source})"
    return f"{name} plays {','.join(f'{e.source}={e.label}' for e in cx.path if protocol.owner(e.source) == adversary)}"


def _verdict_record(protocol, check, verdict: FairnessVerdict) -> dict:
    cx = verdict.counterexample
    record = {
        "check": check,
        "predicate": verdict.predicate,
        "method": verdict.method,
        "holds": verdict.holds,
        "worst_case_value": _money(verdict.worst_case_value),
        "reason": verdict.reason,
        "counterexample": None,
    }
    if cx is not None:
        record["counterexample"] = {
            "path": cx.render_path(),
            "adversary": cx.adversary.render(),
            "response": cx.response.render() if cx.response else None,
            "payoff": [_money(cx.payoff.p_A), _money(cx.payoff.p_B)] if cx.payoff else None,
            "summary": describe_counterexample(protocol, verdict),
        }
    return record


def _load(args) -> tuple[ExchangeProtocol, str]:
    if getattr(args, "builtin", None):
        try:
            return builtin(args.builtin), f"builtin:{args.builtin}"
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
    if not getattr(args, "file", None):
        raise InputError("give a protocol file or --builtin NAME")
    try:
        return load_protocol(args.file), args.file
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
    except (ParseError, ProtocolError) as exc:
        raise InputError(f"{args.file}: {exc}") from None


def _role(protocol: ExchangeProtocol, key: str) -> str:
    try:
        return protocol.role(key)
    except KeyError:
        raise InputError(f"unknown player {key!r}; use A, B or a player name") from None


def _run_fairness(protocol, check, favored, kind, methods, cap):
    records, disagree = [], False
    for method in methods:
        started = time.perf_counter()
        if kind == "partial":
            verdict = partial_cost_fairness(protocol, favored, method, cap)
        else:
            verdict = asokan_fairness(protocol, favored, method, cap)
        records.append((_verdict_record(protocol, check, verdict), time.perf_counter() - started))
    if len(records) == 2:
        a, b = records[0][0], records[1][0]
        disagree = (a["holds"], a["worst_case_value"]) != (b["holds"], b["worst_case_value"])
    return records, disagree


def analyze(protocol: ExchangeProtocol, source: str, checks: Sequence[str], method: str = "induction",
            cap: Optional[int] = None) -> tuple[dict, int]:
    """Run ``checks`` and return (report, exit status)."""
    methods = METHODS if method == "both" else (method,)
    env = environment_report(protocol)
    report = {
        "schema": REPORT_SCHEMA,
        "protocol": source,
        "players": {p.role: p.name for p in protocol.players},
        "currency": protocol.currency_unit,
        "environment": {
            "nonnegligible_cost": env.nonnegligible_cost,
            "can_leave_any_time_A": env.can_leave_any_time_A,
            "can_leave_any_time_B": env.can_leave_any_time_B,
            "initializer": env.initializer,
        },
        "checks": [],
        "timing": {},
    }
    status, disagree = EXIT_OK, False
    for check in checks:
        name, _, who = check.partition(":")
        started = time.perf_counter()
        if name in ("partial-cf", "fairness"):
            favored = _role(protocol, who)
            kind = "partial" if name == "partial-cf" else "asokan"
            records, bad = _run_fairness(protocol, f"{name}:{favored}", favored, kind, methods, cap)
            disagree |= bad
            for record, seconds in records:
                report["checks"].append(record)
                report["timing"][f"{record['check']}/{record['method']}"] = round(seconds, 6)
                if not record["holds"]:
                    status = EXIT_FAIL
            continue
        if name == "full-cf":
            parts = []
            for role in "AB":
                records, bad = _run_fairness(protocol, f"partial-cf:{role}", role, "partial", methods, cap)
                disagree |= bad
                parts += [r for r, _ in records]
            holds = all(r["holds"] for r in parts)
            report["checks"].append({"check": "full-cf", "holds": holds, "parts": parts})
        elif name == "closed-system":
            worst = None
            for t in protocol.terminals():
                trace = escrow_trace(protocol, protocol.path_to(t.id))
                low = min(trace.balances, default=Fraction(0))
                if worst is None or low < worst[0]:
                    worst = (low, t.id)
            holds = worst[0] >= 0
            report["checks"].append({"check": "closed-system", "holds": holds,
                                     "min_escrow_balance": _money(worst[0]), "at_terminal": worst[1]})
        elif name == "env":
            holds = True
            report["checks"].append({"check": "env", "holds": True, **report["environment"]})
        elif name == "theorems":
            premises = theorem_premises(protocol)
            rows = []
            for predicate in premises.predicted_failures:
                if predicate == "full-cf":
                    actual = all(partial_cost_fairness(protocol, r, methods[0], cap).holds for r in "AB")
                else:
                    actual = partial_cost_fairness(protocol, predicate[-1], methods[0], cap).holds
                rows.append({"predicate": predicate, "predicted": "fails",
                             "verdict": "holds" if actual else "fails", "agrees": not actual})
            holds = all(r["agrees"] for r in rows)
            report["checks"].append({
                "check": "theorems", "holds": holds,
                "theorem1_premises_hold": premises.theorem1_premises_hold,
                "theorem2_premises_hold": premises.theorem2_premises_hold,
                "sequential": premises.sequential,
                "fair_exchange": premises.fair_exchange,
                "predictions": rows,
                "notes": list(premises.notes),
            })
        else:
            raise InputError(f"unknown check {check!r}; choose from {', '.join(CHECKS)}")
        report["timing"][check] = round(time.perf_counter() - started, 6)
        if not report["checks"][-1]["holds"]:
            status = EXIT_FAIL
    if disagree:
        status = EXIT_DISAGREE
        report["solver_disagreement"] = True
    return report, status


def render_text(report: dict) -> str:
    env = report["environment"]
    players = report["players"]
    lines = [f"protocol: {report['protocol']}  (A={players['A']}, B={players['B']}, unit={report['currency']})",
             f"environment: non-negligible cost={env['nonnegligible_cost']}, "
             f"A can leave any time={env['can_leave_any_time_A']}, "
             f"B can leave any time={env['can_leave_any_time_B']}, initializer={env['initializer']}"]

    def verdict_lines(record, indent="  "):
        out = [f"{indent}{record['check']} [{record['method']}]: holds={record['holds']} "
               f"worst_case={record['worst_case_value']}"]
        if record.get("reason"):
            out.append(f"{indent}  reason: {record['reason']}")
        cx = record.get("counterexample")
        if cx:
            out.append(f"{indent}  counterexample: {cx['summary']}")
            out.append(f"{indent}  path: {cx['path']}")
            if cx["payoff"]:
                out.append(f"{indent}  payoff: ({cx['payoff'][0]}, {cx['payoff'][1]})")
        return out

    for record in report["checks"]:
        check = record["check"]
        if "predicate" in record:
            lines += verdict_lines(record)
        elif check == "full-cf":
            lines.append(f"  full-cf: holds={record['holds']}")
            for part in record["parts"]:
                lines += verdict_lines(part, "    ")
        elif check == "closed-system":
            lines.append(f"  closed-system: holds={record['holds']} min_escrow_balance="
                         f"{record['min_escrow_balance']} at {record['at_terminal']}")
        elif check == "env":
            lines.append("  env: reported above")
        elif check == "theorems":
            lines.append(f"  theorems: holds={record['holds']} theorem1 premises={record['theorem1_premises_hold']} "
                         f"theorem2 premises={record['theorem2_premises_hold']} sequential={record['sequential']} "
                         f"fair_exchange={record['fair_exchange']}")
            for row in record["predictions"]:
                lines.append(f"    {row['predicate']}: predicted {row['predicted']}, verdict {row['verdict']}, "
                             f"agrees={row['agrees']}")
            for note in record["notes"]:
                lines.append(f"    note: {note}")
    if report.get("solver_disagreement"):
        lines.append("SOLVER DISAGREEMENT: bruteforce and induction differ")
    return "\n".join(lines) + "\n"


def _parse_strategy(protocol: ExchangeProtocol, role: str, text: str) -> Strategy:
    mapping = {}
    for part in filter(None, (p.strip() for p in (text or "").split(","))):
        vertex, sep, label = part.partition("=")
        if not sep:
            raise InputError(f"strategy entries are vertex=move, got {part!r}")
        mapping[vertex.strip()] = label.strip()
    strategy = Strategy.of(role, mapping)
    problems = [p for p in strategy_problems(protocol, strategy) if "domain" not in p]
    if problems:
        raise InputError(f"strategy for {role}: {'; '.join(problems)}")
    return strategy


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def _add_source(parser):
    parser.add_argument("file", nargs="?", help="protocol document (.xproto)")
    parser.add_argument("--builtin", metavar="NAME", help=f"use a built-in model: {', '.join(BUILTINS)}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="costfair", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a protocol document")
    _add_source(p)

    p = sub.add_parser("analyze", help="decide fairness predicates")
    _add_source(p)
    p.add_argument("--check", action="append", required=True,
                   help=f"one of {', '.join(CHECKS)}; repeat or comma-separate")
    p.add_argument("--method", choices=METHODS + ("both",), default="induction")
    p.add_argument("--report", choices=("text", "json"), default="text")
    p.add_argument("--cap", type=int, help="strategy enumeration cap (default from COSTFAIR_ENUM_CAP or 10^6)")

    p = sub.add_parser("payoff", help="play a strategy pair")
    _add_source(p)
    p.add_argument("--strategy-a", default="", metavar="V=MOVE,...")
    p.add_argument("--strategy-b", default="", metavar="V=MOVE,...")

    p = sub.add_parser("export-dot", help="write the game tree as Graphviz DOT")
    _add_source(p)
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--annotate", default="payoffs,faithfulness,costs")

    p = sub.add_parser("examples", help="list or write built-in models")
    p.add_argument("action", choices=("list", "write"))
    p.add_argument("name", nargs="?")
    p.add_argument("-o", "--output", default="-")

    p = sub.add_parser("generate", help="write a random protocol")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--branching", type=int, required=True)
    p.add_argument("--theorem1-premises", action="store_true")
    p.add_argument("--theorem2-premises", action="store_true", help="both players can leave at any time")
    p.add_argument("--no-fair-exchange", action="store_true")
    p.add_argument("--initializer", choices=("A", "B"))
    p.add_argument("-o", "--output", default="-")

    p = sub.add_parser("fee-convert", help="convert a Gas amount to fiat")
    p.add_argument("--gas", required=True)
    p.add_argument("--gas-price", required=True, help="GWei per Gas")
    p.add_argument("--rate", required=True, help="fiat per Eth")
    return parser


def _command(args) -> int:
    out = sys.stdout
    if args.command == "validate":
        protocol, source = _load(args)
        out.write(f"{source}: valid ({len(protocol.vertices)} vertices, {len(protocol.edges)} moves)\n")
        for w in protocol.warnings:
            out.write(f"warning: {w}\n")
        return EXIT_OK
    if args.command == "analyze":
        protocol, source = _load(args)
        checks = [c.strip() for chunk in args.check for c in chunk.split(",") if c.strip()]
        report, status = analyze(protocol, source, checks, args.method, args.cap)
        if args.report == "json":
            out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
        else:
            out.write(render_text(report))
        return status
    if args.command == "payoff":
        protocol, _ = _load(args)
        sa = _parse_strategy(protocol, "A", args.strategy_a)
        sb = _parse_strategy(protocol, "B", args.strategy_b)
        try:
            outcome = play(protocol, sa, sb)
        except StrategyError as exc:
            raise InputError(str(exc)) from None
        p = path_payoff(protocol, outcome)
        path = ",".join(f"{e.source}={e.label}" for e in outcome.path)
        out.write(f"path: {path or '(empty)'}\nterminal: {outcome.terminal.id}\n"
                  f"payoff: ({render_number(p.p_A)}, {render_number(p.p_B)})\n")
        return EXIT_OK
    if args.command == "export-dot":
        protocol, _ = _load(args)
        annotate = [a for a in args.annotate.split(",") if a]
        try:
            _write(args.output, export_dot(protocol, annotate))
        except ValueError as exc:
            raise InputError(str(exc)) from None
        return EXIT_OK
    if args.command == "examples":
        if args.action == "list":
            for name in BUILTINS:
                out.write(name + "\n")
            return EXIT_OK
        if not args.name:
            raise InputError("examples write needs a model name")
        try:
            protocol = builtin(args.name)
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
        _write(args.output, serialize_protocol(protocol))
        return EXIT_OK
    if args.command == "generate":
        config = GeneratorConfig(
            depth=args.depth, branching=args.branching, seed=args.seed,
            enforce_theorem1_premises=args.theorem1_premises,
            enforce_fair_exchange=not args.no_fair_exchange,
            both_can_leave=args.theorem2_premises, initializer=args.initializer)
        try:
            protocol = generate_random_protocol(config)
        except InfeasibleConfig as exc:
            raise InputError(f"infeasible configuration: {exc}") from None
        _write(args.output, serialize_protocol(protocol))
        return EXIT_OK
    if args.command == "fee-convert":
        try:
            quote = gas_fee_to_fiat(args.gas, args.gas_price, args.rate)
        except (TypeError, ValueError) as exc:
            raise InputError(str(exc)) from None
        out.write(f"{quote}\n")
        return EXIT_OK
    raise InputError(f"unknown command {args.command}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return _command(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except EnumerationOverflow as exc:
        sys.stderr.write(f"error: {exc}; try --method induction\n")
        return EXIT_INPUT


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
