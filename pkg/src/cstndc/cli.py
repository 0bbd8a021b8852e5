"""Command-line surface.

Subcommands: parse, check-stn, check-hytn, check-eps-dc, check-dc,
check-pi-dc, validate-strategy, generate. Every check prints one structured
report document (JSON by default, ``--format text`` for a summary) on stdout.

Exit codes: 0 the property holds / the input is valid; 3 the property fails;
2 usage or parse error; 4 well-definedness violation; 5 the two independent
ordered-consistency procedures disagree (``check-pi-dc --oracle``).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import fileio
from .epsdc import check_dc, check_eps_dc, epsilon_hat
from .fileio import FormatError, Report
from .generate import random_cstn
from .hytn import Feasible, solve_hytn, stn_consistency
from .labels import LabelError, Scenario
from .network import Cstn, restrict, wd_check
from .pstree import CapExceededError, check_pi_dc_exhaustive
from .reduction import check_pi_dc, relax_cstn
from .strategy import (
    MalformedPositionsError,
    PiExecStrategy,
    StrategyDomainError,
    validate_es,
    validate_pi_es,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FAILS = 3
EXIT_WD = 4
EXIT_DISAGREE = 5


def _emit(report: Report, fmt: str) -> None:
    if fmt == "text":
        print(report.to_text())
    else:
        print(json.dumps(report.to_doc(), indent=2))


def _load_checked(path: str, fmt: str, prop: str, t0: float) -> Cstn | int:
    """Load a network and gate it on well-definedness (exit 4 on violations)."""
    g = fileio.load_cstn(path)
    report = wd_check(g)
    if not report.ok:
        _emit(
            Report(
                property=prop,
                verdict="invalid",
                witnesses=fileio.witnesses_from_report(report),
                seconds=time.perf_counter() - t0,
            ),
            fmt,
        )
        return EXIT_WD
    return g


def _strategy_payload(g: Cstn, sigma) -> dict:
    return fileio.strategy_to_doc(g, sigma)


def _cmd_parse(args) -> int:
    t0 = time.perf_counter()
    g = _load_checked(args.network, args.format, "validate", t0)
    if isinstance(g, int):
        return g
    _emit(
        Report(
            property="validate",
            verdict="yes",
            parameters={"nodes": len(g.nodes), "letters": len(g.letters), "constraints": len(g.constraints)},
            seconds=time.perf_counter() - t0,
        ),
        args.format,
    )
    return EXIT_OK


def _cmd_check_stn(args) -> int:
    t0 = time.perf_counter()
    g = fileio.load_cstn(args.network)
    if g.letters:
        raise FormatError("check-stn needs a network without letters; use the dc checks instead")
    stn = restrict(g, Scenario(()))
    result = stn_consistency(stn)
    ok = isinstance(result, Feasible)
    _emit(
        Report(
            property="stn",
            verdict="yes" if ok else "no",
            strategy={"times": result.schedule} if ok else None,
            witnesses=[] if ok else [{"kind": "negative-cycle", "message": "no feasible schedule", "details": {"nodes": sorted(result.certificate)}}],
            seconds=time.perf_counter() - t0,
        ),
        args.format,
    )
    return EXIT_OK if ok else EXIT_FAILS


def _cmd_check_hytn(args) -> int:
    t0 = time.perf_counter()
    h = fileio.load_hytn(args.network)
    result = solve_hytn(h)
    ok = isinstance(result, Feasible)
    _emit(
        Report(
            property="hytn",
            verdict="yes" if ok else "no",
            parameters={"nodes": len(h.nodes), "hyperarcs": len(h.hyperarcs), "size": h.size()},
            strategy={"times": result.schedule} if ok else None,
            witnesses=[] if ok else [{"kind": "divergence", "message": "values pumped past the feasibility bound", "details": {"nodes": sorted(result.certificate)}}],
            seconds=time.perf_counter() - t0,
        ),
        args.format,
    )
    return EXIT_OK if ok else EXIT_FAILS


def _cmd_check_eps_dc(args) -> int:
    t0 = time.perf_counter()
    eps = fileio.parse_fraction(args.epsilon)
    if eps < 0:
        raise FormatError("epsilon must be nonnegative")
    g = _load_checked(args.network, args.format, "eps-dc", t0)
    if isinstance(g, int):
        return g
    sigma = check_eps_dc(g, eps)
    _emit(
        Report(
            property="eps-dc",
            verdict="yes" if sigma else "no",
            parameters={"epsilon": str(eps), "scale": eps.denominator},
            strategy=_strategy_payload(g, sigma) if sigma else None,
            seconds=time.perf_counter() - t0,
        ),
        args.format,
    )
    return EXIT_OK if sigma else EXIT_FAILS


def _cmd_check_dc(args) -> int:
    t0 = time.perf_counter()
    g = _load_checked(args.network, args.format, "dc", t0)
    if isinstance(g, int):
        return g
    eps = epsilon_hat(g) if g.nodes else None
    sigma = check_dc(g)
    _emit(
        Report(
            property="dc",
            verdict="yes" if sigma else "no",
            parameters={"epsilon_hat": str(eps) if eps else None, "scale": eps.denominator if eps else 1},
            strategy=_strategy_payload(g, sigma) if sigma else None,
            seconds=time.perf_counter() - t0,
        ),
        args.format,
    )
    return EXIT_OK if sigma else EXIT_FAILS


def _cmd_check_pi_dc(args) -> int:
    t0 = time.perf_counter()
    prop = "pi-dc-oracle" if args.oracle else "pi-dc"
    g = _load_checked(args.network, args.format, prop, t0)
    if isinstance(g, int):
        return g
    params = {}
    if g.nodes:
        relaxed = relax_cstn(g)
        params = {
            "gamma": str(relaxed.gamma),
            "scale": relaxed.scale,
            "epsilon_hat": str(epsilon_hat(g)),
        }
    sigma = check_pi_dc(g)
    if args.oracle:
        oracle = check_pi_dc_exhaustive(g, max_letters=args.max_letters)
        params["oracle_verdict"] = "yes" if oracle else "no"
        if oracle is not None and oracle[1] is not None:
            params["oracle_tree"] = oracle[1].render()
        if (sigma is None) != (oracle is None):
            _emit(
                Report(
                    property=prop,
                    verdict="no" if sigma is None else "yes",
                    parameters=params,
                    witnesses=[{
                        "kind": "oracle-disagreement",
                        "message": "reduction and exhaustive procedures disagree",
                        "details": {"reduction": "yes" if sigma else "no", "exhaustive": "yes" if oracle else "no"},
                    }],
                    seconds=time.perf_counter() - t0,
                ),
                args.format,
            )
            return EXIT_DISAGREE
    _emit(
        Report(
            property=prop,
            verdict="yes" if sigma else "no",
            parameters=params,
            strategy=_strategy_payload(g, sigma) if sigma else None,
            seconds=time.perf_counter() - t0,
        ),
        args.format,
    )
    return EXIT_OK if sigma else EXIT_FAILS


def _cmd_validate_strategy(args) -> int:
    t0 = time.perf_counter()
    g = _load_checked(args.network, args.format, "validate", t0)
    if isinstance(g, int):
        return g
    ordered = args.mode == "pi"
    sigma = fileio.load_strategy(args.strategy, g, ordered)
    if ordered:
        report = validate_pi_es(g, sigma)
    elif args.mode == "eps":
        if args.epsilon is None:
            raise FormatError("mode 'eps' needs --epsilon N/D")
        report = validate_es(g, sigma, "eps", eps=fileio.parse_fraction(args.epsilon))
    else:
        report = validate_es(g, sigma, args.mode)
    _emit(
        Report(
            property="validate",
            verdict="yes" if report.ok else "no",
            parameters={"mode": args.mode, **({"epsilon": args.epsilon} if args.epsilon else {})},
            witnesses=fileio.witnesses_from_report(report),
            seconds=time.perf_counter() - t0,
        ),
        args.format,
    )
    return EXIT_OK if report.ok else EXIT_FAILS


def _cmd_generate(args) -> int:
    g = random_cstn(
        args.seed,
        max_letters=args.max_letters,
        max_nodes=args.max_nodes,
        max_weight=args.max_weight,
    )
    doc = fileio.cstn_to_doc(g)
    text = json.dumps(doc, indent=2)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cstndc",
        description="Dynamic-consistency checks for conditional temporal networks",
    )
    parser.add_argument("--format", choices=("structured", "text"), default="structured")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a network file and check well-definedness")
    p.add_argument("network")
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("check-stn", help="consistency of a letter-free network")
    p.add_argument("network")
    p.set_defaults(func=_cmd_check_stn)

    p = sub.add_parser("check-hytn", help="consistency of a hyperarc network file")
    p.add_argument("network")
    p.set_defaults(func=_cmd_check_hytn)

    p = sub.add_parser("check-eps-dc", help="dynamic consistency at a fixed reaction time")
    p.add_argument("--epsilon", required=True, metavar="N/D")
    p.add_argument("network")
    p.set_defaults(func=_cmd_check_eps_dc)

    p = sub.add_parser("check-dc", help="dynamic consistency")
    p.add_argument("network")
    p.set_defaults(func=_cmd_check_dc)

    p = sub.add_parser("check-pi-dc", help="ordered dynamic consistency (instantaneous reactions)")
    p.add_argument("--oracle", action="store_true", help="cross-validate with the exhaustive tree search")
    p.add_argument("--max-letters", type=int, default=4)
    p.add_argument("network")
    p.set_defaults(func=_cmd_check_pi_dc)

    p = sub.add_parser("validate-strategy", help="run the brute-force validators on a strategy file")
    p.add_argument("--mode", choices=("viability", "dynamic", "eps", "pi"), required=True)
    p.add_argument("--epsilon", metavar="N/D")
    p.add_argument("network")
    p.add_argument("strategy")
    p.set_defaults(func=_cmd_validate_strategy)

    p = sub.add_parser("generate", help="emit a seeded random well-defined network")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-letters", type=int, default=2)
    p.add_argument("--max-nodes", type=int, default=5)
    p.add_argument("--max-weight", type=int, default=3)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_generate)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (FormatError, LabelError, StrategyDomainError, MalformedPositionsError,
            CapExceededError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
