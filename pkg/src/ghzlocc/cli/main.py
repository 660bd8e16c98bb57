"""Command line interface: ``ghzlocc <command> [options]``.

Results are written as JSON (or CSV for tabular results) to stdout or ``--out``. Errors are written
to stdout as ``{"error": code, "detail": ...}`` and set the exit code: 2 for malformed input and
violated contracts, 3 for numerical searches that found nothing.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
from pathlib import Path
from typing import Any, Callable, List, Optional, Sequence

import pandas as pd

from ghzlocc.config import RunConfig, Tolerances
from ghzlocc.core.gate_search.abstract_gate_search import GateSearchResult
from ghzlocc.core.gate_search.complex_gate_search import DEFAULT_GRID_SIZE
from ghzlocc.core.gate_search.find_gate_unitary import default_gate_search, find_gate_unitary
from ghzlocc.core.gate_search.gate_search_algorithms import BuiltInGateSearch
from ghzlocc.core.ghz_canonical import StateClass, classify, decompose_ghz
from ghzlocc.core.invariants import compute_invariants
from ghzlocc.core.povm.chain import chain_deterministic
from ghzlocc.core.povm.deterministic_povm import apply_deterministic_povm, build_deterministic_povm
from ghzlocc.core.povm.orbit_curve import orbit_curve
from ghzlocc.dask.verify_campaigns import Campaign, run_campaign
from ghzlocc.errors import GhzLoccError
from ghzlocc.loaders.json import dumps, read_state, to_jsonable
from ghzlocc.protocols.ghz_protocols import TargetComplexSpec, TargetRealSpec, ghz_to_complex, ghz_to_real
from ghzlocc.protocols.reachability import enumerate_reachable_real_targets
from ghzlocc.state.pure_state import Party, PureState3Q
from ghzlocc.state.random_state import Ensemble, random_state

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2


def _config(args: argparse.Namespace) -> RunConfig:
    overrides = {
        tolerance.name: getattr(args, f"tol_{tolerance.name}") for tolerance in dataclasses.fields(Tolerances)
    }
    return RunConfig(
        tolerances=Tolerances().with_overrides(**overrides),
        seed=args.seed,
        grid_size=getattr(args, "grid_size", DEFAULT_GRID_SIZE),
        trial_count=getattr(args, "trials", 1),
        output_path=args.out,
        output_format=args.format,
        probe_lambda=getattr(args, "probe_lambda", 2.0),
        scheduler=getattr(args, "scheduler", "synchronous"),
    )


def cmd_invariants(args: argparse.Namespace, config: RunConfig) -> Any:
    return compute_invariants(read_state(args.state, config.tolerances.norm), config.tolerances)


def cmd_classify(args: argparse.Namespace, config: RunConfig) -> Any:
    state = read_state(args.state, config.tolerances.norm)
    return {"class": classify(state, config.tolerances)}


def cmd_canon(args: argparse.Namespace, config: RunConfig) -> Any:
    state = read_state(args.state, config.tolerances.norm)
    state_class = classify(state, config.tolerances)
    if state_class is not StateClass.GHZ_CLASS:
        return {"class": state_class}
    return decompose_ghz(state, config.tolerances)


def _find_gate(args: argparse.Namespace, state: PureState3Q, config: RunConfig) -> GateSearchResult:
    if args.algorithm is None:
        algorithm = default_gate_search(state, config.tolerances)
    else:
        algorithm = BuiltInGateSearch(args.algorithm)
    if algorithm is BuiltInGateSearch.COMPLEX:
        kwargs = {"grid_size": config.grid_size, "probe_lambda": config.probe_lambda}
    else:
        kwargs = {}
    return find_gate_unitary(state, Party(args.party), algorithm, config.tolerances, **kwargs)


def cmd_gate_find(args: argparse.Namespace, config: RunConfig) -> Any:
    state = read_state(args.state, config.tolerances.norm)
    result = _find_gate(args, state, config)
    output = result.to_dict()
    if result.povm is not None:
        output["povm"] = result.povm.to_dict()
    return output


def cmd_apply_povm(args: argparse.Namespace, config: RunConfig) -> Any:
    state = read_state(args.state, config.tolerances.norm)
    party = Party(args.party)
    gate = _find_gate(args, state, config)
    povm = build_deterministic_povm(state, party, gate.unitary, args.lam, config.tolerances)
    return {"povm": povm, "outcome": apply_deterministic_povm(state, povm, config.tolerances)}


def cmd_curve(args: argparse.Namespace, config: RunConfig) -> Any:
    state = read_state(args.state, config.tolerances.norm)
    party = Party(args.party)
    gate = _find_gate(args, state, config)
    return orbit_curve(gate.transformed, party, args.lambda_max, args.samples, config.tolerances).samples


def cmd_protocol(args: argparse.Namespace, config: RunConfig) -> Any:
    if args.target == "ghz2real":
        spec = TargetRealSpec(args.mu, args.delta, args.delta_prime)
        return ghz_to_real(spec, roles=args.roles, tolerances=config.tolerances)
    spec = TargetComplexSpec(args.delta, args.delta_prime, args.delta_double_prime)
    return ghz_to_complex(spec, roles=args.roles, tolerances=config.tolerances)


def _parse_step(text: str):
    party, _, lam = text.partition(":")
    try:
        return Party(party.upper()), float(lam)
    except ValueError as error:
        raise argparse.ArgumentTypeError(f"step must look like PARTY:LAMBDA, got {text!r}") from error


def cmd_chain(args: argparse.Namespace, config: RunConfig) -> Any:
    state = read_state(args.state, config.tolerances.norm)
    _, trajectory = chain_deterministic(state, args.step, config.tolerances)
    return trajectory


def cmd_random_state(args: argparse.Namespace, config: RunConfig) -> Any:
    return random_state(config.seed, Ensemble(args.ensemble), config.tolerances)


def cmd_reachable(args: argparse.Namespace, config: RunConfig) -> Any:
    state = None if args.state is None else read_state(args.state, config.tolerances.norm)
    return enumerate_reachable_real_targets(state, args.samples, config.seed, config.tolerances)


def cmd_verify(args: argparse.Namespace, config: RunConfig) -> Any:
    return run_campaign(Campaign(args.campaign), config)


def _add_state_argument(parser: argparse.ArgumentParser):
    parser.add_argument("state", help="state JSON file")


def _add_gate_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--party", required=True, choices=[party.value for party in Party])
    parser.add_argument(
        "--algorithm",
        choices=[search.value for search in BuiltInGateSearch],
        help="gate search to use (default: real for real amplitudes, complex otherwise)",
    )
    parser.add_argument("--grid-size", type=int, default=DEFAULT_GRID_SIZE, help="resultant scan points")
    parser.add_argument("--probe-lambda", type=float, default=2.0, help="lambda confirming a gate state")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghzlocc", description="Deterministic local transformations of three-qubit states"
    )
    for tolerance in dataclasses.fields(Tolerances):
        parser.add_argument(
            f"--tol-{tolerance.name}",
            type=float,
            default=None,
            help=f"override of the {tolerance.name} tolerance (default {tolerance.default})",
        )
    parser.add_argument("--seed", type=int, default=0, help="random seed (default: 0)")
    parser.add_argument("--out", "-o", help="output file (default: stdout)")
    parser.add_argument("--format", choices=RunConfig.OUTPUT_FORMATS, default="json")
    parser.add_argument("--verbose", "-v", action="store_true", help="log debug messages to stderr")
    subparsers = parser.add_subparsers(dest="command")

    for name, command, help_text in (
        ("invariants", cmd_invariants, "orbit fingerprint I1..I6"),
        ("classify", cmd_classify, "entanglement class"),
        ("canon", cmd_canon, "GHZ canonical form and Omega"),
    ):
        sub = subparsers.add_parser(name, help=help_text)
        _add_state_argument(sub)
        sub.set_defaults(func=command)

    sub = subparsers.add_parser("gate-find", help="local unitary giving a gate state")
    _add_state_argument(sub)
    _add_gate_arguments(sub)
    sub.set_defaults(func=cmd_gate_find)

    sub = subparsers.add_parser("apply-povm", help="deterministic measurement of parameter lambda")
    _add_state_argument(sub)
    _add_gate_arguments(sub)
    sub.add_argument("--lambda", dest="lam", type=float, required=True, help="ratio y/x, at least 1")
    sub.set_defaults(func=cmd_apply_povm)

    sub = subparsers.add_parser("curve", help="outcome invariants as functions of lambda")
    _add_state_argument(sub)
    _add_gate_arguments(sub)
    sub.add_argument("--lambda-max", type=float, default=10.0)
    sub.add_argument("--samples", type=int, default=50)
    sub.set_defaults(func=cmd_curve)

    sub = subparsers.add_parser("protocol", help="GHZ to a real or complex target on every branch")
    sub.add_argument("target", choices=["ghz2real", "ghz2complex"])
    sub.add_argument("--mu", type=float, help="ghz2real: weight of |000> in [1/sqrt(2), 1)")
    sub.add_argument("--delta", type=float, required=True)
    sub.add_argument("--delta-prime", type=float, required=True)
    sub.add_argument("--delta-double-prime", type=float, help="ghz2complex: Alice's angle")
    sub.add_argument("--roles", default="ABC", help="physical parties playing roles A, B, C")
    sub.set_defaults(func=cmd_protocol)

    sub = subparsers.add_parser("chain", help="rounds of deterministic measurements")
    _add_state_argument(sub)
    sub.add_argument(
        "--step", type=_parse_step, action="append", required=True, help="PARTY:LAMBDA, repeatable"
    )
    sub.set_defaults(func=cmd_chain)

    sub = subparsers.add_parser("random-state", help="seeded random state")
    sub.add_argument("--ensemble", choices=[ensemble.value for ensemble in Ensemble], default="complex_haar")
    sub.set_defaults(func=cmd_random_state)

    sub = subparsers.add_parser("reachable", help="real targets reachable from a GHZ-orbit state")
    sub.add_argument("state", nargs="?", help="state JSON file (default: the GHZ state)")
    sub.add_argument("--samples", type=int, default=4)
    sub.set_defaults(func=cmd_reachable)

    sub = subparsers.add_parser("verify", help="seeded verification campaign")
    sub.add_argument("campaign", choices=[campaign.value for campaign in Campaign])
    sub.add_argument("--trials", type=int, default=100)
    sub.add_argument("--grid-size", type=int, default=DEFAULT_GRID_SIZE)
    sub.add_argument("--probe-lambda", type=float, default=2.0)
    sub.add_argument("--scheduler", choices=RunConfig.SCHEDULERS, default="synchronous")
    sub.set_defaults(func=cmd_verify)
    return parser


def render(result: Any, output_format: str) -> str:
    """JSON text, or CSV of the tabular part of a result"""
    if output_format == "json":
        return dumps(result)
    if isinstance(result, pd.DataFrame):
        table = result
    elif hasattr(result, "trials"):
        table = result.trials
    elif hasattr(result, "members"):
        table = result.members
    else:
        table = pd.json_normalize(to_jsonable(result))
    return table.to_csv(index=False)


def _emit(text: str, path: Optional[str]):
    if path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(path).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")


def _validate(args: argparse.Namespace, parser: argparse.ArgumentParser):
    if args.command == "protocol":
        if args.target == "ghz2real" and args.mu is None:
            parser.error("ghz2real needs --mu")
        if args.target == "ghz2complex" and args.delta_double_prime is None:
            parser.error("ghz2complex needs --delta-double-prime")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if args.command is None:
        parser.print_help()
        return EXIT_OK
    _validate(args, parser)
    command: Callable[[argparse.Namespace, RunConfig], Any] = args.func
    try:
        config = _config(args)
        result = command(args, config)
        text = render(result, config.output_format)
    except GhzLoccError as error:
        logger.debug("%s failed", args.command, exc_info=True)
        _emit(dumps(error.to_dict()), None)
        return error.exit_code
    except (ValueError, OSError) as error:
        _emit(dumps({"error": type(error).__name__, "detail": str(error)}), None)
        return EXIT_USAGE
    _emit(text, config.output_path)
    return EXIT_OK


def run(argv: Optional[List[str]] = None):
    sys.exit(main(argv))
