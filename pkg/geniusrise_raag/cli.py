# 🧠 Geniusrise
# Copyright (C) 2023  geniusrise.ai
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#  http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import argparse
import json
import sys
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Any, Callable, Dict, List, Optional

from pydantic import ValidationError
from rich.console import Console
from rich_argparse import RichHelpFormatter

from geniusrise_raag.errors import NotOutside, ObstructionPresent, RAAGError
from geniusrise_raag.graphs.core import load_graph, parse_graph, to_dot
from geniusrise_raag.graphs.decomposition import decompose, group_name, render_structure, tree_to_dict
from geniusrise_raag.graphs.obstruction import find_induced_hole, separability_verdict
from geniusrise_raag.groups.coset import DEFAULT_MAX_COSETS
from geniusrise_raag.groups.michailova import ToddCoxeterOracle, lh_contains, load_presentation, parse_pair
from geniusrise_raag.groups.separation import (
    DEFAULT_SEED,
    DESK_SUITE,
    SearchBudget,
    SeparationStatus,
    separate_cyclic,
    verify_witness,
)
from geniusrise_raag.groups.words import format_word, normal_form, parse_word, raag_presentation, words_equal
from geniusrise_raag.log import set_level, setup_logger

log = setup_logger(__name__)


class ExitCode(IntEnum):
    POSITIVE = 0
    INPUT_ERROR = 2
    NEGATIVE = 3
    EXHAUSTED = 4
    INCONCLUSIVE = 5


@dataclass
class OutputEnvelope:
    """
    The result of one command.

    `status` is `ok` whenever the command produced an answer (positive, negative or inconclusive) and
    `error` when it could not (bad input, exhausted oracle). The exit code follows `ExitCode`.
    """

    command: str
    exit_code: ExitCode
    payload: Dict[str, Any] = field(default_factory=dict)
    text: str = ""

    @property
    def status(self) -> str:
        return "error" if self.exit_code in (ExitCode.INPUT_ERROR, ExitCode.EXHAUSTED) else "ok"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "status": self.status,
            "exit_code": int(self.exit_code),
            "payload": self.payload,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)


def _error(command: str, e: Exception) -> OutputEnvelope:
    code = ExitCode(getattr(e, "exit_code", ExitCode.INPUT_ERROR))
    return OutputEnvelope(command, code, {"error": type(e).__name__, "message": str(e)}, f"error: {e}")


def cmd_analyze(path: str, allow_empty: bool = False, emit_dot: bool = False) -> OutputEnvelope:
    """Subgroup separability verdict with its certificate: exit 0 separable, 3 not separable."""
    g = load_graph(path, allow_empty=allow_empty)
    verdict = separability_verdict(g)
    payload: Dict[str, Any] = {"graph": {"vertices": list(g.vertices), "edges": [list(e) for e in g.edge_list()]}}
    payload.update(verdict.to_dict())
    if emit_dot:
        payload["dot"] = to_dot(g)

    if verdict.separable:
        text = f"separable: {payload['structure']}  [{payload['group']}]"
        code = ExitCode.POSITIVE
    else:
        witness = verdict.witness
        hole = find_induced_hole(g)
        if hole is not None:
            payload["hole"] = list(hole)
        text = (
            f"not separable: induced {witness.kind.value} {' '.join(witness.vertices)} "  # type: ignore
            f"generating {witness.group_name} {witness.obstruction_group.render()}"  # type: ignore
        )
        code = ExitCode.NEGATIVE
    if emit_dot:
        text = f"{text}\n{payload['dot']}"
    log.info(f"Analyzed {path}: {'separable' if verdict.separable else 'not separable'}")
    return OutputEnvelope("analyze", code, payload, text)


def cmd_decompose(path: str, allow_empty: bool = False) -> OutputEnvelope:
    g = load_graph(path, allow_empty=allow_empty)
    try:
        tree = decompose(g)
    except ObstructionPresent as e:
        return OutputEnvelope(
            "decompose",
            ExitCode.NEGATIVE,
            {"witness": e.witness.to_dict()},
            f"no decomposition: {e}",
        )
    payload = {"tree": tree_to_dict(tree), "structure": render_structure(tree), "group": group_name(tree)}
    return OutputEnvelope("decompose", ExitCode.POSITIVE, payload, f"{payload['structure']}  [{payload['group']}]")


def cmd_present(path: str, allow_empty: bool = False) -> OutputEnvelope:
    presentation = raag_presentation(load_graph(path, allow_empty=allow_empty))
    return OutputEnvelope("present", ExitCode.POSITIVE, presentation.to_dict(), presentation.render())


def cmd_nf(path: str, word: str) -> OutputEnvelope:
    g = load_graph(path)
    nf = format_word(normal_form(g, parse_word(word)))
    return OutputEnvelope("nf", ExitCode.POSITIVE, {"word": word, "normal_form": nf}, nf)


def cmd_equal(path: str, w1: str, w2: str) -> OutputEnvelope:
    """Word problem: exit 0 when the words are equal in the RAAG, 3 when they are not."""
    g = load_graph(path)
    first, second = parse_word(w1), parse_word(w2)
    equal = words_equal(g, first, second)
    payload = {
        "equal": equal,
        "normal_forms": [format_word(normal_form(g, first)), format_word(normal_form(g, second))],
    }
    return OutputEnvelope("equal", ExitCode.POSITIVE if equal else ExitCode.NEGATIVE, payload, str(equal).lower())


def cmd_michailova(path: str, pair: str, max_cosets: int = DEFAULT_MAX_COSETS) -> OutputEnvelope:
    """Membership in L_H: exit 0 member, 3 non-member, 4 when the coset enumeration does not close."""
    h = load_presentation(path)
    p = parse_pair(pair)
    oracle = ToddCoxeterOracle(h, max_cosets=max_cosets)
    member = lh_contains(h, p, oracle)
    payload = {
        "pair": str(p),
        "member": member,
        "order": oracle.table.order,
        "quotient": format_word((~p.first * p.second).free_reduce()),
        "presentation": h.to_dict(),
    }
    text = f"{'member' if member else 'non-member'}: ({p}) in L_H, |H| = {oracle.table.order}"
    return OutputEnvelope("michailova", ExitCode.POSITIVE if member else ExitCode.NEGATIVE, payload, text)


def cmd_separate(path: str, h: str, x: str, budget: Optional[SearchBudget] = None) -> OutputEnvelope:
    """Finite quotient separating x from <h>: exit 0 witness, 3 x inside <h>, 5 inconclusive."""
    g = load_graph(path)
    hw, xw = parse_word(h), parse_word(x)
    try:
        outcome = separate_cyclic(g, hw, xw, budget)
    except NotOutside as e:
        return OutputEnvelope("separate", ExitCode.NEGATIVE, {"exponent": e.exponent}, f"not outside: {e}")

    payload = outcome.to_dict()
    if outcome.witness is None:
        return OutputEnvelope("separate", ExitCode.INCONCLUSIVE, payload, "inconclusive: search budget spent")
    payload["verified"] = verify_witness(g, hw, xw, outcome.witness)
    text = f"separated in a {outcome.witness.target} ({outcome.witness.phase} phase)"
    return OutputEnvelope("separate", ExitCode.POSITIVE, payload, text)


def cmd_suite(budget: Optional[SearchBudget] = None) -> OutputEnvelope:
    results: List[Dict[str, Any]] = []
    lines = []
    for case in DESK_SUITE:
        g = parse_graph(case.graph)
        hw, xw = parse_word(case.h), parse_word(case.x)
        outcome = separate_cyclic(g, hw, xw, budget)
        verified = outcome.witness is not None and verify_witness(g, hw, xw, outcome.witness)
        results.append({"name": case.name, "status": outcome.status.value, "verified": verified})
        lines.append(f"{case.name}: {outcome.status.value}{'' if verified else ' (unverified)'}")
    passed = all(r["status"] == SeparationStatus.SEPARATED.value and r["verified"] for r in results)
    return OutputEnvelope(
        "suite", ExitCode.POSITIVE if passed else ExitCode.INCONCLUSIVE, {"cases": results}, "\n".join(lines)
    )


def _budget(args: argparse.Namespace) -> SearchBudget:
    return SearchBudget(
        max_degree=args.degree,
        random_degree=args.random_degree,
        max_candidates=args.max_candidates,
        seed=args.seed,
        time_cap=args.time_cap,
    )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print a single JSON object.")
    common.add_argument("--verbose", action="store_true", help="Log search progress to stderr.")

    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--degree", type=int, default=5, help="Largest degree searched exhaustively.")
    budget.add_argument("--random-degree", type=int, default=8, help="Largest degree of the random phase.")
    budget.add_argument("--max-candidates", type=int, default=1_000_000, help="Candidate quotients to try.")
    budget.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED, help="Seed of the random phase.")
    budget.add_argument("--time-cap", type=float, default=10.0, help="Wall-clock limit in seconds.")

    parser = argparse.ArgumentParser(
        prog="genius-raag",
        description="Subgroup separability of right-angled Artin groups and the profinite-topology desk lab.",
        formatter_class=RichHelpFormatter,
    )
    commands = parser.add_subparsers(dest="command", required=True)

    analyze = commands.add_parser("analyze", parents=[common], help="Separability verdict with certificate.")
    analyze.add_argument("graph")
    analyze.add_argument("--allow-empty", action="store_true")
    analyze.add_argument("--emit-dot", action="store_true", help="Also print the graph in DOT.")

    for name, help_text in (("decompose", "Decomposition tree."), ("present", "RAAG presentation.")):
        sub = commands.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("graph")
        sub.add_argument("--allow-empty", action="store_true")

    nf = commands.add_parser("nf", parents=[common], help="Shortlex normal form of a word.")
    nf.add_argument("graph")
    nf.add_argument("word")

    equal = commands.add_parser("equal", parents=[common], help="Decide equality of two words.")
    equal.add_argument("graph")
    equal.add_argument("w1")
    equal.add_argument("w2")

    michailova = commands.add_parser("michailova", parents=[common], help="Membership in L_H.")
    michailova.add_argument("presentation")
    michailova.add_argument("pair", help="'u | v', each side in word syntax.")
    michailova.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)

    separate = commands.add_parser("separate", parents=[common, budget], help="Separate x from <h>.")
    separate.add_argument("graph")
    separate.add_argument("h")
    separate.add_argument("x")

    commands.add_parser("suite", parents=[common, budget], help="Run the curated separation suite.")
    return parser


def guarded(command: str, handler: Callable[[], OutputEnvelope]) -> OutputEnvelope:
    """Run a command, turning input errors and oracle failures into an error envelope."""
    try:
        return handler()
    except (RAAGError, OSError, ValidationError) as e:
        log.debug(f"{command} failed: {e}")
        return _error(command, e)


def dispatch(args: argparse.Namespace) -> OutputEnvelope:
    handlers: Dict[str, Callable[[], OutputEnvelope]] = {
        "analyze": lambda: cmd_analyze(args.graph, args.allow_empty, args.emit_dot),
        "decompose": lambda: cmd_decompose(args.graph, args.allow_empty),
        "present": lambda: cmd_present(args.graph, args.allow_empty),
        "nf": lambda: cmd_nf(args.graph, args.word),
        "equal": lambda: cmd_equal(args.graph, args.w1, args.w2),
        "michailova": lambda: cmd_michailova(args.presentation, args.pair, args.max_cosets),
        "separate": lambda: cmd_separate(args.graph, args.h, args.x, _budget(args)),
        "suite": lambda: cmd_suite(_budget(args)),
    }
    return guarded(args.command, handlers[args.command])


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        set_level("DEBUG")

    envelope = dispatch(args)
    if args.json:
        print(envelope.to_json())
    else:
        console = Console(stderr=envelope.status == "error", highlight=False)
        console.print(envelope.text, markup=False)
    return int(envelope.exit_code)


if __name__ == "__main__":
    sys.exit(main())
