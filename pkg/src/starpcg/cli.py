"""Command-line interface: ``starpcg <subcommand> ...``.

Exit codes: 0 for a positive verdict or success, 1 for a negative verdict,
2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
import tempfile
from pathlib import Path
from typing import Sequence

from .families import consecutive_ordering, contiguous_ordering, parse_family
from .gaps import find_gap
from .graph import Graph, GraphFormatError, format_graph, parse_graph
from .oracle import LimitExceeded, brute_force_gap_free, random_graph, random_star_pcg
from .pcr import evaluate_pcr, parse_fraction, parse_tree, verify_witness, witness_from_dict, witness_to_dict
from .recognize import recognize

OK, NO, ERROR = 0, 1, 2


class InputError(Exception):
    """Bad input detected after argument parsing; reported as exit code 2."""


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None


def _load_graph(path: str) -> Graph:
    return parse_graph(_read(path))


def _emit_json(doc: dict, target: str) -> None:
    """Write one JSON document to stdout (``-``) or atomically to a file."""
    text = json.dumps(doc, indent=None) + "\n"
    if target == "-":
        sys.stdout.write(text)
        return
    dest = Path(target)
    fd, tmp = tempfile.mkstemp(dir=dest.parent if str(dest.parent) else ".", prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, dest)
    except OSError as exc:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise InputError(f"cannot write {target}: {exc.strerror or exc}") from None


def _parse_order(text: str, n: int) -> list[int]:
    try:
        order = [int(tok) for tok in text.replace(" ", "").split(",") if tok != ""]
    except ValueError:
        raise InputError(f"--order must be comma-separated vertex ids, got {text!r}") from None
    if sorted(order) != list(range(n)):
        raise InputError(f"--order must list each of the {n} vertices exactly once")
    return order


# -- subcommands ----------------------------------------------------------------


def cmd_recognize(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    outcome = recognize(g)
    if outcome.is_star_pcg:
        doc = witness_to_dict(outcome.witness, outcome.ordering)
    else:
        doc = outcome.refusal.to_dict()
    if args.json is not None:
        _emit_json(doc, args.json)
    if args.json != "-":
        if outcome.is_star_pcg:
            w = outcome.witness
            print(f"star-PCG: yes (n={g.n}, dmin={w.dmin}, dmax={w.dmax})")
            print("ordering: " + " ".join(map(str, outcome.ordering)))
            print("weights:  " + " ".join(map(str, w.weights)))
        else:
            print(f"star-PCG: no ({outcome.refusal.kind})")
    return OK if outcome.is_star_pcg else NO


def cmd_verify(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    try:
        doc = json.loads(_read(args.witness))
        pcr, order = witness_from_dict(doc)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"malformed witness: {exc}") from None
    if verify_witness(g, pcr, order):
        print("witness valid")
        return OK
    print("witness invalid")
    return NO


def cmd_gapcheck(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    order = _parse_order(args.order, g.n)
    cert = find_gap(g, order)
    if cert is None:
        print("gap-free")
        return OK
    print(json.dumps(cert.to_dict(order)))
    return NO


def cmd_eval(args: argparse.Namespace) -> int:
    tree = parse_tree(_read(args.tree))
    dmin, dmax = parse_fraction(args.dmin), parse_fraction(args.dmax)
    if dmin > dmax:
        raise InputError("--dmin must not exceed --dmax")
    sys.stdout.write(format_graph(evaluate_pcr(tree, dmin, dmax)))
    return OK


def cmd_oracle(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    try:
        order = brute_force_gap_free(g, limit=args.limit)
    except LimitExceeded as exc:
        raise InputError(str(exc)) from None
    if order is None:
        print("none")
        return NO
    print(",".join(map(str, order)))
    return OK


def cmd_gen(args: argparse.Namespace) -> int:
    if args.n < 1:
        raise InputError("--n must be positive")
    rng = random.Random(args.seed)
    if args.star_pcg:
        g, pcr, order = random_star_pcg(args.n, rng)
        if args.format == "json":
            print(json.dumps({"graph": format_graph(g), "witness": witness_to_dict(pcr, order)}))
            return OK
    else:
        g = random_graph(args.n, args.p, rng)
        if args.format == "json":
            print(json.dumps({"graph": format_graph(g)}))
            return OK
    sys.stdout.write(format_graph(g))
    return OK


def _family_command(solver, args: argparse.Namespace) -> int:
    f = parse_family(_read(args.family))
    order = solver(f)
    if order is None:
        print("none")
        return NO
    print(",".join(map(str, order)))
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="starpcg", description="Star pairwise compatibility graph tools.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log synthesis fallbacks to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recognize", help="decide star-PCG membership and print a witness or refusal")
    p.add_argument("graph")
    p.add_argument("--json", metavar="PATH", help="write the JSON verdict to PATH ('-' for stdout)")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("verify", help="check a witness JSON against a graph by forward evaluation")
    p.add_argument("graph")
    p.add_argument("witness")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gapcheck", help="test an ordering for gaps")
    p.add_argument("graph")
    p.add_argument("--order", required=True, help="comma-separated vertex ids by position")
    p.set_defaults(func=cmd_gapcheck)

    p = sub.add_parser("eval", help="graph realized by a weighted tree and a distance window")
    p.add_argument("tree")
    p.add_argument("--dmin", required=True)
    p.add_argument("--dmax", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("oracle", help="exhaustive search for a gap-free ordering")
    p.add_argument("graph")
    p.add_argument("--limit", type=int, default=9)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="seeded random graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--star-pcg", action="store_true", help="guaranteed star-PCG")
    kind.add_argument("--p", type=float, help="edge probability for G(n, p)")
    p.add_argument("--format", choices=("graph", "json"), default="graph")
    p.set_defaults(func=cmd_gen)

    for name, solver, text in (
        ("c1p", consecutive_ordering, "consecutive ordering of a set family"),
        ("contiguous", contiguous_ordering, "contiguous ordering of a set family"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("family")
        p.set_defaults(func=lambda args, solver=solver: _family_command(solver, args))
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(message)s")
    if getattr(args, "p", None) is not None and not 0 <= args.p <= 1:
        parser.error("--p must lie in [0, 1]")
    try:
        return args.func(args)
    except (InputError, GraphFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
