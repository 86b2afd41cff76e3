"""Batch command-line front end.

Subcommands: check, reconstruct, weights, oracle, gen. Exit codes are a
stable contract: 0 success/realizable, 1 not realizable, 2 invalid input,
3 uniqueness falsified (an oracle census with two or more realizations,
which is expected never to happen). JSON output is byte-deterministic for
identical inputs and flags; matrix input format (CSV vs JSON) is sniffed
from the first non-blank character.
"""

from __future__ import annotations

import argparse
import json
import sys

from .conditions import CheckReport, check_all
from .core import (
    DissimilarityMatrix,
    WeightedTree,
    all_pairs_weights,
    parse_matrix,
    parse_tree,
    tree_to_dot,
)
from .errors import TreexactError
from .numeric import EXACT, FloatPolicy, Policy
from .oracle import DEFAULT_ENUMERATION_CAP, count_realizations, random_weighted_tree
from .reconstruct import UnrealizableWitness, reconstruct

EXIT_OK = 0
EXIT_UNREALIZABLE = 1
EXIT_INVALID = 2
EXIT_FALSIFIED = 3


class _UsageError(Exception):
    """Bad flag combination or unsupported format; maps to exit 2."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treexact",
        description=(
            "Decide whether a dissimilarity matrix is realized by a positive-"
            "weighted tree on exactly its n labeled points, build that tree, "
            "and cross-check against exhaustive enumeration."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    out_opts = argparse.ArgumentParser(add_help=False)
    out_opts.add_argument(
        "-f", "--format", default="json", choices=["json", "csv", "dot", "text"],
        help="output format (default json)",
    )
    out_opts.add_argument(
        "--mode", default="exact", choices=["exact", "float"],
        help="numeric policy (default exact)",
    )
    out_opts.add_argument(
        "--eps", default=None, metavar="EPS",
        help="equality tolerance, float mode only (default 1e-9)",
    )
    in_opts = argparse.ArgumentParser(add_help=False)
    in_opts.add_argument(
        "-i", "--input", default="-", metavar="PATH",
        help="input file or '-' for standard input (default '-')",
    )

    sub.add_parser(
        "check", parents=[in_opts, out_opts],
        help="test whether a matrix is realizable and report witnesses",
    )
    sub.add_parser(
        "reconstruct", parents=[in_opts, out_opts],
        help="build the unique realizing tree or explain why none exists",
    )
    sub.add_parser(
        "weights", parents=[in_opts, out_opts],
        help="compute the all-pairs path-weight matrix of a tree",
    )
    oracle_p = sub.add_parser(
        "oracle", parents=[in_opts, out_opts],
        help="enumerate all labeled topologies and count realizations",
    )
    oracle_p.add_argument(
        "--cap", type=int, default=DEFAULT_ENUMERATION_CAP,
        help=f"enumeration size limit (default {DEFAULT_ENUMERATION_CAP})",
    )
    gen_p = sub.add_parser(
        "gen", parents=[out_opts],
        help="generate a random weighted tree and its matrix",
    )
    gen_p.add_argument("-n", type=int, required=True, help="number of vertices")
    gen_p.add_argument("--seed", type=int, default=0, help="PRNG seed (default 0)")
    gen_p.add_argument("--wmin", default="0.001", help="minimum edge weight")
    gen_p.add_argument("--wmax", default="10", help="maximum edge weight")
    return parser


def _resolve_policy(args) -> Policy:
    if args.mode == "exact":
        if args.eps is not None:
            raise _UsageError("--eps is only valid with --mode float")
        return EXACT
    if args.eps is None:
        return FloatPolicy()
    try:
        eps = float(args.eps)
    except ValueError:
        raise _UsageError(f"--eps must be a number, got {args.eps!r}")
    if eps <= 0:
        raise _UsageError("--eps must be positive")
    return FloatPolicy(eps)


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}")


def _sniff_matrix_format(text: str) -> str:
    return "json" if text.lstrip().startswith("{") else "csv"


def _require_format(fmt: str, allowed: tuple[str, ...], command: str) -> None:
    if fmt not in allowed:
        raise _UsageError(
            f"format {fmt!r} is not supported by {command} "
            f"(choose from {', '.join(allowed)})"
        )


def _dump(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)


def _tree_text(tree: WeightedTree) -> str:
    lines = [f"tree on {tree.n} vertices"]
    fmt = tree.policy.format
    for u, v, w in tree.edges:
        lines.append(f"  {u} -- {v}  w={fmt(w)}")
    return "\n".join(lines)


def _matrix_text(m: DissimilarityMatrix) -> str:
    return f"matrix on {m.n} vertices\n{m.to_csv()}"


def _report_text(report: CheckReport) -> str:
    def verdict(fragment):
        tag = "ok" if fragment.ok else f"FAIL ({len(fragment.witnesses)} witnesses)"
        if getattr(fragment, "caveat", False):
            tag += " [caveat: four-point failed]"
        return tag

    lines = [
        f"realizable: {'yes' if report.realizable else 'no'}",
        f"four-point: {verdict(report.four_point)}",
        f"center condition: {verdict(report.condition_i)}",
        f"median condition: {verdict(report.condition_ii)}",
    ]
    for w in report.witnesses:
        parts = [f"witness: {w.condition} {w.code}"]
        if w.quadruple:
            parts.append("quadruple={" + ",".join(map(str, w.quadruple)) + "}")
        if w.triple:
            parts.append("triple={" + ",".join(map(str, w.triple)) + "}")
        if w.best_l is not None:
            parts.append(f"best_l={w.best_l}")
        lines.append(" ".join(parts))
    return "\n".join(lines)


def _witness_text(witness: UnrealizableWitness) -> str:
    return (
        "not realizable\n"
        f"stage: {witness.stage}\n"
        f"indices: {','.join(map(str, witness.indices))}\n"
        f"detail: {witness.message}"
    )


def run_check(args) -> int:
    _require_format(args.format, ("json", "text"), "check")
    policy = _resolve_policy(args)
    text = _read_input(args.input)
    matrix = parse_matrix(text, _sniff_matrix_format(text), policy)
    report = check_all(matrix)
    print(report.to_json() if args.format == "json" else _report_text(report))
    return EXIT_OK if report.realizable else EXIT_UNREALIZABLE


def run_reconstruct(args) -> int:
    _require_format(args.format, ("json", "dot", "text"), "reconstruct")
    policy = _resolve_policy(args)
    text = _read_input(args.input)
    matrix = parse_matrix(text, _sniff_matrix_format(text), policy)
    result = reconstruct(matrix)
    if isinstance(result, UnrealizableWitness):
        print(_witness_text(result) if args.format == "text" else result.to_json())
        return EXIT_UNREALIZABLE
    if args.format == "dot":
        print(tree_to_dot(result))
    elif args.format == "text":
        print(_tree_text(result))
    else:
        print(_dump(result.to_json_dict()))
    return EXIT_OK


def run_weights(args) -> int:
    _require_format(args.format, ("json", "csv", "text"), "weights")
    policy = _resolve_policy(args)
    tree = parse_tree(_read_input(args.input), policy)
    matrix = all_pairs_weights(tree)
    if args.format == "csv":
        print(matrix.to_csv())
    elif args.format == "text":
        print(_matrix_text(matrix))
    else:
        print(_dump(matrix.to_json_dict()))
    return EXIT_OK


def run_oracle(args) -> int:
    _require_format(args.format, ("json", "text"), "oracle")
    policy = _resolve_policy(args)
    text = _read_input(args.input)
    matrix = parse_matrix(text, _sniff_matrix_format(text), policy)
    census = count_realizations(matrix, cap=args.cap)
    if args.format == "json":
        print(census.to_json())
    else:
        lines = [
            f"n: {census.n}",
            f"topologies examined: {census.topologies_examined}",
            f"realizations: {census.count}",
        ]
        for idx, tree in enumerate(census.realizations, start=1):
            lines.append(f"realization {idx}:")
            lines.extend("  " + line for line in _tree_text(tree).splitlines()[1:])
        print("\n".join(lines))
    if census.count == 0:
        return EXIT_UNREALIZABLE
    if census.count == 1:
        return EXIT_OK
    return EXIT_FALSIFIED


def run_gen(args) -> int:
    _require_format(args.format, ("json", "csv", "dot", "text"), "gen")
    policy = _resolve_policy(args)
    tree = random_weighted_tree(args.n, args.wmin, args.wmax, args.seed, policy)
    matrix = all_pairs_weights(tree)
    if args.format == "json":
        print(_dump({"tree": tree.to_json_dict(), "matrix": matrix.to_json_dict()}))
    elif args.format == "csv":
        # Matrix only; feeding it back into `reconstruct` reproduces the tree.
        print(matrix.to_csv())
    elif args.format == "dot":
        print(tree_to_dot(tree))
    else:
        print(_tree_text(tree) + "\n" + _matrix_text(matrix))
    return EXIT_OK


_HANDLERS = {
    "check": run_check,
    "reconstruct": run_reconstruct,
    "weights": run_weights,
    "oracle": run_oracle,
    "gen": run_gen,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except TreexactError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
