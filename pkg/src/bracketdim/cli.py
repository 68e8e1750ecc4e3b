"""Command-line front end.

Every subcommand reads its inputs, calls one or two library operations and
prints a JSON or TSV report.  Exit status is 0 on success, 1 on a domain
error and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from typing import List, Optional, Tuple

from .bracket import Bracket, bracket_from_json, count_brackets, enumerate_brackets
from .errors import Ambiguous, BracketDimError
from .limits import DEFAULT_SEARCH_CAP, DEFAULT_SUBSET_CAP
from .resolving import (
    check_universal,
    construct_favorites,
    decode,
    dim_upper_bound,
    estimate_resolution_probability,
    is_resolving,
    metric_dimension_exact,
    necessary_condition_violations,
    resolving_number_bounds,
    resolving_number_exact,
)
from .scoring import (
    ScoringSystem,
    compute_probabilities,
    constant_scoring,
    distinct_subset_sum_scoring,
    format_rational,
    random_scoring,
    score_vector,
    scoring_from_json,
    to_rational,
)
from .tournament import (
    Tournament,
    enumerate_shapes,
    parse,
    random_tournament,
    serialize,
    standard_tournament,
    to_json_obj,
)


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_json(path: str):
    text = _read(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise BracketDimError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from None


def _tournament(args) -> Tournament:
    if not args.tournament:
        raise UsageError("--tournament is required")
    return parse(_read(args.tournament))


def _sigmas(T: Tournament, spec: Optional[str]) -> List[Tuple[str, ScoringSystem]]:
    """Scoring systems named by ``--sigma``, each with a report label."""
    if spec is None:
        return []
    if spec == "dss":
        return [("dss", distinct_subset_sum_scoring(T))]
    if spec == "const":
        return [("const", constant_scoring(T))]
    if spec.startswith("rand:"):
        parts = spec.split(":")
        try:
            seed, count = int(parts[1]), int(parts[2])
        except (IndexError, ValueError):
            raise UsageError("--sigma rand:SEED:K needs two integers") from None
        if len(parts) != 3 or count < 1:
            raise UsageError("--sigma rand:SEED:K needs K >= 1")
        rng = random.Random(seed)
        seeds = [rng.getrandbits(32) for _ in range(count)]
        return [(f"rand:{seed}:{i}", random_scoring(T, s)) for i, s in enumerate(seeds)]
    return [(spec, scoring_from_json(T, _load_json(spec)))]


def _one_sigma(T: Tournament, args) -> Tuple[str, ScoringSystem]:
    sigmas = _sigmas(T, args.sigma)
    if len(sigmas) != 1:
        raise UsageError("this command needs exactly one scoring system in --sigma")
    return sigmas[0]


def _bracket_set(T: Tournament, path: Optional[str]) -> List[Bracket]:
    if path is None:
        raise UsageError("--set is required")
    doc = _load_json(path)
    if not isinstance(doc, list):
        raise BracketDimError("a bracket set must be a JSON array")
    return [bracket_from_json(T, d) for d in doc]


def _compact(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _emit(args, obj, header: List[str], rows: List[list]) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(obj, indent=2) + "\n")
        return
    out = ["\t".join(header)]
    out.extend("\t".join(str(v) for v in row) for row in rows)
    sys.stdout.write("\n".join(out) + "\n")


# -- subcommands --------------------------------------------------------------

def cmd_validate(args) -> None:
    T = _tournament(args)
    obj = {
        "valid": True,
        "players": T.n_players,
        "matches": T.n_matches,
        "vertices": T.vertex_count,
        "sink": T.labels[T.sink],
        "brackets": count_brackets(T),
        "shape": T.shape_code(),
        "standard": T.is_standard(),
    }
    _emit(args, obj, ["field", "value"], [[k, _compact(v) if isinstance(v, bool) else v] for k, v in obj.items()])


def cmd_gen(args) -> None:
    if args.kind == "standard":
        if args.n is None:
            raise UsageError("gen standard needs --n")
        Ts = [standard_tournament(args.n)]
    elif args.kind == "random":
        if args.n is None:
            raise UsageError("gen random needs --n")
        Ts = [random_tournament(args.n, args.seed)]
    else:
        if args.max_players is None:
            raise UsageError("gen shapes needs --max-players")
        Ts = enumerate_shapes(args.max_players)
    if args.format == "json" and args.kind != "shapes":
        sys.stdout.write(serialize(Ts[0]) + "\n")
        return
    _emit(args, [to_json_obj(T) for T in Ts], ["players", "shape", "tournament"],
          [[T.n_players, T.shape_code(), serialize(T)] for T in Ts])


def cmd_dim(args) -> None:
    T = _tournament(args)
    bounds = dim_upper_bound(T)
    report = {"lower": bounds.lower, "upper": bounds.upper, "exact": []}
    rows = []
    sigmas = _sigmas(T, args.sigma) if args.exact else []
    if args.exact and not sigmas:
        raise UsageError("--exact needs --sigma")
    for name, sigma in sigmas:
        k, witness = metric_dimension_exact(T, sigma, args.cap_brackets, args.search_cap, args.threads)
        report["exact"].append({"sigma": name, "dim": k, "witness": [B.to_json_obj() for B in witness]})
        rows.append([name, bounds.lower, bounds.upper, k])
    if not sigmas:
        rows.append(["-", bounds.lower, bounds.upper, "-"])
    _emit(args, report, ["sigma", "lower", "upper", "exact"], rows)


def cmd_construct(args) -> None:
    T = _tournament(args)
    if args.favorites:
        if args.set:
            base = _bracket_set(T, args.set)
            if not base:
                raise UsageError("--set for --favorites must hold a base bracket")
            base = base[0]
        else:
            base = next(enumerate_brackets(T, args.cap_brackets))
        members = construct_favorites(T, base)
    else:
        members = dim_upper_bound(T).construction
    docs = [B.to_json_obj() for B in members]
    _emit(args, docs, ["index", "bracket"], [[i, _compact(d)] for i, d in enumerate(docs)])


def cmd_check(args) -> None:
    T = _tournament(args)
    members = _bracket_set(T, args.set)
    labels = T.labels
    violations = [[labels[a], labels[b]] for a, b in necessary_condition_violations(T, members)]
    universal = check_universal(T, members, args.cap_brackets)
    report = {
        "size": len(members),
        "necessary_condition_violations": violations,
        "universal": universal.status.value,
        "universal_pair": None if universal.pair is None else [B.to_json_obj() for B in universal.pair],
        "scored": [],
    }
    rows = []
    for name, sigma in _sigmas(T, args.sigma):
        res = is_resolving(T, sigma, members, args.cap_brackets)
        report["scored"].append({"sigma": name, **res.to_json_obj()})
        rows.append([name, _compact(res.is_resolving), universal.status.value, len(violations)])
    if not rows:
        rows.append(["-", "-", universal.status.value, len(violations)])
    _emit(args, report, ["sigma", "is_resolving", "universal", "violations"], rows)


def cmd_resnum(args) -> None:
    T = _tournament(args)
    bounds = resolving_number_bounds(T)
    report = bounds.to_json_obj()
    report["exact"] = []
    rows = []
    sigmas = _sigmas(T, args.sigma) if args.exact else []
    if args.exact and not sigmas:
        raise UsageError("--exact needs --sigma")
    fixed = [bounds.N, format_rational(bounds.lower_qpair), format_rational(bounds.upper_qmax),
             format_rational(bounds.upper_qmin), format_rational(bounds.prediction)]
    for name, sigma in sigmas:
        value = resolving_number_exact(T, sigma, args.method, args.cap_brackets, args.cap_subsets)
        report["exact"].append({"sigma": name, "res": value})
        rows.append([name, *fixed, value])
    if not sigmas:
        rows.append(["-", *fixed, "-"])
    _emit(args, report, ["sigma", "N", "lower_exclusive", "upper_qmax", "upper_qmin", "prediction", "exact"], rows)


def cmd_probs(args) -> None:
    T = _tournament(args)
    probs = compute_probabilities(T, exhaustive=args.exhaustive, cap=args.cap_brackets)
    obj = probs.to_json_obj(T)
    rows = [["q_max", obj["q_max"]], ["q_pair", obj["q_pair"]], ["pair", ",".join(obj["pair"])]]
    rows.extend([f"final:{k}", v] for k, v in obj["final"].items())
    _emit(args, obj, ["quantity", "value"], rows)


def cmd_score(args) -> None:
    T = _tournament(args)
    _, sigma = _one_sigma(T, args)
    members = _bracket_set(T, args.set)
    if not args.bracket:
        raise UsageError("--bracket is required")
    B = bracket_from_json(T, _load_json(args.bracket))
    scores = [format_rational(q) for q in score_vector(sigma, members, B)]
    _emit(args, scores, ["index", "score"], [[i, s] for i, s in enumerate(scores)])


def cmd_decode(args) -> None:
    T = _tournament(args)
    _, sigma = _one_sigma(T, args)
    members = _bracket_set(T, args.set)
    if not args.scores:
        raise UsageError("--scores is required")
    doc = _load_json(args.scores)
    if not isinstance(doc, list):
        raise BracketDimError("scores must be a JSON array")
    B = decode(T, sigma, members, [to_rational(q) for q in doc], args.cap_brackets)
    obj = B.to_json_obj()
    _emit(args, obj, ["vertex", "winner"], [[k, v] for k, v in obj.items()])


def cmd_estimate(args) -> None:
    T = _tournament(args)
    name, sigma = _one_sigma(T, args)
    members = _bracket_set(T, args.set)
    est = estimate_resolution_probability(T, sigma, members, args.samples, args.seed, args.cap_brackets)
    obj = est.to_json_obj()
    _emit(args, obj, ["sigma", "estimate", "low", "high", "samples", "exact", "pair_bound", "constant_bound"],
          [[name, est.estimate, est.interval[0], est.interval[1], est.samples, obj["exact"],
            obj["pair_bound"] or "-", obj["constant_sigma_bound"] or "-"]])


# -- argument parsing -----------------------------------------------------------

def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tournament", help="tournament JSON path, or - for stdin")
    common.add_argument("--sigma", help="scoring JSON path, dss, const or rand:SEED:K")
    common.add_argument("--set", help="JSON array of brackets")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap-brackets", type=_positive, default=None,
                        help="bracket enumeration cap (default from BRACKETDIM_CAP or 2^20)")
    common.add_argument("--cap-subsets", type=_positive, default=DEFAULT_SUBSET_CAP)
    common.add_argument("--search-cap", type=_positive, default=DEFAULT_SEARCH_CAP)
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    common.add_argument("--threads", type=_positive, default=1)

    parser = argparse.ArgumentParser(prog="bracketdim",
                                     description="Resolving sets for single-elimination tournament brackets.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="validate a tournament and summarise it")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("gen", parents=[common], help="generate tournaments")
    p.add_argument("kind", choices=("standard", "random", "shapes"))
    p.add_argument("--n", type=_positive)
    p.add_argument("--max-players", type=_positive)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("dim", parents=[common], help="metric dimension bounds, optionally exact")
    p.add_argument("--exact", action="store_true")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("construct", parents=[common], help="universal resolving set")
    p.add_argument("--favorites", action="store_true",
                   help="force each player in turn on a base bracket (first of --set, else the first bracket)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check", parents=[common], help="check a bracket set")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("resnum", parents=[common], help="resolving number bounds, optionally exact")
    p.add_argument("--exact", action="store_true")
    p.add_argument("--method", choices=("pairs", "subsets"), default="pairs")
    p.set_defaults(func=cmd_resnum)

    p = sub.add_parser("probs", parents=[common], help="q_max, q_pair and final probabilities")
    p.add_argument("--exhaustive", action="store_true", help="count over every bracket instead")
    p.set_defaults(func=cmd_probs)

    p = sub.add_parser("score", parents=[common], help="scores of a bracket against a set")
    p.add_argument("--bracket", help="bracket JSON path")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("decode", parents=[common], help="recover a bracket from its scores")
    p.add_argument("--scores", help="JSON array of scores")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("estimate", parents=[common], help="Monte Carlo resolution probability")
    p.add_argument("--samples", type=_positive, default=10_000)
    p.set_defaults(func=cmd_estimate)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"bracketdim: {exc}\n")
        return 2
    except Ambiguous as exc:
        sys.stderr.write(f"bracketdim: {len(exc.candidates)} brackets fit these scores\n")
        return 1
    except BracketDimError as exc:
        sys.stderr.write(f"bracketdim: {exc}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
