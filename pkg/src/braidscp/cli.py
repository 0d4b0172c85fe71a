"""Command-line front end: SCP queries, protocol attacks, benchmark tables.

Words are given in each structure's text format (signed integers for the
classical generators, "(t,s)" band tokens for the band-generator
structure); a tuple is a semicolon-separated list of words. All results
are printed as JSON except the benchmark tables, which honor --format.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

from .bench import (
    DEFAULT_CAP,
    ExperimentConfig,
    emit,
    run_experiment,
    table1_rows,
    table2_rows,
)
from .braids import structure_for
from .core import (
    TupleElement,
    conjugate,
    element_to_json,
    element_to_word,
    make_element,
)
from .errors import BraidSCPError, Truncated
from .reductions import CountingOracle, gen_instance, run_recovery
from .solver import invariant_set_detail, normalize_kind, scp_search


def parse_tuple(st, text: str) -> TupleElement:
    """Semicolon-separated words -> TupleElement (empty word = identity)."""
    words = text.split(";")
    return TupleElement(st, tuple(make_element(w, st) for w in words))


def _word_text(st, x) -> str:
    return st.format_word(element_to_word(x))


def _bound_list(bounds) -> list:
    return [("inf" if b == math.inf else b) for b in bounds]


def _print_json(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


# ----------------------------------------------------------------------
# scp verbs
# ----------------------------------------------------------------------


def _cmd_scp(args) -> int:
    st = structure_for(args.structure, args.n)
    a = parse_tuple(st, args.a)
    common = dict(use_minimal=args.minimal_simples, cap=args.cap,
                  mod_tau=args.mod_tau)

    if args.verb == "invariant":
        kind = normalize_kind(args.kind)
        detail = invariant_set_detail(a, kind, collect="full", **common)
        orbit, minimal = detail.orbit, detail.minimal
        out = {
            "structure": st.name,
            "n": st.n,
            "r": a.r,
            "variant": kind,
            "interval": {
                "lo": _bound_list(orbit.interval.lo),
                "hi": _bound_list(orbit.interval.hi),
            },
            "size": orbit.size,
            "truncated": orbit.truncated,
            "mod_tau": orbit.mod_tau,
            "witness": _word_text(st, minimal.conjugator),
        }
        if args.members:
            out["members"] = [
                {"entries": [element_to_json(e) for e in v.entries],
                 "witness": _word_text(st, wit)}
                for v, wit in orbit.members.values()
            ]
        _print_json(out)
        return 0

    c = parse_tuple(st, args.c)
    try:
        x = scp_search(a, c, **common)
    except Truncated:
        _print_json({"structure": st.name, "n": st.n, "r": a.r,
                     "conjugate": "unknown", "cap": args.cap})
        return 0
    if args.verb == "decide":
        _print_json({"structure": st.name, "n": st.n, "r": a.r,
                     "conjugate": x is not None})
        return 0
    found = x is not None
    out = {"structure": st.name, "n": st.n, "r": a.r, "found": found}
    if found:
        assert conjugate(a, x) == c
        out["witness"] = _word_text(st, x)
        out["verified"] = True
    _print_json(out)
    return 0


# ----------------------------------------------------------------------
# attack verb
# ----------------------------------------------------------------------


def _cmd_attack(args) -> int:
    st = structure_for(args.structure, args.n)
    inst = gen_instance(args.problem, st, {"length": args.length}, args.seed)
    oracle = CountingOracle(
        lambda base, target: scp_search(base, target, cap=args.cap,
                                        mod_tau=True)
    )
    t0 = time.perf_counter()
    try:
        recovered = run_recovery(inst.problem, inst.public, oracle)
        success = recovered == inst.truth
    except BraidSCPError:
        success = False
    wall_ms = (time.perf_counter() - t0) * 1000.0
    _print_json({
        "problem": inst.problem,
        "params": {"structure": st.name, "n": st.n, "seed": args.seed,
                   "length": args.length, "cap": args.cap},
        "success": success,
        "oracle_calls": oracle.calls,
        "wall_time_ms": round(wall_ms, 3),
    })
    return 0 if success else 1


# ----------------------------------------------------------------------
# bench verbs
# ----------------------------------------------------------------------


def _parse_r_list(text: str) -> list:
    try:
        values = [int(tok) for tok in text.split(",") if tok]
    except ValueError:
        raise SystemExit(f"bad r list {text!r}; expected e.g. 4,8,16")
    if not values:
        raise SystemExit("empty r list")
    return values


def _cmd_bench(args) -> int:
    if args.verb == "run":
        with open(args.config, "r", encoding="utf-8") as fh:
            cfg = ExperimentConfig.from_dict(json.load(fh))
        rows = run_experiment(cfg)
        out = args.out if args.out is not None else cfg.out
        print(emit(rows, args.format, out), end="")
        return 0
    if args.verb == "table1":
        rows = table1_rows(args.n, args.r, args.trials, cap=args.cap,
                           seed=args.seed, kinds=tuple(args.kinds),
                           word_length=args.word_length,
                           structures=tuple(args.structures))
    else:
        rows = table2_rows(args.n, _parse_r_list(args.r_list), args.trials,
                           cap=args.cap, seed=args.seed,
                           word_length=args.word_length)
    print(emit(rows, args.format, args.out), end="")
    return 0


# ----------------------------------------------------------------------
# parser assembly
# ----------------------------------------------------------------------


def _add_structure_flags(p) -> None:
    p.add_argument("--structure", choices=("artin", "bkl"), default="artin",
                   help="Garside structure token")
    p.add_argument("--n", type=int, required=True, help="strand count")


def _add_scp_flags(p, with_c: bool) -> None:
    _add_structure_flags(p)
    p.add_argument("--a", required=True, help="tuple: words joined by ';'")
    if with_c:
        p.add_argument("--c", required=True, help="tuple: words joined by ';'")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP,
                   help="orbit size bound before reporting unknown")
    p.add_argument("--mod-tau", action=argparse.BooleanOptionalAction,
                   default=False, help="work modulo the tau automorphism")
    p.add_argument("--minimal-simples", action=argparse.BooleanOptionalAction,
                   default=True,
                   help="expand orbits by minimal simples instead of all")
    p.add_argument("--deterministic", action="store_true",
                   help="force sequential evaluation; evaluation is "
                        "sequential in-process, so this pins the default")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braidscp",
        description="Simultaneous conjugacy in braid groups: solver, "
                    "protocol attacks, and benchmark tables.",
    )
    top = parser.add_subparsers(dest="command", required=True)

    scp = top.add_parser("scp", help="decision/search SCP and invariant sets")
    scp_verbs = scp.add_subparsers(dest="verb", required=True)
    p = scp_verbs.add_parser("decide", help="are the tuples conjugate?")
    _add_scp_flags(p, with_c=True)
    p = scp_verbs.add_parser("search", help="find a simultaneous conjugator")
    _add_scp_flags(p, with_c=True)
    p = scp_verbs.add_parser("invariant", help="compute an invariant set")
    _add_scp_flags(p, with_c=False)
    p.add_argument("--kind", choices=("lsss", "lsssp", "lss"),
                   default="lsssp", help="which invariant set")
    p.add_argument("--members", action="store_true",
                   help="include the member list in the JSON output")

    atk = top.add_parser("attack", help="run one protocol reduction")
    atk.add_argument("--problem", required=True,
                     choices=("dh", "dcp", "double_coset", "commutator",
                              "centralizer"))
    _add_structure_flags(atk)
    atk.add_argument("--seed", type=int, default=0)
    atk.add_argument("--length", type=int, default=6,
                     help="word length of the instance's random subwords")
    atk.add_argument("--cap", type=int, default=DEFAULT_CAP)

    bench = top.add_parser("bench", help="experiment tables and custom runs")
    bench_verbs = bench.add_subparsers(dest="verb", required=True)
    for verb in ("table1", "table2"):
        p = bench_verbs.add_parser(verb)
        p.add_argument("--n", type=int, required=True)
        if verb == "table1":
            p.add_argument("--r", type=int, required=True)
            p.add_argument("--kinds", nargs="+",
                           default=["LL_interval", "inf_sup_interval",
                                    "LSS", "LSSS"])
            p.add_argument("--structures", nargs="+",
                           choices=("artin", "bkl"),
                           default=["artin", "bkl"])
        else:
            p.add_argument("--r", dest="r_list", required=True,
                           help="comma-separated r values, e.g. 4,8,16,32,64")
        p.add_argument("--trials", type=int, required=True)
        p.add_argument("--cap", type=int, default=DEFAULT_CAP)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--word-length", type=int, default=None)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None)
    p = bench_verbs.add_parser("run", help="run an ExperimentConfig file")
    p.add_argument("--config", required=True, help="JSON config path")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"scp": _cmd_scp, "attack": _cmd_attack, "bench": _cmd_bench}
    try:
        return handler[args.command](args)
    except BraidSCPError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
