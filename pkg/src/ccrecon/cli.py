"""Command-line interface: instance generation, experiment sweeps, races,
oracle-bridge reports, scheme files, and the exhaustive validation suites.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .bench import ExperimentConfig, run_experiment, write_csv, write_json
from .bridges import BRIDGES, run_bridge
from .errors import RaceExhaustedError
from .families import FAMILY_NAMES, generate
from .graphs import components_bruteforce, graph_equal, save_graph
from .oracles import OracleSession
from .race import race
from .schemes import (build_splitter, random_scheme, save_scheme, load_scheme,
                      scheme_from_splitter, verify_scheme)
from .validation import run_validation

_FAMILY_FLAGS = ("n", "rows", "cols", "m", "delta", "prob", "k",
                 "delete_prob", "eta", "cross_prob", "p")


def _common_parser() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--seed", type=int, default=0)
    parent.add_argument("--budget", type=int, default=None)
    parent.add_argument("--out", default=None)
    parent.add_argument("--format", choices=("csv", "json"), default="csv")
    return parent


def _family_parser() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--family", required=True, choices=FAMILY_NAMES)
    parent.add_argument("--n", type=int)
    parent.add_argument("--rows", type=int)
    parent.add_argument("--cols", type=int)
    parent.add_argument("--m", type=int)
    parent.add_argument("--delta", type=int)
    parent.add_argument("--prob", type=float)
    parent.add_argument("--k", type=int)
    parent.add_argument("--delete-prob", dest="delete_prob", type=float)
    parent.add_argument("--eta", type=int)
    parent.add_argument("--cross-prob", dest="cross_prob", type=float)
    parent.add_argument("--p", type=int)
    return parent


def _family_params(args) -> dict:
    return {key: getattr(args, key) for key in _FAMILY_FLAGS
            if getattr(args, key, None) is not None}


def _open_out(path):
    return open(path, "w", encoding="ascii") if path else sys.stdout


def _emit(path, text: str) -> None:
    if path:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    family = _family_parser()
    parser = argparse.ArgumentParser(
        prog="ccrecon",
        description="hidden-graph reconstruction benchmarks over a simulated CC oracle")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("gen", parents=[common, family],
                   help="generate an instance and write the graph file")

    run_p = sub.add_parser("run", parents=[common, family],
                           help="run an experiment sweep and write records")
    run_p.add_argument("--algorithm", required=True)
    run_p.add_argument("--ns", required=True,
                       help="comma-separated sweep of vertex counts")
    run_p.add_argument("--trials", type=int, default=1)
    run_p.add_argument("--mode", choices=("randomized", "deterministic"),
                       default="randomized")
    run_p.add_argument("--param", type=int, default=None,
                       help="override the algorithm parameter")
    run_p.add_argument("--timing", action="store_true",
                       help="record wall time (breaks byte-for-byte determinism)")

    sub.add_parser("race", parents=[common, family],
                   help="race the default contenders on one instance")

    bridge_p = sub.add_parser("bridge", parents=[common, family],
                              help="run oracle-bridge procedures against ground truth")
    bridge_p.add_argument("--check", default="all",
                          choices=("all",) + tuple(sorted(BRIDGES)))
    bridge_p.add_argument("--sets", type=int, default=20,
                          help="random query sets per procedure")

    scheme_p = sub.add_parser("scheme", parents=[common],
                              help="build or verify query-scheme files")
    scheme_p.add_argument("action", choices=("build", "verify"))
    scheme_p.add_argument("--n", type=int)
    scheme_p.add_argument("--p", type=int)
    scheme_p.add_argument("--method", choices=("random", "splitter"),
                          default="splitter")
    scheme_p.add_argument("--file", help="scheme file to verify")
    scheme_p.add_argument("--mode", choices=("exhaustive", "sampled"),
                          default="exhaustive")
    scheme_p.add_argument("--samples", type=int, default=1000)

    validate_p = sub.add_parser("validate", parents=[common],
                                help="run the exhaustive small-n invariant suites")
    validate_p.add_argument("--max-n", dest="max_n", type=int, default=5)
    return parser


def _cmd_gen(args) -> int:
    g = generate(args.family, _family_params(args), args.seed)
    if not args.out:
        print("--out is required for gen", file=sys.stderr)
        return 2
    save_graph(g, args.out)
    print(f"wrote {args.family} graph: n={g.n}, m={g.m} -> {args.out}")
    return 0


def _cmd_run(args) -> int:
    sweep = tuple(int(tok) for tok in args.ns.split(",") if tok)
    params = _family_params(args)
    params.pop("n", None)
    config = ExperimentConfig(
        algorithm=args.algorithm,
        family=args.family,
        family_params=params,
        sweep=sweep,
        trials=args.trials,
        base_seed=args.seed,
        mode=args.mode,
        budget=args.budget,
        param=args.param,
        include_timing=args.timing,
    )
    records = run_experiment(config)
    fh = _open_out(args.out)
    try:
        if args.format == "json":
            write_json(records, fh)
        else:
            write_csv(records, fh)
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


def _cmd_race(args) -> int:
    hidden = generate(args.family, _family_params(args), args.seed)
    try:
        output, report = race(hidden, budget=args.budget, seed=args.seed)
    except RaceExhaustedError as exc:
        _emit(args.out, json.dumps({"error": str(exc), "counts": exc.counts}) + "\n")
        return 1
    payload = json.loads(report.to_json())
    payload["correct"] = graph_equal(output, hidden)
    _emit(args.out, json.dumps(payload, sort_keys=True) + "\n")
    return 0 if payload["correct"] else 1


def _cmd_bridge(args) -> int:
    hidden = generate(args.family, _family_params(args), args.seed)
    rng = random.Random(args.seed)
    names = sorted(BRIDGES) if args.check == "all" else [args.check]
    results = []
    ok_all = True
    for name in names:
        for _ in range(args.sets):
            session = OracleSession(hidden, budget=args.budget)
            if name == "sep-via-cc":
                v, w = rng.sample(range(hidden.n), 2)
                u = frozenset(x for x in range(hidden.n)
                              if x not in (v, w) and rng.random() < 0.5)
                report = run_bridge(name, session, v=v, w=w, u=u)
                expected = not components_bruteforce(
                    hidden, set(range(hidden.n)) - u).same_block(v, w)
                ok = report.output == expected
            else:
                s = frozenset(x for x in range(hidden.n) if rng.random() < 0.5)
                report = run_bridge(name, session, s=s)
                if name == "mis-via-cc":
                    ok = report.queries_used == len(s)
                else:
                    ok = report.output == components_bruteforce(hidden, s)
            ok_all &= ok
            results.append({"procedure": name, "queries_used": report.queries_used,
                            "ok": ok})
    _emit(args.out, json.dumps(results, indent=2, sort_keys=True) + "\n")
    return 0 if ok_all else 1


def _cmd_scheme(args) -> int:
    if args.action == "build":
        if args.n is None or args.p is None:
            print("scheme build needs --n and --p", file=sys.stderr)
            return 2
        if args.method == "random":
            scheme = random_scheme(args.n, args.p, random.Random(args.seed))
        else:
            scheme = scheme_from_splitter(build_splitter(args.n, args.p + 2), args.p)
        if not args.out:
            print("--out is required for scheme build", file=sys.stderr)
            return 2
        save_scheme(scheme, args.out)
        print(f"wrote {scheme.provenance} scheme: n={scheme.n}, p={scheme.p}, "
              f"queries={len(scheme)} -> {args.out}")
        return 0
    if not args.file:
        print("scheme verify needs --file", file=sys.stderr)
        return 2
    scheme = load_scheme(args.file)
    if args.mode == "sampled":
        report = verify_scheme(scheme, mode="sampled", sample_count=args.samples,
                               rng=random.Random(args.seed))
    else:
        report = verify_scheme(scheme, mode="exhaustive")
    if report.covered:
        print(f"covered: checked {report.checked} witnesses")
        return 0
    witness = report.counterexample
    print(f"NOT covered: pair={sorted(witness.pair)}, "
          f"excluded={sorted(witness.excluded)}")
    return 1


def _cmd_validate(args) -> int:
    results = run_validation(args.max_n)
    for result in results:
        print(result.line())
    return 0 if all(r.ok for r in results) else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "gen": _cmd_gen,
        "run": _cmd_run,
        "race": _cmd_race,
        "bridge": _cmd_bridge,
        "scheme": _cmd_scheme,
        "validate": _cmd_validate,
    }[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
