"""Command-line entry point: ``smooth-neighbors <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 limit hit / partial result,
3 I/O error, 4 factorization gave up where certainty was required.
"""
from __future__ import annotations

import argparse
import logging
import sys
from importlib import resources
from pathlib import Path

from . import analysis, certify, diophantine
from .arith import EffortConfig, FactorizationGaveUp, is_smooth, primes_up_to
from .closure import NeighborSet, RunLimits, delta, even_search
from .fileio import load_checkpoint, read_members, save_checkpoint, write_members

log = logging.getLogger("smooth_neighbors")

EXIT_OK, EXIT_VERIFY, EXIT_PARTIAL, EXIT_IO, EXIT_GAVE_UP = 0, 1, 2, 3, 4

BUNDLED_CERT = "certificate_9591468737351909375.json"


def parse_seed(spec: str) -> list[int]:
    """'1..p' or a comma-separated list."""
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in spec.split(",") if x.strip()]


def _limits(args) -> RunLimits:
    return RunLimits(args.max_rounds, args.max_members, args.wall_time, args.max_value)


def _effort(args) -> EffortConfig:
    return EffortConfig(rho_iterations=args.rho_iterations)


def cmd_closure(args) -> int:
    resume = None
    if args.resume:
        if not args.checkpoint:
            log.error("--resume needs --checkpoint")
            return EXIT_IO
        resume = load_checkpoint(args.checkpoint)
        seed: list[int] = []
        log.info("resuming at round %d with %d members", resume.round_index, len(resume.members))
    elif args.seed_file:
        seed = read_members(args.seed_file)[0].members
    else:
        seed = parse_seed(args.seed)

    def on_round(state, new):
        print(f"round {state.round_index}: +{len(new)} new, {len(state.members)} members", flush=True)
        if args.checkpoint:
            save_checkpoint(args.checkpoint, state)

    result, trace = delta(seed, args.k, _limits(args), z=args.z, workers=args.workers,
                          resume=resume, on_round=on_round)
    write_members(args.out, result)
    print(f"{len(result)} members, z={result.z}, complete={str(result.complete).lower()}")
    if not result.complete:
        log.warning("stopped early: %s", trace.stop_reason)
        return EXIT_PARTIAL
    return EXIT_OK


def cmd_even(args) -> int:
    base, _ = read_members(args.members)
    found = even_search(base.members, workers=args.workers)
    result = NeighborSet(base.z, [beta for beta, _, _ in found], k=2, complete=False)
    write_members(args.out, result)
    print(f"{len(result)} difference-2 solutions from {len(base)} members")
    return EXIT_OK


def cmd_verify(args) -> int:
    s, header = read_members(args.member_file)
    z = args.z if args.z is not None else s.z
    if z is None and len(s):
        log.error("no bound in file header; pass --z")
        return EXIT_IO
    bad = [b for b in s.members if not is_smooth(b * (b + s.k), z)]
    for b in bad:
        print(f"FAIL {b}: {b}*({b}+{s.k}) is not {z}-smooth")
    print(f"checked {len(s)} members against z={z}: {'pass' if not bad else f'{len(bad)} failures'}")
    return EXIT_VERIFY if bad else EXIT_OK


def _parse_bases(items: list[str]) -> dict[str, NeighborSet]:
    bases = {}
    for item in items or []:
        name, sep, path = item.partition("=")
        if not sep:
            path, name = item, Path(item).stem
        bases[name] = read_members(path)[0]
    return bases


def _build_bases(items: list[str]) -> dict[str, NeighborSet]:
    """NAME=closure:SEED[:ROUNDS] computes a (partial) closure on the fly."""
    bases = {}
    for item in items or []:
        name, _, spec = item.partition("=")
        parts = spec.split(":")
        rounds = int(parts[2]) if len(parts) > 2 else None
        s, _ = delta(parse_seed(parts[1]), limits=RunLimits(max_rounds=rounds))
        bases[name] = s
    return bases


def cmd_certify(args) -> int:
    bases = _parse_bases(args.base) | _build_bases(args.compute_base)
    if not bases:
        log.error("need at least one --base")
        return EXIT_IO
    names = list(bases)
    union = NeighborSet(max((b.z or 0) for b in bases.values()) or None,
                        [m for b in bases.values() for m in b.members])
    strategy = certify.SearchStrategy(prime_cap=args.prime_cap)
    try:
        tree = certify.build_tree(args.beta, union, args.depth, strategy, source=names[0])
    except FactorizationGaveUp as exc:
        log.error("%s", exc)
        return EXIT_GAVE_UP
    if tree is None:
        print(f"no tree for {args.beta} within depth {args.depth}")
        return EXIT_VERIFY
    for leaf in certify.leaves(tree):
        leaf.source = next(n for n in names if leaf.value in bases[n])
    report = certify.verify_tree(tree, bases)
    certify.dump_certificate(tree, args.out, {n: f"member file for {n}" for n in names})
    print(f"certificate for {args.beta}: {len(certify.inner_nodes(tree))} merges, "
          f"{len(certify.leaves(tree))} leaves, re-check {'pass' if report.passed else 'FAIL'}")
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_check_cert(args) -> int:
    path = args.cert_file
    if path is None:
        path = resources.files("smooth_neighbors") / "data" / BUNDLED_CERT
    tree, doc = certify.load_certificate(path)
    bases = _parse_bases(args.base) | _build_bases(args.compute_base)
    seeds = parse_seed(args.seed) if args.seed else ()
    report = certify.verify_tree(tree, bases, seeds)
    for line in report.lines() if args.verbose else [f"FAIL {c.path or 'root'}: {c.claim}" for c in report.failures]:
        print(line)
    print(f"{doc['root']}: {len(report.checks)} checks, {'pass' if report.passed else 'FAIL'}")
    return EXIT_OK if report.passed else EXIT_VERIFY


def _labelled_sets(items: list[str]) -> list[tuple[int | None, NeighborSet]]:
    """Member files given as FILE or P=FILE; P names the seed prime of z_P."""
    out = []
    for item in items:
        label, sep, path = item.partition("=")
        if sep and label.isdigit():
            out.append((int(label), read_members(path)[0]))
        else:
            out.append((None, read_members(item)[0]))
    return out


def cmd_analyze(args) -> int:
    a = args.analysis
    if a == "histogram":
        s, _ = read_members(args.members[0])
        edges, counts, mean, sd = analysis.log_histogram(s, args.bins)
        rows = [(f"{lo!r}", f"{hi!r}", c) for lo, hi, c in zip(edges, edges[1:], counts)]
        analysis.write_csv(args.out, ["bin_left", "bin_right", "count"], rows)
        print(f"n={len(s)} mean={mean!r} stddev={sd!r}")
    elif a == "growth":
        sets = {}
        for p, s in _labelled_sets(args.members):
            sets[p if p is not None else s.z] = s
        try:
            rows = analysis.growth_by_prime(sets)
        except analysis.MissingPrime as exc:
            log.error("%s", exc)
            return EXIT_IO
        ps = primes_up_to(max(sets))
        analysis.write_csv(args.out, ["n", "prime", "new_members"], [(n, ps[n - 1], d) for n, d in rows])
    elif a == "stragglers":
        old, _ = read_members(args.members[0])
        new, _ = read_members(args.members[1])
        counts, gave_up = analysis.classify_new_members(old, new, _effort(args))
        analysis.write_csv(args.out, ["prime", "count"], counts.items())
        if gave_up:
            print(f"{len(gave_up)} members could not be factored")
            return EXIT_GAVE_UP
    elif a == "largest":
        s, _ = read_members(args.members[0])
        analysis.write_csv(args.out, ["q", "b"], analysis.largest_per_prime(s))
    elif a == "runs":
        rows = []
        for p, s in _labelled_sets(args.members):
            z = args.z if args.z is not None else p
            recs = analysis.longest_runs(s, args.h_max, z)
            rows.append([recs[0].z] + [r.n for r in recs])
            if recs[0].lower_bound:
                print(f"p={recs[0].z}: set not known to be complete, values are lower bounds",
                      file=sys.stderr)
        header = ["p"] + [f"h={h}" for h in range(2, args.h_max + 1)]
        analysis.write_csv(args.out, header, rows)
    elif a == "abc-index":
        if args.triple:
            A, B = sorted(args.triple[:2])
            triples = [analysis.AbcTriple(A, B, args.triple[2] if len(args.triple) > 2 else A + B)]
        elif args.triples:
            triples = analysis.read_triples(args.triples)
        else:
            log.error("abc-index needs --triple or --triples")
            return EXIT_IO
        rows = []
        try:
            for t in triples:
                m = analysis.abc_measures(t, _effort(args))
                rows.append((t.A, t.B, t.C, m.radical, f"{m.quality:.6f}", f"{m.smoothness_index:.6f}",
                             f"{m.smoothness_exponent:.6f}", m.z))
        except FactorizationGaveUp as exc:
            log.error("%s", exc)
            return EXIT_GAVE_UP
        header = ["A", "B", "C", "radical", "quality", "smoothness_index", "smoothness_exponent", "z"]
        analysis.write_csv(args.out, header, rows)
        if len(rows) == 1:
            print(rows[0][5])
    elif a == "abc-max":
        recs = analysis.maximally_smooth_scan(args.limit)
        analysis.write_csv(args.out, ["A", "B", "C", "smoothness_index"],
                           [(t.A, t.B, t.C, f"{s:.6f}") for t, s in recs])
        print(f"{len(recs)} records up to C={args.limit}")
    return EXIT_OK


def cmd_beta_pairs(args) -> int:
    beta = args.beta
    effort = _effort(args)
    try:
        fb, fb1 = diophantine.factorint(beta, effort), diophantine.factorint(beta + 1, effort)
    except FactorizationGaveUp as exc:
        log.error("%s", exc)
        return EXIT_GAVE_UP
    grid = diophantine.divisor_grid_size(fb, fb1)
    if args.mode == "list":
        out = open(args.out, "w") if args.out else sys.stdout
        try:
            out.write("u,v,b,B\n")
            cand = n = 0
            for pair, g in diophantine.divisor_grid(beta, fb, fb1):
                cand += 1
                if g >= 1:
                    n += 1
                    out.write(f"{pair.u},{pair.v},{pair.u * g},{pair.v * g}\n")
                elif args.all:
                    out.write(f"{pair.u},{pair.v},,\n")
        finally:
            if out is not sys.stdout:
                out.close()
        print(f"divisor grid {grid}, {cand} entries with u < v, {n} parent pairs", file=sys.stderr)
        return EXIT_OK
    p, pairs = diophantine.min_smoothness_over_parents(beta, args.prime_cap, effort, args.workers)
    print(f"divisor grid {grid}; pairs skipped for factoring: 0")
    if p is None:
        print(f"no parent pair of {beta} is {args.prime_cap}-smooth")
        return EXIT_VERIFY
    print(f"min prime {p} over {len(pairs)} pairs")
    for b, B in pairs:
        print(f"{b},{B}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="smooth-neighbors", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def effort_flags(p):
        p.add_argument("--rho-iterations", type=int, default=EffortConfig.rho_iterations)

    p = sub.add_parser("closure", help="compute delta(seed) and write a member file")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--seed", default="1..5", help="'1..p' or a comma list (default 1..5)")
    g.add_argument("--seed-file")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--z", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--max-rounds", type=int)
    p.add_argument("--max-members", type=int)
    p.add_argument("--wall-time", type=float)
    p.add_argument("--max-value", type=int)
    p.add_argument("--checkpoint")
    p.add_argument("--resume", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("even", help="difference-2 solutions from a difference-1 member file")
    p.add_argument("members")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_even)

    p = sub.add_parser("verify", help="re-check the smoothness of every member")
    p.add_argument("member_file")
    p.add_argument("--z", type=int)
    p.set_defaults(func=cmd_verify)

    for name, func in (("certify", cmd_certify), ("check-cert", cmd_check_cert)):
        p = sub.add_parser(name)
        if name == "certify":
            p.add_argument("beta", type=int)
            p.add_argument("--depth", type=int, default=6)
            p.add_argument("--prime-cap", type=int)
            p.add_argument("--out", required=True)
        else:
            p.add_argument("cert_file", nargs="?", help="defaults to the bundled certificate")
            p.add_argument("--seed")
        p.add_argument("--base", action="append", default=[], metavar="NAME=FILE")
        p.add_argument("--compute-base", action="append", default=[],
                       metavar="NAME=closure:SEED[:ROUNDS]")
        p.set_defaults(func=func)

    p = sub.add_parser("analyze", help="emit CSV tables")
    p.add_argument("analysis", choices=["histogram", "growth", "stragglers", "largest", "runs",
                                        "abc-index", "abc-max"])
    p.add_argument("--members", nargs="*", default=[], metavar="[P=]FILE",
                   help="member files; growth and runs read P as the seed prime of z_P")
    p.add_argument("--bins", type=int, default=50)
    p.add_argument("--h-max", type=int, default=7)
    p.add_argument("--z", type=int, help="runs: count only members with b(b+1) z-smooth")
    p.add_argument("--triple", type=int, nargs="+")
    p.add_argument("--triples")
    p.add_argument("--limit", type=int, default=100000)
    p.add_argument("--out", required=True)
    effort_flags(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("beta-pairs", help="parent pairs of beta, or the min-prime search")
    p.add_argument("beta", type=int)
    p.add_argument("--mode", choices=["list", "min-prime"], default="list")
    p.add_argument("--prime-cap", type=int, default=1000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--all", action="store_true",
                   help="list: also print grid entries with no positive solution (blank b, B)")
    p.add_argument("--out")
    effort_flags(p)
    p.set_defaults(func=cmd_beta_pairs)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except OSError as exc:
        log.error("%s", exc)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
