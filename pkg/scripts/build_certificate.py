#!/usr/bin/env python3
"""Regenerate the bundled certificates for beta = 9591468737351909375.

Writes two files into src/smooth_neighbors/data/:

  certificate_9591468737351909375.json
      the known decomposition chain; leaves name the set they belong to
      ("z199" or "z227_round2").  16504943 is in neither set, so it gets
      a short subtree over z227_round2 instead.

  certificate_9591468737351909375_seeds.json
      the same chain with every leaf expanded down to seeds in 1..227,
      using round provenance from delta(1..199) (4 rounds) and
      delta(1..227) (2 rounds).  It checks with no base sets at all.

Takes a few minutes (round 4 of delta(1..199) dominates).
"""
import argparse
import sys
import time
from pathlib import Path

from smooth_neighbors.certify import Inner, Leaf, build_tree, dump_certificate, leaves, verify_tree
from smooth_neighbors.closure import RunLimits, delta

BETA = 9591468737351909375
V = dict(
    b=285406166331883519, B=294159243066390624,
    g1=2229716045541599, g2=2247272709023744, h1=186642247267999999, h2=510640590102749183,
    i1=907177810312319, i2=911608699868750, j1=1671690051584, j2=1672934505788,
    k1=341611712, k2=341681535, m1=300775, m2=301040, n1=3405, n2=3444, o1=454, o2=524,
    p1=199802399641, p2=199846415040, q1=16503580, q2=16504943, r1=561824, r2=581624,
    s1=49664, s2=54480, t1=6810, t2=7783, u1=108033083250000, u2=122557101693480,
    v1=10638314820, v2=10639238337, w1=1451240, w2=1451438, x1=92852, x2=99198,
    y1=4312, y2=4508,
)
# parent-of relations F(left, right) = node
CHAIN = {
    "beta": ("b", "B"), "b": ("g1", "g2"), "B": ("h1", "h2"), "h1": ("i1", "i2"),
    "g2": ("j1", "j2"), "j1": ("k1", "k2"), "k2": ("m1", "m2"), "m1": ("n1", "n2"),
    "n1": ("o1", "o2"), "i1": ("p1", "p2"), "p2": ("q1", "q2"), "q1": ("r1", "r2"),
    "r1": ("s1", "s2"), "s2": ("t1", "t2"), "i2": ("u1", "u2"), "u2": ("v1", "v2"),
    "v1": ("w1", "w2"), "w2": ("x1", "x2"), "x2": ("y1", "y2"),
}
IN_Z199 = "g1 h2 j2 k1 m2 n2 o2 p1 r2 s1 t2 u1 v2 w1 x1 y2".split()
IN_Z227 = "o1 t1 y1".split()


def chain_tree(leaf_for):
    def node(name):
        if name in CHAIN:
            left, right = CHAIN[name]
            return Inner(BETA if name == "beta" else V[name], node(left), node(right))
        return leaf_for(name)
    return node("beta")


def expand(value, prov, seeds):
    if value in seeds:
        return Leaf(value, None)
    b, B = prov[value]
    return Inner(value, expand(b, prov, seeds), expand(B, prov, seeds))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default=str(Path(__file__).resolve().parents[1] / "src/smooth_neighbors/data"))
    args = ap.parse_args()
    out = Path(args.out_dir)

    t0 = time.time()
    z227, tr227 = delta(range(1, 228), limits=RunLimits(max_rounds=2))
    print(f"z227 round 2: {len(z227)} members ({time.time() - t0:.1f}s)", flush=True)
    z199, tr199 = delta(range(1, 200), limits=RunLimits(max_rounds=4),
                        on_round=lambda st, new: print(f"  z199 round {st.round_index}: {len(st.members)}", flush=True))
    print(f"z199 round 4: {len(z199)} members ({time.time() - t0:.1f}s)", flush=True)

    q2_tree = build_tree(V["q2"], z227, depth_limit=4, source="z227_round2")
    if q2_tree is None:
        sys.exit("no subtree for q2")

    def chain_leaf(name):
        if name in IN_Z199:
            return Leaf(V[name], "z199")
        if name in IN_Z227:
            return Leaf(V[name], "z227_round2")
        if name == "q2":
            return q2_tree
        raise KeyError(name)

    chain = chain_tree(chain_leaf)
    dump_certificate(chain, out / "certificate_9591468737351909375.json",
                     {"z199": "delta(1..199), run to its fixpoint",
                      "z227_round2": "first two rounds of delta(1..227)"},
                     note="decomposition chain for 9591468737351909375 over delta(1..199) and two rounds of delta(1..227)")

    seeds199 = frozenset(range(1, 200))
    seeds227 = frozenset(range(1, 228))

    def seed_leaf(name):
        v = V[name]
        if name in IN_Z199:
            sub = build_tree(v, z199, depth_limit=4, source="z199_round4")
            if sub is None:
                sys.exit(f"no subtree for {name}")
            return regraft(sub, tr199.provenance, seeds199)
        if name in IN_Z227:
            return expand(v, tr227.provenance, seeds227)
        return regraft(q2_tree, tr227.provenance, seeds227)

    def regraft(tree, prov, seeds):
        if isinstance(tree, Leaf):
            return expand(tree.value, prov, seeds)
        return Inner(tree.value, regraft(tree.left, prov, seeds), regraft(tree.right, prov, seeds))

    full = chain_tree(seed_leaf)
    report = verify_tree(full, seeds=seeds227)
    if not report.passed:
        sys.exit("\n".join(report.lines()))
    dump_certificate(full, out / "certificate_9591468737351909375_seeds.json",
                     {}, note="every leaf is a seed in 1..227")
    print(f"wrote certificates: {len(report.checks)} checks, {len(leaves(full))} leaves "
          f"({time.time() - t0:.1f}s)")


if __name__ == "__main__":
    main()
