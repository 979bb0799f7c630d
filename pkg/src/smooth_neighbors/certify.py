"""Decomposition-tree certificates of membership.

An inner node with children (b, B) asserts F(b, B) = value.  A leaf asserts
membership in a named base set, or in the seed list when ``source`` is None.
Checking a certificate only needs gcd arithmetic and set lookups.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .arith import FactorizationGaveUp, factorint, smooth_lpf
from .closure import NeighborSet, merge
from .diophantine import pair_lpf, parents_from_beta

FORMAT = "smooth-neighbors-certificate"


@dataclass
class Leaf:
    value: int
    source: str | None = None


@dataclass
class Inner:
    value: int
    left: "Leaf | Inner"
    right: "Leaf | Inner"


DecompTree = Leaf | Inner


@dataclass
class Check:
    path: str
    value: int
    claim: str
    ok: bool


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def lines(self) -> list[str]:
        return [f"{'ok  ' if c.ok else 'FAIL'} {c.path or 'root'}: {c.claim}" for c in self.checks]


def verify_tree(tree: DecompTree, bases: Mapping[str, NeighborSet | Iterable[int]] | None = None,
                seeds: Iterable[int] = ()) -> VerificationReport:
    """Check every merge identity and every leaf attestation."""
    lookup = {name: (s if isinstance(s, NeighborSet) else frozenset(s))
              for name, s in (bases or {}).items()}
    seed_set = frozenset(seeds)
    report = VerificationReport()
    stack: list[tuple[str, DecompTree]] = [("", tree)]
    while stack:
        path, node = stack.pop()
        if isinstance(node, Leaf):
            if node.source is None:
                ok = node.value in seed_set
                claim = f"{node.value} is a seed"
            else:
                base = lookup.get(node.source)
                ok = base is not None and node.value in base
                claim = f"{node.value} in {node.source}"
                if base is None:
                    claim += " (base set not provided)"
            report.checks.append(Check(path, node.value, claim, ok))
            continue
        b, B = node.left.value, node.right.value
        ok = 1 <= b < B and merge(b, B, 1) == node.value
        report.checks.append(Check(path, node.value, f"F({b}, {B}) = {node.value}", ok))
        stack.append((path + "R", node.right))
        stack.append((path + "L", node.left))
    report.checks.sort(key=lambda c: (len(c.path), c.path))
    return report


@dataclass(frozen=True)
class SearchStrategy:
    prime_cap: int | None = None
    max_parents: int | None = None


def build_tree(beta: int, base: NeighborSet, depth_limit: int = 8,
               strategy: SearchStrategy = SearchStrategy(), source: str = "base") -> DecompTree | None:
    """Search for a tree proving beta from members of base.

    None means nothing was found under the limits; it does not prove
    beta is outside the closure of base.
    """
    cap = strategy.prime_cap or base.z
    failed: dict[int, int] = {}

    def candidates(value: int):
        try:
            fb, fb1 = factorint(value), factorint(value + 1)
        except FactorizationGaveUp:
            return []
        ranked = []
        for _, b, B in parents_from_beta(value, fb, fb1):
            # every node of a tree over a cap-smooth base is cap-smooth itself
            if cap is None:
                try:
                    worst = pair_lpf(b, B)
                except FactorizationGaveUp:
                    continue
            else:
                worst = 1
                for n in (b, b + 1, B, B + 1):
                    p = smooth_lpf(n, cap)
                    if p is None:
                        worst = None
                        break
                    worst = max(worst, p)
                if worst is None:
                    continue
            hits = (b in base) + (B in base)
            ranked.append((-hits, worst, b, B))
        ranked.sort()
        if strategy.max_parents is not None:
            ranked = ranked[: strategy.max_parents]
        return ranked

    def search(value: int, depth: int) -> DecompTree | None:
        if value in base:
            return Leaf(value, source)
        if depth == 0 or failed.get(value, -1) >= depth:
            return None
        for _, _, b, B in candidates(value):
            left = search(b, depth - 1)
            if left is None:
                continue
            right = search(B, depth - 1)
            if right is None:
                continue
            return Inner(value, left, right)
        failed[value] = depth
        return None

    return search(beta, depth_limit)


def leaves(tree: DecompTree) -> list[Leaf]:
    if isinstance(tree, Leaf):
        return [tree]
    return leaves(tree.left) + leaves(tree.right)


def inner_nodes(tree: DecompTree) -> list[Inner]:
    if isinstance(tree, Leaf):
        return []
    return [tree] + inner_nodes(tree.left) + inner_nodes(tree.right)


def tree_to_json(tree: DecompTree) -> dict:
    if isinstance(tree, Leaf):
        return {"value": str(tree.value), "member_of": tree.source or "seed"}
    return {"value": str(tree.value), "children": [tree_to_json(tree.left), tree_to_json(tree.right)]}


def tree_from_json(obj: dict) -> DecompTree:
    value = int(obj["value"])
    if "children" in obj:
        left, right = obj["children"]
        return Inner(value, tree_from_json(left), tree_from_json(right))
    src = obj.get("member_of", "seed")
    return Leaf(value, None if src == "seed" else src)


def dump_certificate(tree: DecompTree, path: str | Path, bases: Mapping[str, str] | None = None,
                     note: str | None = None) -> None:
    doc = {"format": FORMAT, "version": 1, "root": str(tree.value),
           "bases": dict(bases or {}), "tree": tree_to_json(tree)}
    if note:
        doc["note"] = note
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


def load_certificate(path: str | Path) -> tuple[DecompTree, dict]:
    doc = json.loads(Path(path).read_text())
    if doc.get("format") != FORMAT:
        raise ValueError(f"{path}: not a certificate file")
    tree = tree_from_json(doc["tree"])
    if str(tree.value) != doc["root"]:
        raise ValueError(f"{path}: root {doc['root']} does not match tree value {tree.value}")
    return tree, doc
