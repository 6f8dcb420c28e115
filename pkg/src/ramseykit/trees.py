"""Finite truncations of trees on increasing strings.

Trees are explicit prefix-closed node sets, so path search and the
Kleene-Brouwer order are plain enumerations.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable

from .core import Universe, dominates, string

__all__ = [
    "EmptyTreeError",
    "KBOrder",
    "TreeGen",
    "bounded_subtree",
    "find_full_path",
    "kb_compare",
    "kb_order",
    "prefix_closure",
]


class EmptyTreeError(ValueError):
    pass


def prefix_closure(nodes: Iterable[Iterable[int]]) -> frozenset[tuple[int, ...]]:
    closed: set[tuple[int, ...]] = set()
    for n in nodes:
        t = string(n)
        for k in range(len(t) + 1):
            closed.add(t[:k])
    return frozenset(closed)


@dataclass(frozen=True)
class TreeGen:
    """A finite prefix-closed set of increasing strings."""

    nodes: frozenset[tuple[int, ...]]

    def __init__(self, nodes: Iterable[Iterable[int]] = ()) -> None:
        ns = frozenset(string(n) for n in nodes)
        for n in ns:
            if n and n[:-1] not in ns:
                raise ValueError(f"not prefix-closed: {n[:-1]!r} missing for {n!r}")
        object.__setattr__(self, "nodes", ns)

    def __contains__(self, item: tuple[int, ...]) -> bool:
        return tuple(item) in self.nodes

    def __len__(self) -> int:
        return len(self.nodes)

    def __bool__(self) -> bool:
        return bool(self.nodes)

    @property
    def depth(self) -> int:
        return max((len(n) for n in self.nodes), default=0)

    def sorted_nodes(self) -> list[tuple[int, ...]]:
        return sorted(self.nodes, key=lambda n: (len(n), n))

    def children(self, node: tuple[int, ...]) -> list[tuple[int, ...]]:
        last = node[-1] if node else -1
        return [
            node + (m,)
            for m in sorted(
                c[-1] for c in self.nodes if len(c) == len(node) + 1 and c[: len(node)] == node
            )
            if m > last
        ]


@dataclass(frozen=True)
class KBOrder:
    """The Kleene-Brouwer order on a tree's nodes, listed least first."""

    elements: tuple[tuple[int, ...], ...]

    def index(self, node: tuple[int, ...]) -> int:
        return self.elements.index(node)


def kb_compare(s: tuple[int, ...], t: tuple[int, ...]) -> int:
    """-1, 0 or 1 for s before, equal to or after t in the KB order.

    s comes before t iff t is a proper prefix of s, or s is smaller at the
    first disagreement.
    """
    if s == t:
        return 0
    for a, b in zip(s, t):
        if a != b:
            return -1 if a < b else 1
    # one is a prefix of the other; the extension comes first
    return -1 if len(s) > len(t) else 1


def kb_order(tree: TreeGen) -> KBOrder:
    if not tree:
        raise EmptyTreeError("KB order of the empty tree")
    key = functools.cmp_to_key(kb_compare)
    return KBOrder(tuple(sorted(tree.nodes, key=key)))


def find_full_path(tree: TreeGen, universe: Universe) -> tuple[int, ...] | None:
    """Lexicographically least node of horizon length, or None.

    A depth-L node is the finite-scale stand-in for an infinite path.
    """
    full = [n for n in tree.nodes if len(n) == universe.L]
    return min(full) if full else None


def bounded_subtree(tree: TreeGen, f: tuple[int, ...]) -> TreeGen:
    """Nodes of the tree pointwise dominated by the corresponding prefix
    of f (and no longer than f). Prefix-closedness is preserved."""
    kept = [
        n for n in tree.nodes if len(n) <= len(f) and dominates(n, f[: len(n)])
    ]
    return TreeGen(kept)
