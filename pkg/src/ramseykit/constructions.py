"""Code-to-code and tree-to-code transformations.

All transformations are pure functions on the finite representations from
:mod:`ramseykit.core` and :mod:`ramseykit.trees`. Transformations that move
a code to a larger alphabet (pair coding, power embeddings, string-code
tables) also report the enlarged universe so callers can thread bounds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Iterable, Iterator

from .core import (
    ClopenCode,
    OpenCode,
    Universe,
    all_increasing_strings,
    dominates,
    is_increasing,
    is_subsequence,
    member_prefix,
    string,
)
from .trees import TreeGen

__all__ = [
    "EmbeddingMap",
    "LengthOneGenerator",
    "NotAChain",
    "NotIncreasing",
    "PairedString",
    "StringCoder",
    "avoid_side_tree",
    "avoid_side_tree_member",
    "box_product_codes",
    "box_universe",
    "cantor_pair",
    "cantor_unpair",
    "clopen_double_code",
    "decode_path",
    "describe_chain_generators",
    "describe_path_code",
    "describe_path_generators",
    "describe_universe",
    "element_power_code",
    "element_power_string",
    "ensure_min_gen_length",
    "identity_embedding",
    "pair_code_string",
    "pow_base",
    "power_universe",
    "project_paired",
    "solovay_code",
    "string_code_pow",
]


class LengthOneGenerator(ValueError):
    pass


class NotAChain(ValueError):
    pass


class NotIncreasing(ValueError):
    pass


# ---------------------------------------------------------------------------
# the avoid-side tree


def avoid_side_tree_member(s: tuple[int, ...], code: OpenCode) -> bool:
    """True iff no subsequence of s has a prefix in the code.

    Equivalently, no generator is a subsequence of s; the set of members is
    prefix-closed.
    """
    return not any(is_subsequence(g, s) for g in code.generators)


def avoid_side_tree(code: OpenCode, universe: Universe) -> TreeGen:
    """The alphabet- and horizon-restricted tree of avoid-side strings."""
    nodes: list[tuple[int, ...]] = []
    stack: list[tuple[int, ...]] = []
    if avoid_side_tree_member((), code):
        stack.append(())
    while stack:
        s = stack.pop()
        nodes.append(s)
        if len(s) == universe.L:
            continue
        first = s[-1] + 1 if s else 0
        for m in range(first, universe.M):
            t = s + (m,)
            if avoid_side_tree_member(t, code):
                stack.append(t)
    return TreeGen(nodes)


# ---------------------------------------------------------------------------
# power embeddings


def element_power_string(n: int, f: tuple[int, ...]) -> tuple[int, ...]:
    """Apply i -> n**(i+1) entrywise; strictly increasing for n >= 2."""
    if n < 2:
        raise ValueError("base must be at least 2")
    return tuple(n ** (e + 1) for e in f)


def element_power_code(n: int, code: OpenCode) -> OpenCode:
    return OpenCode(element_power_string(n, g) for g in code.generators)


def power_universe(n: int, universe: Universe) -> Universe:
    # the largest image of an entry below M is n**M, so the enlarged
    # alphabet bound must exceed it
    return Universe(M=n**universe.M + 1, L=universe.L)


# ---------------------------------------------------------------------------
# pair coding and the box product


def cantor_pair(a: int, b: int) -> int:
    s = a + b
    return s * (s + 1) // 2 + b


def cantor_unpair(z: int) -> tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


@dataclass(frozen=True)
class PairedString:
    """An ordered list of coordinate pairs; projections may be invalid."""

    pairs: tuple[tuple[int, int], ...]

    def __init__(self, pairs: Iterable[tuple[int, int]]) -> None:
        object.__setattr__(
            self, "pairs", tuple((int(a), int(b)) for a, b in pairs)
        )

    def __len__(self) -> int:
        return len(self.pairs)


def project_paired(i: int, x: PairedString) -> tuple[int, ...]:
    """Coordinate projection; raises NotIncreasing if it is not monotone."""
    if i not in (1, 2):
        raise ValueError("coordinate index must be 1 or 2")
    coords = tuple(p[i - 1] for p in x.pairs)
    if not is_increasing(coords):
        raise NotIncreasing(f"projection {i} of {x.pairs!r} is not increasing")
    return coords


def pair_code_string(pairs: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    """Diagonal pair coding of a pair string; the pairing is strictly
    monotone when both coordinates strictly increase, so the result is a
    valid increasing string."""
    return string(cantor_pair(a, b) for a, b in pairs)


def decode_pair_string(h: tuple[int, ...]) -> PairedString:
    return PairedString(cantor_unpair(v) for v in h)


def box_universe(universe: Universe) -> Universe:
    return Universe(M=cantor_pair(universe.M - 1, universe.M - 1) + 1, L=universe.L)


def _extensions(s: tuple[int, ...], length: int, M: int) -> Iterator[tuple[int, ...]]:
    if len(s) > length:
        return
    first = s[-1] + 1 if s else 0
    for tail in itertools.combinations(range(first, M), length - len(s)):
        yield s + tail


def ensure_min_gen_length(code: OpenCode, universe: Universe) -> OpenCode:
    """Replace generators shorter than 2 by all their length-2 extensions
    over the alphabet (cone-equivalent at any horizon of length >= 2)."""
    gens: list[tuple[int, ...]] = []
    for g in code.generators:
        if len(g) >= 2:
            gens.append(g)
        else:
            gens.extend(_extensions(g, 2, universe.M))
    return OpenCode(gens)


def box_product_codes(
    p: OpenCode, q: OpenCode, universe: Universe, normalize_left: bool = False
) -> OpenCode:
    """Pair-coded product of two codes.

    For generators s of p and t of q, every pair-coded string over
    coordinate extensions of s and t to common length max(|s|, |t|) within
    the alphabet becomes a generator. Generators of p must have length at
    least 2 (pass normalize_left=True to widen them first).
    """
    if normalize_left:
        p = ensure_min_gen_length(p, universe)
    for g in p.generators:
        if len(g) < 2:
            raise LengthOneGenerator(f"left generator {g!r} shorter than 2")
    gens: list[tuple[int, ...]] = []
    for s in p.generators:
        for t in q.generators:
            n = max(len(s), len(t))
            for rho in _extensions(s, n, universe.M):
                for theta in _extensions(t, n, universe.M):
                    gens.append(pair_code_string(zip(rho, theta)))
    return OpenCode(gens)


# ---------------------------------------------------------------------------
# string coding and embeddings


@lru_cache(maxsize=None)
def _coder_table(alphabet: int, max_len: int) -> tuple[tuple[int, ...], ...]:
    table: list[tuple[int, ...]] = []
    for k in range(max_len + 1):
        table.extend(itertools.combinations(range(alphabet), k))
    return tuple(table)


@dataclass(frozen=True)
class StringCoder:
    """Length-lexicographic rank over increasing strings with entries below
    ``alphabet`` and length at most ``max_len``; the inverse is a table
    lookup."""

    alphabet: int
    max_len: int

    @property
    def table(self) -> tuple[tuple[int, ...], ...]:
        return _coder_table(self.alphabet, self.max_len)

    @property
    def size(self) -> int:
        return len(self.table)

    def code(self, s: tuple[int, ...]) -> int:
        try:
            return self._index()[tuple(s)]
        except KeyError:
            raise KeyError(f"string {s!r} outside coding table") from None

    def decode(self, i: int) -> tuple[int, ...]:
        return self.table[i]

    @lru_cache(maxsize=None)
    def _index(self) -> dict[tuple[int, ...], int]:
        return {s: i for i, s in enumerate(self.table)}


@dataclass(frozen=True)
class EmbeddingMap:
    """One of the three embeddings used by the tree-to-code constructions.

    ``identity`` maps an index to itself, ``pow_base`` maps i to n**(i+1),
    and ``string_code_pow`` maps a string s to n**(code(s)+1). A coder is
    attached when the embedding acts on string codes.
    """

    variant: str  # identity | pow_base | string_code_pow
    base: int | None = None
    coder: StringCoder | None = None

    def in_range(self, v: int) -> bool:
        if self.variant == "identity":
            return v >= 0
        n = self.base
        if v < n:
            return False
        while v % n == 0:
            v //= n
        return v == 1

    def index_value(self, i: int) -> int:
        if self.variant == "identity":
            return i
        return self.base ** (i + 1)

    def encode_string(self, s: tuple[int, ...]) -> int:
        if self.coder is None:
            raise ValueError(f"{self.variant} embedding has no string coder")
        return self.index_value(self.coder.code(s))

    def decode_value(self, v: int) -> tuple[int, ...]:
        if self.coder is None:
            raise ValueError(f"{self.variant} embedding has no string coder")
        if self.variant == "identity":
            return self.coder.decode(v)
        n = self.base
        k = 0
        w = v
        while w % n == 0:
            w //= n
            k += 1
        if w != 1 or k < 1:
            raise ValueError(f"{v} is not a positive power of {n}")
        return self.coder.decode(k - 1)

    def max_value(self) -> int:
        if self.coder is None:
            raise ValueError(f"{self.variant} embedding is unbounded")
        return self.index_value(self.coder.size - 1)


def identity_embedding(coder: StringCoder | None = None) -> EmbeddingMap:
    return EmbeddingMap("identity", coder=coder)


def pow_base(n: int) -> EmbeddingMap:
    if n < 2:
        raise ValueError("base must be at least 2")
    return EmbeddingMap("pow_base", base=n)


def string_code_pow(n: int, coder: StringCoder) -> EmbeddingMap:
    if n < 2:
        raise ValueError("base must be at least 2")
    return EmbeddingMap("string_code_pow", base=n, coder=coder)


# ---------------------------------------------------------------------------
# the Solovay open set


def solovay_code(tree: TreeGen, phi: EmbeddingMap, universe: Universe) -> OpenCode:
    """Generators are the minimal strings (length >= 2, first two values in
    the range of the embedding) that dominate no equal-length tree node.

    Once a string clears the domination test every extension clears it too
    (the tree is prefix-closed), so emitting at the least clearing length
    keeps the generator set an antichain. Candidates are capped at the
    universe horizon; deeper generators cannot affect any full-length
    classification.
    """
    M, L = universe.M, universe.L
    by_len: dict[int, list[tuple[int, ...]]] = {}
    for n in tree.nodes:
        by_len.setdefault(len(n), []).append(n)

    def cleared(s: tuple[int, ...]) -> bool:
        return not any(dominates(t, s) for t in by_len.get(len(s), ()))

    range_values = [v for v in range(M) if phi.in_range(v)]
    gens: list[tuple[int, ...]] = []
    frontier: list[tuple[int, ...]] = [
        (a, b) for a, b in itertools.combinations(range_values, 2)
    ]
    length = 2
    while frontier and length <= L:
        nxt: list[tuple[int, ...]] = []
        for s in frontier:
            if cleared(s):
                gens.append(s)
            else:
                nxt.extend(s + (m,) for m in range(s[-1] + 1, M))
        frontier = nxt
        length += 1
    return OpenCode(gens)


# ---------------------------------------------------------------------------
# describe-path clopen sets


def _chain_pairs(tree: TreeGen, phi: EmbeddingMap) -> list[tuple[int, int]]:
    nodes = tree.sorted_nodes()
    out: list[tuple[int, int]] = []
    for s0 in nodes:
        for s1 in nodes:
            if len(s0) < len(s1) and s1[: len(s0)] == s0:
                v0, v1 = phi.encode_string(s0), phi.encode_string(s1)
                if v0 < v1:
                    out.append((v0, v1))
    return out


def describe_path_generators(tree: TreeGen, phi: EmbeddingMap) -> OpenCode:
    """Positive side only: the code of value pairs of proper-extension node
    pairs. This is what open-side constructions over power embeddings use;
    the complement is never materialized."""
    return OpenCode(_chain_pairs(tree, phi))


def describe_chain_generators(tree: TreeGen, phi: EmbeddingMap, length: int) -> OpenCode:
    """Codes of proper-extension chains of exactly ``length`` nodes.

    Unioning a pair code with codes of other generator depths lets junk
    tails land at a bounded horizon; materializing whole chains keeps every
    generator at one depth, so a landing solution is itself a coded chain.
    """
    nodes = tree.sorted_nodes()
    ext: dict[tuple[int, ...], list[tuple[int, ...]]] = {
        n: [m for m in nodes if len(n) < len(m) and m[: len(n)] == n] for n in nodes
    }
    chains: list[tuple[int, ...]] = []

    def grow(chain: list[tuple[int, ...]]) -> None:
        if len(chain) == length:
            values = tuple(phi.encode_string(n) for n in chain)
            if is_increasing(values):
                chains.append(values)
            return
        for m in ext[chain[-1]]:
            grow(chain + [m])

    for n in nodes:
        grow([n])
    return OpenCode(chains)


_NEG_MATERIALIZE_CAP = 5000


def describe_path_code(tree: TreeGen, phi: EmbeddingMap) -> ClopenCode:
    """Clopen code whose landing solutions encode proper-extension chains
    of tree nodes under the embedding.

    The complement side is materialized explicitly at depth 2 over the
    embedded alphabet, so the result passes the clopen validity check; this
    requires a table-sized alphabet (identity embedding).
    """
    alphabet = phi.max_value() + 1
    if alphabet > _NEG_MATERIALIZE_CAP:
        raise ValueError(
            f"embedded alphabet {alphabet} too large to materialize the "
            "complement side; use describe_path_generators"
        )
    pos_pairs = set(_chain_pairs(tree, phi))
    neg = [
        (a, b)
        for a, b in itertools.combinations(range(alphabet), 2)
        if (a, b) not in pos_pairs
    ]
    return ClopenCode(OpenCode(pos_pairs), OpenCode(neg))


def describe_universe(phi: EmbeddingMap, horizon: int) -> Universe:
    return Universe(M=phi.max_value() + 1, L=horizon)


def decode_path(h: tuple[int, ...], phi: EmbeddingMap) -> tuple[int, ...]:
    """Decode a landing solution to the union of its coded chain.

    Raises NotAChain when consecutive decoded strings are not proper
    prefix-extensions (the solution did not land).
    """
    decoded = [phi.decode_value(v) for v in h]
    for a, b in zip(decoded, decoded[1:]):
        if not (len(a) < len(b) and b[: len(a)] == a):
            raise NotAChain(f"{a!r} is not a proper prefix of {b!r}")
    return decoded[-1] if decoded else ()


# ---------------------------------------------------------------------------
# clopen doubling


def clopen_double_code(d: ClopenCode, universe: Universe) -> ClopenCode:
    """Clopen set of strings starting with two same-side generator blocks.

    Positive generators are the increasing concatenations s + t with s, t
    both from the positive side or both from the negative side
    (non-increasing concatenations denote empty cones and are dropped); the
    complement is every increasing string of twice the original depth
    without a positive prefix.
    """
    pos_gens: list[tuple[int, ...]] = []
    for side in (d.pos, d.neg):
        for s in side.generators:
            for t in side.generators:
                if s and t and s[-1] >= t[0]:
                    continue
                pos_gens.append(s + t)
    e_pos = OpenCode(pos_gens)
    double_depth = 2 * d.depth
    neg_gens = [
        s
        for s in all_increasing_strings(universe.M, double_depth)
        if not member_prefix(s, e_pos)
    ]
    return ClopenCode(e_pos, OpenCode(neg_gens))
