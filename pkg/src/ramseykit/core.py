"""Strings, codes, universes and exact finite-horizon membership semantics.

The basic currency is the strictly increasing finite string of naturals,
stored as a plain tuple of ints. An increasing string is determined by its
set of entries, which keeps subsequence tests cheap (set inclusion) and lets
the hot kernels work on bitmasks and hashes.

A finite universe ``(M, L)`` fixes the alphabet ``{0..M-1}`` and the horizon
length ``L``; every semantic notion here (landing, avoiding, clopen
validity) is defined relative to such a bound and is exhaustively checkable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

__all__ = [
    "Classification",
    "ClopenCode",
    "HSReport",
    "HorizonTooSmall",
    "IncreasingString",
    "OpenCode",
    "Universe",
    "all_increasing_strings",
    "classify",
    "complement_clopen",
    "dominates",
    "full_strings",
    "is_increasing",
    "is_subsequence",
    "member_prefix",
    "string",
    "subsequences",
    "union_codes",
    "validate_clopen",
]

IncreasingString = tuple
# type alias in spirit: a strictly increasing tuple[int, ...]


class HorizonTooSmall(ValueError):
    """A code is deeper than the universe horizon it is evaluated at."""


class Classification(str, Enum):
    LANDS = "lands"
    AVOIDS = "avoids"
    NEITHER = "neither"

    def __repr__(self) -> str:  # keep test output short
        return self.value


def is_increasing(entries: Iterable[int]) -> bool:
    t = tuple(entries)
    return all(t[i] < t[i + 1] for i in range(len(t) - 1))


def string(entries: Iterable[int]) -> tuple[int, ...]:
    """Validate and return a strictly increasing string (tuple of ints)."""
    t = tuple(int(e) for e in entries)
    if any(e < 0 for e in t):
        raise ValueError(f"negative entry in {t!r}")
    if not is_increasing(t):
        raise ValueError(f"not strictly increasing: {t!r}")
    return t


@dataclass(frozen=True)
class Universe:
    """Alphabet bound M (exclusive) and horizon length L, with 1 <= L <= M."""

    M: int
    L: int

    def __post_init__(self) -> None:
        if not (1 <= self.L <= self.M):
            raise ValueError(f"need 1 <= L <= M, got M={self.M}, L={self.L}")

    def check_string(self, s: tuple[int, ...]) -> None:
        if s and s[-1] >= self.M:
            raise ValueError(f"entry {s[-1]} out of alphabet range 0..{self.M - 1}")


def _normalize_generators(gens: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    # sort length-lexicographically, drop duplicates and strings extending a
    # shorter generator (the cone is unchanged; the stored set is the unique
    # minimal antichain)
    validated = sorted({string(g) for g in gens}, key=lambda s: (len(s), s))
    kept: list[tuple[int, ...]] = []
    for g in validated:
        if not any(g[: len(h)] == h for h in kept):
            kept.append(g)
    return tuple(kept)


@dataclass(frozen=True)
class OpenCode:
    """A finite prefix-free generator set naming an open set of cones.

    Stored canonically: generators sorted length-lexicographically, reduced
    to the minimal antichain under the prefix order.
    """

    generators: tuple[tuple[int, ...], ...]

    def __init__(self, generators: Iterable[Iterable[int]] = ()) -> None:
        object.__setattr__(self, "generators", _normalize_generators(generators))

    @property
    def depth(self) -> int:
        return max((len(g) for g in self.generators), default=0)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def max_entry(self) -> int:
        return max((g[-1] for g in self.generators if g), default=-1)

    def check_universe(self, universe: Universe) -> None:
        if self.max_entry() >= universe.M:
            raise ValueError(
                f"generator entry {self.max_entry()} outside alphabet 0..{universe.M - 1}"
            )


@dataclass(frozen=True)
class ClopenCode:
    """A pair of open codes naming a set and its complement."""

    pos: OpenCode
    neg: OpenCode

    @property
    def depth(self) -> int:
        return max(self.pos.depth, self.neg.depth)


@dataclass(frozen=True)
class HSReport:
    """A full-length homogeneous solution together with its side."""

    solution: tuple[int, ...]
    side: Classification

    def to_json(self) -> dict:
        return {"solution": list(self.solution), "side": self.side.value}


def all_increasing_strings(M: int, length: int) -> Iterator[tuple[int, ...]]:
    """All strictly increasing strings of the given length over {0..M-1}."""
    return itertools.combinations(range(M), length)


def full_strings(universe: Universe) -> Iterator[tuple[int, ...]]:
    return all_increasing_strings(universe.M, universe.L)


def is_subsequence(f: tuple[int, ...], g: tuple[int, ...]) -> bool:
    """True iff f = g∘h for some strictly increasing index selection h.

    For strictly increasing strings this is exactly entry-set inclusion.
    """
    return set(f) <= set(g)


def subsequences(h: tuple[int, ...], length: int | None = None) -> Iterator[tuple[int, ...]]:
    """All subsequences of h (of one length, or every length if None)."""
    if length is not None:
        return itertools.combinations(h, length)
    return itertools.chain.from_iterable(
        itertools.combinations(h, k) for k in range(len(h) + 1)
    )


def dominates(s: tuple[int, ...], t: tuple[int, ...]) -> bool:
    """True iff |s| = |t| and s is pointwise <= t."""
    return len(s) == len(t) and all(a <= b for a, b in zip(s, t))


def member_prefix(s: tuple[int, ...], code: OpenCode) -> bool:
    """True iff some generator of the code is a prefix of s."""
    return any(s[: len(g)] == g for g in code.generators)


def classify(
    h: tuple[int, ...], code: OpenCode | ClopenCode, universe: Universe
) -> Classification:
    """Classify a full-length string as landing, avoiding or neither.

    Lands: every subsequence of h of length depth(code) extends a generator
    (such a subsequence decides membership of all its extensions within the
    alphabet). Avoids: no generator is a subsequence of h. A clopen code is
    classified through its positive side; avoiding it is landing in the
    complement once the pair is valid.
    """
    open_code = code.pos if isinstance(code, ClopenCode) else code
    if len(h) != universe.L:
        raise ValueError(f"solution length {len(h)} != horizon {universe.L}")
    universe.check_string(h)
    d = open_code.depth
    if d > universe.L:
        raise HorizonTooSmall(f"code depth {d} exceeds horizon {universe.L}")
    if not any(is_subsequence(g, h) for g in open_code.generators):
        return Classification.AVOIDS
    if all(member_prefix(g, open_code) for g in subsequences(h, d)):
        return Classification.LANDS
    return Classification.NEITHER


def union_codes(p: OpenCode, q: OpenCode) -> OpenCode:
    """Union of the named open sets; the generator sets are merged and
    re-normalized to an antichain."""
    return OpenCode(p.generators + q.generators)


def complement_clopen(d: ClopenCode) -> ClopenCode:
    return ClopenCode(pos=d.neg, neg=d.pos)


def validate_clopen(d: ClopenCode, universe: Universe) -> bool:
    """Check the partition semantics: every increasing string of length
    max(depth(pos), depth(neg)) over the alphabet has a prefix in exactly
    one side."""
    depth = d.depth
    for s in all_increasing_strings(universe.M, depth):
        if member_prefix(s, d.pos) == member_prefix(s, d.neg):
            return False
    return True
