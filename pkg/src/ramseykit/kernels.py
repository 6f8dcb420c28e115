"""Hot enumeration kernels over increasing strings, numba + numpy backends.

Everything here works on the packed form of an open code:

* landing tests hash generator prefixes (a prefix of an increasing string is
  an initial segment, so a polynomial hash with base = alphabet size is
  exact) and binary-search them per generator length;
* avoiding tests use entry-set bitmasks (a generator is a subsequence of h
  iff its entry set is a subset of h's), in 64-bit words.

The scans enumerate C(M, L) strings in lexicographic order, which pins the
deterministic "least witness" tie-break identically for both backends.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .backend import backend
from .core import OpenCode

LANDS, AVOIDS, NEITHER = 1, 2, 0

_MAX_ENUM = 30_000_000  # hard cap on C(M, L) scans; far above every bundled scale

_combo_cache: dict[tuple[int, int], np.ndarray] = {}
_selector_cache: dict[tuple[int, int], np.ndarray] = {}


def combos(M: int, L: int) -> np.ndarray:
    """All increasing strings of length L over {0..M-1}, lex order, cached."""
    key = (M, L)
    if key not in _combo_cache:
        n = comb(M, L)
        if n > _MAX_ENUM:
            raise ValueError(f"refusing to enumerate C({M},{L}) = {n} strings")
        flat = np.fromiter(
            itertools.chain.from_iterable(itertools.combinations(range(M), L)),
            dtype=np.int64,
            count=n * L,
        )
        _combo_cache[key] = flat.reshape(n, L)
    return _combo_cache[key]


def selectors(L: int, d: int) -> np.ndarray:
    """Index matrix of all length-d subsequences of a length-L string."""
    key = (L, d)
    if key not in _selector_cache:
        _selector_cache[key] = np.array(
            list(itertools.combinations(range(L), d)), dtype=np.int64
        ).reshape(comb(L, d), max(d, 0))
    return _selector_cache[key]


@dataclass(frozen=True)
class CodePack:
    """Array form of an open code bound to an alphabet."""

    alphabet: int
    depth: int
    has_empty: bool
    n_gens: int
    group_len: np.ndarray  # distinct nonzero generator lengths, ascending
    group_off: np.ndarray  # offsets into group_hash, len(group_len)+1
    group_hash: np.ndarray  # prefix hashes, sorted within each group
    gen_mask: np.ndarray  # (n_gens, words) uint64 entry-set masks
    words: int


def prepare_code(code: OpenCode, alphabet: int) -> CodePack:
    gens = code.generators
    if code.max_entry() >= alphabet:
        raise ValueError(
            f"generator entry {code.max_entry()} outside alphabet of size {alphabet}"
        )
    depth = code.depth
    if alphabet > 1 and depth * np.log2(alphabet) > 62:
        raise OverflowError("prefix hashes would overflow int64 at this scale")
    has_empty = any(len(g) == 0 for g in gens)
    by_len: dict[int, list[int]] = {}
    for g in gens:
        if not g:
            continue
        h = 0
        for e in g:
            h = h * alphabet + e
        by_len.setdefault(len(g), []).append(h)
    lens = sorted(by_len)
    group_len = np.array(lens, dtype=np.int64)
    group_off = np.zeros(len(lens) + 1, dtype=np.int64)
    chunks = []
    for i, l in enumerate(lens):
        hs = np.array(sorted(by_len[l]), dtype=np.int64)
        chunks.append(hs)
        group_off[i + 1] = group_off[i] + len(hs)
    group_hash = np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.int64)
    words = max(1, (alphabet + 63) // 64)
    gen_mask = np.zeros((len(gens), words), dtype=np.uint64)
    for i, g in enumerate(gens):
        for e in g:
            gen_mask[i, e >> 6] |= np.uint64(1) << np.uint64(e & 63)
    return CodePack(
        alphabet=alphabet,
        depth=depth,
        has_empty=has_empty,
        n_gens=len(gens),
        group_len=group_len,
        group_off=group_off,
        group_hash=group_hash,
        gen_mask=gen_mask,
        words=words,
    )


# ---------------------------------------------------------------------------
# numpy backend


def _np_row_masks(rows: np.ndarray, words: int) -> np.ndarray:
    n, L = rows.shape
    masks = np.zeros((n, words), dtype=np.uint64)
    r = np.arange(n)
    for j in range(L):
        col = rows[:, j]
        masks[r, col >> 6] |= np.uint64(1) << (col & 63).astype(np.uint64)
    return masks


def _np_lands(rows: np.ndarray, pack: CodePack, d: int) -> np.ndarray:
    n, L = rows.shape
    out = np.ones(n, dtype=bool)
    if pack.has_empty:
        return out
    base = pack.alphabet
    for s in selectors(L, d):
        sub = rows[:, s]
        ok = np.zeros(n, dtype=bool)
        for gi in range(len(pack.group_len)):
            l = int(pack.group_len[gi])
            hv = np.zeros(n, dtype=np.int64)
            for t in range(l):
                hv = hv * base + sub[:, t]
            grp = pack.group_hash[pack.group_off[gi] : pack.group_off[gi + 1]]
            pos = np.minimum(np.searchsorted(grp, hv), len(grp) - 1)
            ok |= grp[pos] == hv
        out &= ok
        if not out.any():
            break
    return out


def _np_avoids(rows: np.ndarray, pack: CodePack) -> np.ndarray:
    n = rows.shape[0]
    masks = _np_row_masks(rows, pack.words)
    has_sub = np.zeros(n, dtype=bool)
    for i in range(pack.n_gens):
        gm = pack.gen_mask[i]
        has_sub |= ((gm & ~masks) == 0).all(axis=1)
        if has_sub.all():
            break
    return ~has_sub


def _np_scan_first(M: int, L: int, pack: CodePack, want_land: bool) -> tuple | None:
    rows = combos(M, L)
    chunk = 8192
    for start in range(0, rows.shape[0], chunk):
        block = rows[start : start + chunk]
        hits = _np_lands(block, pack, pack.depth) if want_land else _np_avoids(block, pack)
        if hits.any():
            row = block[int(np.argmax(hits))]
            return tuple(int(x) for x in row)
    return None


# ---------------------------------------------------------------------------
# public dispatchers


def _check(M: int, L: int, pack: CodePack) -> None:
    if pack.depth > L:
        raise ValueError(f"code depth {pack.depth} exceeds horizon {L}")
    if pack.alphabet != M:
        raise ValueError("code pack prepared for a different alphabet")


def _nb():
    from . import _kernels_numba

    return _kernels_numba


def least_landing(M: int, L: int, pack: CodePack) -> tuple[int, ...] | None:
    """Lexicographically least full-length landing string, or None."""
    _check(M, L, pack)
    if pack.n_gens == 0:
        return None
    if pack.has_empty:
        return tuple(range(L))
    if backend() == "numba":
        out = np.empty(L, dtype=np.int64)
        found = _nb().scan_first(
            M, L, selectors(L, pack.depth), pack.group_len, pack.group_off,
            pack.group_hash, pack.alphabet, pack.has_empty, pack.gen_mask,
            pack.words, True, out,
        )
        return tuple(int(x) for x in out) if found else None
    return _np_scan_first(M, L, pack, want_land=True)


def least_avoiding(M: int, L: int, pack: CodePack) -> tuple[int, ...] | None:
    """Lexicographically least full-length avoiding string, or None."""
    _check(M, L, pack)
    if pack.n_gens == 0:
        return tuple(range(L))
    if pack.has_empty:
        return None
    if backend() == "numba":
        out = np.empty(L, dtype=np.int64)
        found = _nb().scan_first(
            M, L, selectors(L, pack.depth), pack.group_len, pack.group_off,
            pack.group_hash, pack.alphabet, pack.has_empty, pack.gen_mask,
            pack.words, False, out,
        )
        return tuple(int(x) for x in out) if found else None
    return _np_scan_first(M, L, pack, want_land=False)


def classify_all(M: int, L: int, pack: CodePack) -> np.ndarray:
    """int8 classification (1 lands, 2 avoids, 0 neither) aligned with
    ``combos(M, L)`` row order."""
    _check(M, L, pack)
    rows = combos(M, L)
    if pack.n_gens == 0:
        return np.full(rows.shape[0], AVOIDS, dtype=np.int8)
    if backend() == "numba":
        out = np.empty(rows.shape[0], dtype=np.int8)
        _nb().classify_all(
            rows, selectors(L, pack.depth), pack.group_len, pack.group_off,
            pack.group_hash, pack.alphabet, pack.has_empty, pack.gen_mask,
            pack.words, out,
        )
        return out
    out = np.zeros(rows.shape[0], dtype=np.int8)
    av = _np_avoids(rows, pack)
    out[av] = AVOIDS
    la = _np_lands(rows, pack, pack.depth)
    out[la] = LANDS
    return out
