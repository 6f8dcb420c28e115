"""numba implementations of the enumeration kernels (imported lazily)."""

from __future__ import annotations

import numba
import numpy as np


@numba.njit(cache=True)
def lands_one(idx, sel, group_len, group_off, group_hash, base, has_empty):
    if has_empty:
        return True
    for si in range(sel.shape[0]):
        ok = False
        for gi in range(group_len.shape[0]):
            l = group_len[gi]
            hv = 0
            for t in range(l):
                hv = hv * base + idx[sel[si, t]]
            lo = group_off[gi]
            hi = group_off[gi + 1]
            while lo < hi:
                mid = (lo + hi) // 2
                if group_hash[mid] < hv:
                    lo = mid + 1
                else:
                    hi = mid
            if lo < group_off[gi + 1] and group_hash[lo] == hv:
                ok = True
                break
        if not ok:
            return False
    return True


@numba.njit(cache=True)
def avoids_one(idx, gen_mask, words, scratch):
    for w in range(words):
        scratch[w] = np.uint64(0)
    for i in range(idx.shape[0]):
        e = idx[i]
        scratch[e >> 6] |= np.uint64(1) << np.uint64(e & 63)
    for g in range(gen_mask.shape[0]):
        sub = True
        for w in range(words):
            if (gen_mask[g, w] & ~scratch[w]) != np.uint64(0):
                sub = False
                break
        if sub:
            return False
    return True


@numba.njit(cache=True)
def scan_first(
    M, L, sel, group_len, group_off, group_hash, base, has_empty,
    gen_mask, words, want_land, out,
):
    idx = np.empty(L, dtype=np.int64)
    for i in range(L):
        idx[i] = i
    scratch = np.empty(words, dtype=np.uint64)
    while True:
        if want_land:
            hit = lands_one(idx, sel, group_len, group_off, group_hash, base, has_empty)
        else:
            hit = avoids_one(idx, gen_mask, words, scratch)
        if hit:
            for i in range(L):
                out[i] = idx[i]
            return True
        j = L - 1
        while j >= 0 and idx[j] == M - L + j:
            j -= 1
        if j < 0:
            return False
        idx[j] += 1
        for k in range(j + 1, L):
            idx[k] = idx[k - 1] + 1


@numba.njit(cache=True)
def classify_all(
    rows, sel, group_len, group_off, group_hash, base, has_empty,
    gen_mask, words, out,
):
    scratch = np.empty(words, dtype=np.uint64)
    for r in range(rows.shape[0]):
        idx = rows[r]
        if avoids_one(idx, gen_mask, words, scratch):
            out[r] = 2
        elif lands_one(idx, sel, group_len, group_off, group_hash, base, has_empty):
            out[r] = 1
        else:
            out[r] = 0
