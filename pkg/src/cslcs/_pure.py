"""Pure-Python fallback for the compiled kernels.

Same contracts and bit-identical results as cslcs._kernels; used when the
extension is not built (or when CSLCS_PURE=1). The word-parallel LCS here
runs on Python big integers, i.e. a single machine-independent word of
width n.
"""

from __future__ import annotations

import numpy as np

from ._rng import CELL_KEY, GOLDEN, MASK64, mix64

COMPILED = False

_INV53 = 2.0 ** -53


def lcs_dp_u8(a, b) -> int:
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    n = b.size
    row = [0] * (n + 1)
    bl = b.tolist()
    for ai in a.tolist():
        diag = 0
        for j in range(n):
            up = row[j + 1]
            if ai == bl[j]:
                cur = diag + 1
            else:
                cur = up if up > row[j] else row[j]
            diag = up
            row[j + 1] = cur
    return row[n]


def lcs_bp(a, b_words, n: int) -> int:
    a = np.asarray(a, dtype=np.uint8)
    if n == 0 or a.size == 0:
        return 0
    mask = (1 << n) - 1
    m1 = int.from_bytes(np.ascontiguousarray(b_words, dtype="<u8").tobytes(), "little")
    m1 &= mask
    m0 = ~m1 & mask
    v = mask
    for ai in a.tolist():
        m = m1 if ai else m0
        v = ((v + (v & m)) | (v & ~m)) & mask
    return n - v.bit_count()


def evolve_cells(values, origin, a, b, d0, d1) -> None:
    v = values
    width = len(v)
    a = np.asarray(a, dtype=np.uint8).tolist()
    b = np.asarray(b, dtype=np.uint8).tolist()
    m, n = len(a), len(b)
    for d in range(d0, d1):
        for i in range(max(0, d - n + 1), min(m - 1, d) + 1):
            j = d - i
            if a[i] != b[j]:
                lo = (j - i - 1) - origin
                if 0 <= lo and lo + 1 < width:
                    if v[lo] == 1 and v[lo + 1] == 0:
                        v[lo] = 0
                        v[lo + 1] = 1


def evolve_b_cells(values, origin, d0, d1, p2, seed) -> None:
    v = values
    width = len(v)
    origin = int(origin)
    for d in range(d0, d1):
        key = mix64(seed ^ ((GOLDEN * (d + 1)) & MASK64))
        lo_min = max(-d - 1, origin)
        lo_max = min(d - 1, origin + width - 2)
        if (lo_min - (d - 1)) & 1:
            lo_min += 1
        for lo in range(lo_min, lo_max + 1, 2):
            idx = lo - origin
            if v[idx] == 1 and v[idx + 1] == 0:
                z = mix64(key ^ ((CELL_KEY * ((lo + 1) & MASK64)) & MASK64))
                if (z >> 11) * _INV53 < p2:
                    v[idx] = 0
                    v[idx + 1] = 1


def gamma_trials(n, trials, master, first_trial=0) -> np.ndarray:
    out = np.empty(trials, dtype=np.int64)
    if n == 0:
        out[:] = 0
        return out
    nw = (n + 63) // 64
    mask = (1 << n) - 1
    for t in range(trials):
        stream = 2 * (first_trial + t)
        sa = mix64(master ^ ((GOLDEN * stream) & MASK64))
        sb = mix64(master ^ ((GOLDEN * (stream + 1)) & MASK64))
        aw = [mix64((sa + GOLDEN * (k + 1)) & MASK64) for k in range(nw)]
        bw = [mix64((sb + GOLDEN * (k + 1)) & MASK64) for k in range(nw)]
        m1 = 0
        for k in reversed(range(nw)):
            m1 = (m1 << 64) | bw[k]
        m1 &= mask
        m0 = ~m1 & mask
        v = mask
        for i in range(n):
            ai = (aw[i // 64] >> (i % 64)) & 1
            m = m1 if ai else m0
            v = ((v + (v & m)) | (v & ~m)) & mask
        out[t] = n - v.bit_count()
    return out


def lcs_sum_exhaustive(n: int) -> int:
    if n == 0:
        return 0
    total = 0
    for a in range(1 << (n - 1)):
        abits = [(a >> i) & 1 for i in range(n)]
        for b in range(1 << n):
            bbits = [(b >> j) & 1 for j in range(n)]
            total += lcs_dp_u8(abits, bbits)
    return 2 * total
