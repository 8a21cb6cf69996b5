# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: LCS dynamic programming, word-parallel LCS,
anti-diagonal network evolution and batched Monte Carlo trials.

Bit-for-bit equivalent to cslcs._pure; the backend module picks whichever
is importable.
"""

import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t, uint64_t

cnp.import_array()

COMPILED = True

cdef extern from *:
    """
    static inline unsigned long long cslcs_mix64(unsigned long long x) {
        x ^= x >> 30; x *= 0xBF58476D1CE4E5B9ULL;
        x ^= x >> 27; x *= 0x94D049BB133111EBULL;
        x ^= x >> 31; return x;
    }
    static inline int cslcs_popcount64(unsigned long long x) {
        return __builtin_popcountll(x);
    }
    """
    uint64_t cslcs_mix64(uint64_t x) nogil
    int cslcs_popcount64(uint64_t x) nogil

cdef uint64_t GOLDEN = <uint64_t> 0x9E3779B97F4A7C15
cdef uint64_t CELL_KEY = <uint64_t> 0xC2B2AE3D27D4EB4F
cdef double INV53 = 1.0 / 9007199254740992.0


def lcs_dp_u8(const uint8_t[::1] a, const uint8_t[::1] b):
    """Exact LCS length by the classical row-recurrence DP."""
    cdef Py_ssize_t m = a.shape[0], n = b.shape[0], i, j
    cdef cnp.ndarray[cnp.int32_t, ndim=1] row_arr = np.zeros(n + 1, dtype=np.int32)
    cdef int[::1] row = row_arr
    cdef int diag, tmp, up, cur
    for i in range(m):
        diag = 0
        for j in range(n):
            up = row[j + 1]
            if a[i] == b[j]:
                cur = diag + 1
            else:
                cur = up if up > row[j] else row[j]
            diag = up
            row[j + 1] = cur
    return int(row[n])


cdef int64_t _lcs_bp_core(const uint8_t[::1] a, uint64_t* m1, uint64_t* m0,
                          uint64_t* v, Py_ssize_t nw, Py_ssize_t n) nogil:
    """Word-parallel LCS over precomputed match masks; returns LCS length.

    State vector v holds holes (1-bits); per character of a the update is
    v' = ((v + (v & M)) | (v & ~M)) truncated to n bits, with the addition
    carried across words.
    """
    cdef Py_ssize_t i, w
    cdef uint64_t last_mask, vm, t, s, carry, c1, c2
    cdef uint64_t* mw
    cdef int64_t ones = 0
    if n == 0 or a.shape[0] == 0:
        return 0
    last_mask = <uint64_t> 0xFFFFFFFFFFFFFFFF
    if n % 64 != 0:
        last_mask = (<uint64_t> 1 << (n % 64)) - 1
    for w in range(nw):
        v[w] = <uint64_t> 0xFFFFFFFFFFFFFFFF
    v[nw - 1] = last_mask
    for i in range(a.shape[0]):
        mw = m1 if a[i] else m0
        carry = 0
        for w in range(nw):
            vm = v[w] & mw[w]
            t = v[w] + vm
            c1 = t < v[w]
            s = t + carry
            c2 = s < t
            v[w] = s | (v[w] & ~mw[w])
            carry = c1 | c2
        v[nw - 1] &= last_mask
    for w in range(nw):
        ones += cslcs_popcount64(v[w])
    return n - ones


def lcs_bp(const uint8_t[::1] a, const uint64_t[::1] b_words, Py_ssize_t n):
    """LCS length; b is packed LSB-first into 64-bit words, n = len(b)."""
    cdef Py_ssize_t nw = b_words.shape[0], w
    cdef uint64_t last_mask
    if n == 0 or a.shape[0] == 0:
        return 0
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] m1a = np.empty(nw, dtype=np.uint64)
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] m0a = np.empty(nw, dtype=np.uint64)
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] va = np.empty(nw, dtype=np.uint64)
    cdef uint64_t[::1] m1 = m1a, m0 = m0a, v = va
    last_mask = <uint64_t> 0xFFFFFFFFFFFFFFFF
    if n % 64 != 0:
        last_mask = (<uint64_t> 1 << (n % 64)) - 1
    for w in range(nw):
        m1[w] = b_words[w]
        m0[w] = ~b_words[w]
    m0[nw - 1] &= last_mask
    return int(_lcs_bp_core(a, &m1[0], &m0[0], &v[0], nw, n))


def evolve_cells(uint8_t[::1] values, int64_t origin,
                 const uint8_t[::1] a, const uint8_t[::1] b,
                 int64_t d0, int64_t d1):
    """In-place network evolution over half-steps [d0, d1).

    Half-step d applies the cells of anti-diagonal i+j = d; a mismatch cell
    sorts the adjacent wire pair (j-i-1, j-i): (particle, hole) -> (hole,
    particle). Match cells pass values through.
    """
    cdef Py_ssize_t width = values.shape[0]
    cdef int64_t m = a.shape[0], n = b.shape[0]
    cdef int64_t d, i, j, lo, i_min, i_max
    for d in range(d0, d1):
        i_min = d - n + 1
        if i_min < 0:
            i_min = 0
        i_max = d if d < m - 1 else m - 1
        for i in range(i_min, i_max + 1):
            j = d - i
            if a[i] != b[j]:
                lo = (j - i - 1) - origin
                if 0 <= lo and lo + 1 < width:
                    if values[lo] == 1 and values[lo + 1] == 0:
                        values[lo] = 0
                        values[lo + 1] = 1


def evolve_b_cells(uint8_t[::1] values, int64_t origin,
                   int64_t d0, int64_t d1, double p2, uint64_t seed):
    """In-place Bernoulli-model evolution on the line over half-steps [d0, d1).

    Each cell of half-step d is a mismatch independently with probability p2;
    its coin is keyed by (seed, d, lower wire index) and consulted only when
    the entry pair is (particle, hole).
    """
    cdef Py_ssize_t width = values.shape[0]
    cdef int64_t d, lo, lo_min, lo_max, idx
    cdef uint64_t key, z
    for d in range(d0, d1):
        key = cslcs_mix64(seed ^ (GOLDEN * <uint64_t> (d + 1)))
        # cells exist for i, j >= 0: lo = d - 2i - 1 ranges over [-d-1, d-1]
        lo_min = -d - 1
        if lo_min < origin:
            lo_min = origin
        lo_max = d - 1
        if lo_max > origin + <int64_t> width - 2:
            lo_max = origin + <int64_t> width - 2
        # lo must have the parity of d - 1
        if ((lo_min - (d - 1)) & 1) != 0:
            lo_min += 1
        for lo in range(lo_min, lo_max + 1, 2):
            idx = lo - origin
            if values[idx] == 1 and values[idx + 1] == 0:
                z = cslcs_mix64(key ^ (CELL_KEY * (<uint64_t> lo + 1)))
                if (z >> 11) * INV53 < p2:
                    values[idx] = 0
                    values[idx + 1] = 1


def gamma_trials(Py_ssize_t n, Py_ssize_t trials, uint64_t master,
                 Py_ssize_t first_trial=0):
    """LCS lengths of `trials` independent uniform string pairs of length n.

    Trial t draws string a from stream 2t and b from stream 2t+1 of the
    master seed; identical to random_string + lcs_bitparallel.
    """
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.empty(trials, dtype=np.int64)
    cdef Py_ssize_t nw = (n + 63) // 64 if n > 0 else 1
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] a8a = np.empty(n, dtype=np.uint8)
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] m1a = np.empty(nw, dtype=np.uint64)
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] m0a = np.empty(nw, dtype=np.uint64)
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] va = np.empty(nw, dtype=np.uint64)
    cdef uint8_t[::1] a8 = a8a
    cdef uint64_t[::1] m1 = m1a, m0 = m0a, v = va
    cdef Py_ssize_t t, k, j
    cdef uint64_t sa, sb, w, stream, last_mask
    if n == 0:
        out[:] = 0
        return out
    last_mask = <uint64_t> 0xFFFFFFFFFFFFFFFF
    if n % 64 != 0:
        last_mask = (<uint64_t> 1 << (n % 64)) - 1
    for t in range(trials):
        stream = <uint64_t> (2 * (first_trial + t))
        sa = cslcs_mix64(master ^ (GOLDEN * stream))
        sb = cslcs_mix64(master ^ (GOLDEN * (stream + 1)))
        for k in range(nw):
            w = cslcs_mix64(sa + GOLDEN * <uint64_t> (k + 1))
            for j in range(64):
                if 64 * k + j >= n:
                    break
                a8[64 * k + j] = <uint8_t> ((w >> j) & 1)
        for k in range(nw):
            m1[k] = cslcs_mix64(sb + GOLDEN * <uint64_t> (k + 1))
        m1[nw - 1] &= last_mask
        for k in range(nw):
            m0[k] = ~m1[k]
        m0[nw - 1] &= last_mask
        out[t] = _lcs_bp_core(a8, &m1[0], &m0[0], &v[0], nw, n)
    return out


def lcs_sum_exhaustive(int n):
    """Sum of LCS lengths over all 4**n ordered string pairs of length n.

    Uses the complement symmetry LCS(a, b) = LCS(~a, ~b) to halve the
    enumeration. Guarded by the caller (n <= 12).
    """
    cdef uint64_t a, b, limit_a, limit_b
    cdef int i, j
    cdef int row[13]
    cdef int diag, up, cur
    cdef int64_t total = 0
    cdef uint8_t abits[12]
    if n == 0:
        return 0
    limit_a = <uint64_t> 1 << (n - 1)   # fix the top bit of a to 0
    limit_b = <uint64_t> 1 << n
    for a in range(limit_a):
        for i in range(n):
            abits[i] = <uint8_t> ((a >> i) & 1)
        for b in range(limit_b):
            for j in range(n + 1):
                row[j] = 0
            for i in range(n):
                diag = 0
                for j in range(n):
                    up = row[j + 1]
                    if abits[i] == ((b >> j) & 1):
                        cur = diag + 1
                    else:
                        cur = up if up > row[j] else row[j]
                    diag = up
                    row[j + 1] = cur
            total += row[n]
    return 2 * int(total)
