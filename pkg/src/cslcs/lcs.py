"""Exact LCS computation: reference DP, word-parallel engine, and a
brute-force oracle.

All three engines return the same length; the DP is the reference, the
word-parallel engine simulates the underlying comparison network one
machine word of columns at a time, and the brute-force oracle enumerates
subsequences of the shorter string (guarded, for cross-checking only).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import backend
from .errors import InputError, SizeLimitError
from .strings import BinaryString, coerce

BRUTEFORCE_LIMIT = 20


@dataclass(frozen=True)
class LcsResult:
    length: int
    engine: str


def lcs_dp(a, b) -> LcsResult:
    """LCS length by dynamic programming; O(m*n) time, O(min(m,n)) memory."""
    a, b = coerce(a), coerce(b)
    if len(b) > len(a):
        a, b = b, a
    return LcsResult(int(backend.lcs_dp_u8(a.bits, b.bits)), "dp")


def lcs_bitparallel(a, b) -> LcsResult:
    """LCS length by the word-parallel network simulation; O(m*n/w) words."""
    a, b = coerce(a), coerce(b)
    return LcsResult(int(backend.lcs_bp(a.bits, b.words, len(b))), "bitparallel")


def _is_subsequence(sub, seq) -> bool:
    it = iter(seq)
    return all(c in it for c in sub)


def lcs_bruteforce(a, b) -> LcsResult:
    """LCS length by subsequence enumeration; requires min(m, n) <= 20."""
    a, b = coerce(a), coerce(b)
    short, long_ = (a, b) if len(a) <= len(b) else (b, a)
    k = len(short)
    if k > BRUTEFORCE_LIMIT:
        raise SizeLimitError(
            f"brute force limited to min side {BRUTEFORCE_LIMIT}, got {k}"
        )
    sbits = list(short.bits)
    lbits = list(long_.bits)
    for length in range(k, 0, -1):
        for idxs in combinations(range(k), length):
            if _is_subsequence([sbits[i] for i in idxs], lbits):
                return LcsResult(length, "bruteforce")
    return LcsResult(0, "bruteforce")


ENGINES = {
    "dp": lcs_dp,
    "bitparallel": lcs_bitparallel,
    "bruteforce": lcs_bruteforce,
}


def lcs(a, b, engine: str = "bitparallel") -> LcsResult:
    try:
        fn = ENGINES[engine]
    except KeyError:
        raise InputError(f"unknown engine {engine!r}") from None
    return fn(a, b)
