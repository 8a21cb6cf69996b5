"""Deterministic 64-bit mix-based random number generation.

All randomness in this package flows through the SplitMix64 finalizer
below, used in counter mode: the k-th output word of a stream with state
``s`` is ``mix64(s + GOLDEN * (k + 1))`` (all arithmetic mod 2**64).
Because every word is a pure function of (state, counter), streams are
bit-reproducible across platforms and independent of evaluation order.

Stream seeding: ``stream_seed(master, stream) = mix64(master ^ GOLDEN * stream)``.

Scalar (Python int) and vectorized (numpy uint64) versions are kept in
exact agreement; the compiled kernels implement the same formulas in C.
"""

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX_A = 0xBF58476D1CE4E5B9
MIX_B = 0x94D049BB133111EB
# distinct odd multiplier for per-cell keying inside a half-step
CELL_KEY = 0xC2B2AE3D27D4EB4F

_U = np.uint64
_INV53 = 2.0 ** -53


def mix64(x: int) -> int:
    """SplitMix64 finalizer on a 64-bit integer (scalar)."""
    x &= MASK64
    x ^= x >> 30
    x = (x * MIX_A) & MASK64
    x ^= x >> 27
    x = (x * MIX_B) & MASK64
    x ^= x >> 31
    return x


def mix64_np(x: np.ndarray) -> np.ndarray:
    """SplitMix64 finalizer, vectorized over a uint64 array."""
    x = np.array(x, dtype=np.uint64, copy=True)
    x ^= x >> _U(30)
    x *= _U(MIX_A)
    x ^= x >> _U(27)
    x *= _U(MIX_B)
    x ^= x >> _U(31)
    return x


def stream_seed(master: int, stream: int) -> int:
    """State of sub-stream ``stream`` of a master seed."""
    return mix64((master & MASK64) ^ ((GOLDEN * (stream & MASK64)) & MASK64))


def words(state: int, count: int) -> np.ndarray:
    """First ``count`` output words of the stream with the given state."""
    k = np.arange(1, count + 1, dtype=np.uint64)
    return mix64_np(_U(state & MASK64) + _U(GOLDEN) * k)


def word(state: int, k: int) -> int:
    """Single output word ``k`` (0-based) of a stream; scalar."""
    return mix64(state + GOLDEN * (k + 1))


def bits(state: int, n: int) -> np.ndarray:
    """n uniform bits as a uint8 array, LSB-first within each 64-bit word."""
    if n == 0:
        return np.zeros(0, dtype=np.uint8)
    nw = (n + 63) // 64
    w = words(state, nw)
    b = np.unpackbits(w.view(np.uint8), bitorder="little")
    return b[:n].astype(np.uint8, copy=True)


def halfstep_key(seed: int, halfstep: int) -> int:
    """Key for the coin stream of one half-step."""
    return mix64((seed & MASK64) ^ ((GOLDEN * ((halfstep + 1) & MASK64)) & MASK64))


def pair_uniform(key: int, index: int) -> float:
    """Uniform in [0,1) for one cell; ``index`` may be negative (wire index)."""
    z = mix64(key ^ ((CELL_KEY * ((index + 1) & MASK64)) & MASK64))
    return (z >> 11) * _INV53


def pair_uniforms(key: int, indices: np.ndarray) -> np.ndarray:
    """Vectorized pair_uniform over an int64 index array."""
    idx = indices.astype(np.uint64) + _U(1)
    z = mix64_np(_U(key) ^ (_U(CELL_KEY) * idx))
    return (z >> _U(11)).astype(np.float64) * _INV53
