"""Binary strings and reproducible random string generation.

Text form uses ASCII '0'/'1' and also accepts 'O'/'I' (case-insensitive),
mapped O -> 0, I -> 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _rng
from .errors import InputError

_CHAR_MAP = {"0": 0, "1": 1, "o": 0, "i": 1, "O": 0, "I": 1}


@dataclass(frozen=True)
class Seed:
    """Master seed plus a per-trial stream index.

    Identical (master, stream) yields an identical character stream on
    every platform.
    """

    master: int
    stream: int = 0

    def state(self) -> int:
        return _rng.stream_seed(self.master, self.stream)


class BinaryString:
    """Immutable sequence of bits over the alphabet {0, 1}."""

    __slots__ = ("_bits", "_words")

    def __init__(self, bits):
        b = np.asarray(bits, dtype=np.uint8)
        if b.ndim != 1:
            raise InputError("bits must be one-dimensional")
        if b.size and (b > 1).any():
            raise InputError("bits must be 0 or 1")
        self._bits = np.ascontiguousarray(b)
        self._bits.setflags(write=False)
        self._words = None

    @classmethod
    def from_text(cls, text: str) -> "BinaryString":
        try:
            return cls([_CHAR_MAP[c] for c in text])
        except KeyError as exc:
            raise InputError(
                f"invalid character {exc.args[0]!r}: expected 0/1 or O/I"
            ) from None

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    @property
    def words(self) -> np.ndarray:
        """Bits packed LSB-first into uint64 words; bits beyond len are zero."""
        if self._words is None:
            n = self._bits.size
            nw = (n + 63) // 64
            padded = np.zeros(nw * 64, dtype=np.uint8)
            padded[:n] = self._bits
            w = np.packbits(padded, bitorder="little").view(np.uint64)
            w.setflags(write=False)
            self._words = w
        return self._words

    def to_text(self) -> str:
        return "".join("01"[b] for b in self._bits)

    def count1(self) -> int:
        return int(self._bits.sum())

    def __len__(self) -> int:
        return self._bits.size

    def __getitem__(self, item):
        if isinstance(item, slice):
            return BinaryString(self._bits[item])
        return int(self._bits[item])

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryString):
            return NotImplemented
        return len(self) == len(other) and bool((self._bits == other._bits).all())

    def __hash__(self) -> int:
        return hash((self._bits.size, self._bits.tobytes()))

    def __repr__(self) -> str:
        t = self.to_text()
        if len(t) > 40:
            t = t[:40] + "..."
        return f"BinaryString({t!r}, len={len(self)})"


def coerce(value) -> BinaryString:
    """Accept a BinaryString, text, or bit sequence."""
    if isinstance(value, BinaryString):
        return value
    if isinstance(value, str):
        return BinaryString.from_text(value)
    return BinaryString(value)


def random_string(n: int, seed: Seed) -> BinaryString:
    """n i.i.d. uniform bits, fully determined by (seed, n)."""
    if n < 0:
        raise InputError("length must be nonnegative")
    return BinaryString(_rng.bits(seed.state(), n))
