"""The LCS grid as a transposition network.

Cells of the grid carry comparators exactly at character mismatches. Wires
run diagonally; those entering the grid through the top boundary are
indexed 0, 1, 2, ... and those entering through the left boundary are
indexed -1, -2, -3, ..., counting from the top-left cell in both cases.
The input is the step initial condition: particles on all negative wires,
holes on all nonnegative wires.

Diagonal evolution proceeds in half-steps: half-step d applies the cells
of anti-diagonal i+j = d, which compare the adjacent wire pairs
(j-i-1, j-i); for even d these pairs are (odd, even), for odd d
(even, odd), in that order. A mismatch cell moves a (particle, hole) pair
to (hole, particle); a match cell passes values through.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import IntEnum

import numpy as np
from scipy import stats

from . import backend
from .errors import InputError
from .lcs import lcs_dp
from .strings import BinaryString, Seed, coerce, random_string


class CellType(IntEnum):
    MATCH = 0
    MISMATCH = 1


def cell_type(a_bit: int, b_bit: int) -> CellType:
    """Match iff the two characters are equal (XOR of the bits)."""
    return CellType(int(a_bit) ^ int(b_bit))


@dataclass(frozen=True)
class SiteSequence:
    """Finite window of particle/hole values along an anti-diagonal.

    ``values[i]`` is the value on wire ``origin + i``; ``halfstep`` counts
    the half-steps already applied. Particle = 1, hole = 0.
    """

    values: np.ndarray
    origin: int
    halfstep: int = 0

    def __post_init__(self):
        v = np.ascontiguousarray(np.asarray(self.values, dtype=np.uint8))
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def particle_count(self) -> int:
        return int(self.values.sum())

    def hole_count(self) -> int:
        return int(self.values.size - self.values.sum())

    def particles_at_or_above(self, wire: int) -> int:
        """Number of particles on wires with index >= wire."""
        lo = max(wire - self.origin, 0)
        return int(self.values[lo:].sum())

    def value_at(self, wire: int) -> int:
        idx = wire - self.origin
        if not 0 <= idx < self.values.size:
            raise InputError(f"wire {wire} outside window")
        return int(self.values[idx])

    def to_ascii(self) -> str:
        return "".join(".*"[v] for v in self.values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SiteSequence):
            return NotImplemented
        return (
            self.origin == other.origin
            and self.halfstep == other.halfstep
            and self.values.shape == other.values.shape
            and bool((self.values == other.values).all())
        )


def step_initial_condition(origin: int, width: int, halfstep: int = 0) -> SiteSequence:
    """Particles on negative wires, holes on nonnegative wires."""
    wires = origin + np.arange(width)
    return SiteSequence((wires < 0).astype(np.uint8), origin, halfstep)


def dualize(s: SiteSequence) -> SiteSequence:
    """Reflection about the main diagonal with particle/hole exchange.

    Wire w maps to wire -1-w, so the window [o, o+L) maps to [-o-L, -o).
    """
    return SiteSequence(
        (1 - s.values)[::-1].copy(), -(s.origin + s.values.size), s.halfstep
    )


def _check_window(a: BinaryString, b: BinaryString, steps: int):
    m, n = len(a), len(b)
    if steps < 0:
        raise InputError("steps must be nonnegative")
    if m < steps or n < steps:
        raise InputError(
            f"strings of length {m}, {n} too short for {steps} time steps"
        )
    # all wires that the cells of half-steps [0, 2*steps) can touch
    origin = -min(m, 2 * steps)
    top = min(n, 2 * steps)
    return origin, top - origin


def evolve_step_ic(a, b, steps: int, trace: list | None = None) -> SiteSequence:
    """Evolve the step initial condition for ``steps`` diagonal time steps.

    Runs 2*steps half-steps over the exact window of mutable wires; there
    is no truncation error. If ``trace`` is a list, an ASCII snapshot
    ('.' hole, '*' particle) is appended for the initial state and after
    every half-step.
    """
    a, b = coerce(a), coerce(b)
    origin, width = _check_window(a, b, steps)
    state = step_initial_condition(origin, width)
    values = state.values.copy()
    if trace is not None:
        trace.append(state.to_ascii())
        for d in range(2 * steps):
            backend.evolve_cells(values, origin, a.bits, b.bits, d, d + 1)
            trace.append("".join(".*"[v] for v in values))
    else:
        backend.evolve_cells(values, origin, a.bits, b.bits, 0, 2 * steps)
    return SiteSequence(values, origin, 2 * steps)


@dataclass(frozen=True)
class CrossingReport:
    n: int
    k: int
    l: int
    particles_at_or_above: int

    @property
    def exact(self) -> bool:
        return self.particles_at_or_above == self.k - self.l


def crossing_report(a, b, n: int, k: int) -> CrossingReport:
    """Particles at wire indices >= 2n-2k after n steps, versus k - l.

    l is the LCS length of the prefixes a[0..k), b[0..2n-k). Requires both
    strings to have at least 2n characters, so that all cells of the first
    2n half-steps are determined.
    """
    a, b = coerce(a), coerce(b)
    if not 0 <= k <= 2 * n:
        raise InputError(f"k must be in [0, 2n], got {k}")
    if len(a) < 2 * n or len(b) < 2 * n:
        raise InputError("crossing_report requires strings of length >= 2n")
    state = evolve_step_ic(a, b, n)
    l = lcs_dp(a[:k], b[: 2 * n - k]).length
    return CrossingReport(n, k, l, state.particles_at_or_above(2 * n - 2 * k))


def bottom_output_particles(a, b) -> int:
    """Particles among the n outputs exiting the full m x n grid at the
    bottom; equals the LCS length."""
    a, b = coerce(a), coerce(b)
    m, n = len(a), len(b)
    if m == 0 or n == 0:
        return 0
    values = step_initial_condition(-m, m + n).values.copy()
    backend.evolve_cells(values, -m, a.bits, b.bits, 0, m + n - 1)
    # wires exiting at the bottom are those with index < n - m
    return int(values[:n].sum())


def independence_test(trials: int, n: int = 6, seed: int = 0) -> dict:
    """Empirical check of cell-type independence on random string pairs.

    For several fixed triples of distinct cells, tests the joint empirical
    distribution of types against uniform on {0,1}^3 (chi-square, 7 dof).
    Also checks that every sampled 2x2 block has even type parity, and that
    the fourth cell of a 2x2 block is determined by the other three.
    """
    if trials < 10**4:
        raise InputError("independence_test needs at least 10^4 trials")
    triples = {
        "row_triple": ((0, 0), (0, 1), (0, 2)),
        "l_shape": ((0, 0), (0, 1), (1, 0)),
        "diagonal": ((0, 0), (1, 1), (2, 2)),
        "scattered": ((0, 2), (1, 0), (2, 1)),
    }
    counts = {name: np.zeros(8, dtype=np.int64) for name in triples}
    parity_violations = 0
    quad_determined = 0
    for t in range(trials):
        a = random_string(n, Seed(seed, 2 * t)).bits.astype(np.int64)
        b = random_string(n, Seed(seed, 2 * t + 1)).bits.astype(np.int64)
        types = a[:, None] ^ b[None, :]
        for name, cells in triples.items():
            idx = (
                (types[cells[0]] << 2) | (types[cells[1]] << 1) | types[cells[2]]
            )
            counts[name][idx] += 1
        block = types[:2, :2]
        if int(block.sum()) % 2 != 0:
            parity_violations += 1
        if block[1, 1] == block[0, 0] ^ block[0, 1] ^ block[1, 0]:
            quad_determined += 1
    report = {
        "trials": trials,
        "parity_violations": parity_violations,
        "quad_determined_fraction": quad_determined / trials,
        "triples": {},
    }
    for name, c in counts.items():
        chi2, p = stats.chisquare(c)
        report["triples"][name] = {
            "counts": c.tolist(),
            "chi2": float(chi2),
            "p_value": float(p),
        }
    # the 2x2 quadruple is degenerate: odd-parity outcomes never occur
    report["quad_dependence_detected"] = (
        parity_violations == 0 and report["quad_determined_fraction"] == 1.0
    )
    return report
