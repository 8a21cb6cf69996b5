"""The Bernoulli network-evolution model: discrete-time TASEP with
sublattice-parallel update on a periodic ring.

Site marginals alternate: under the convention fixed here, even array
indices carry particle probability u and odd indices ubar = 1-u in the
initial (half-step 0) configuration. Each half-step shifts the alternating
pattern by one site, so measurements are phase-corrected: the "u-phase"
sites after h completed half-steps are those with (index + h) even.

Half-step h pairs sites (i, i+1) with i odd for even h and i even for odd
h, matching the (odd, even) then (even, odd) order of diagonal evolution.
Each pair's cell draws its coin from a counter-based stream keyed by
(seed, half-step, lower site index); the coin is compared against the rate
p2 only when the entry pair is (particle, hole), so the pseudo-rates p0 =
p3 and p1 never influence the value trajectory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._rng import halfstep_key, pair_uniforms
from .errors import InputError
from .network import SiteSequence
from .strings import Seed

_U = np.uint64


@dataclass(frozen=True)
class ModelBParams:
    """Rate p2 and pseudo-rates p0 = p3, p1."""

    p2: float
    p0: float = 0.5
    p1: float = 0.5

    @property
    def p3(self) -> float:
        return self.p0

    def __post_init__(self):
        for name in ("p2", "p0", "p1"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise InputError(f"{name} must be in [0, 1], got {v}")


@dataclass(frozen=True)
class StationaryMarginals:
    u: float

    @property
    def ubar(self) -> float:
        return 1.0 - self.u


@dataclass(frozen=True)
class FluxReport:
    swaps_per_pair: float
    u_phase_density: float
    halfsteps: int

    @property
    def f(self) -> float:
        return self.swaps_per_pair

    @property
    def fbar(self) -> float:
        return 1.0 - self.swaps_per_pair

    @property
    def gamma_proxy(self) -> float:
        return self.fbar


def stationary_u(p2: float) -> StationaryMarginals:
    """Root in [0, 1/2] of the time-invariance equation u^2 = (1-u)^2 (1-p2)."""
    if not 0.0 <= p2 <= 1.0:
        raise InputError(f"p2 must be in [0, 1], got {p2}")
    s = math.sqrt(1.0 - p2)
    return StationaryMarginals(s / (1.0 + s))


def sample_stationary(L: int, u: float, seed: Seed) -> SiteSequence:
    """Product measure on a ring: particle probability u at even sites,
    1-u at odd sites."""
    if L % 2 != 0:
        raise InputError("window size must be even")
    coins = pair_uniforms(seed.state(), np.arange(L, dtype=np.int64))
    thresh = np.where(np.arange(L) % 2 == 0, u, 1.0 - u)
    return SiteSequence((coins < thresh).astype(np.uint8), origin=0, halfstep=0)


def sample_stationary_canonical(L: int, u: float, seed: Seed) -> SiteSequence:
    """Stationary-profile sample with exact per-phase particle counts.

    On a ring the particle number is conserved, so a product-measure start
    carries a quenched O(1/sqrt(L)) density offset for the entire run.
    Placing exactly round(L/2 * u) particles on even sites and
    round(L/2 * (1-u)) on odd sites (positions uniform given the seed)
    removes that offset while keeping the correct marginal profile.
    """
    if L % 2 != 0:
        raise InputError("window size must be even")
    values = np.zeros(L, dtype=np.uint8)
    coins = pair_uniforms(seed.state(), np.arange(L, dtype=np.int64))
    for phase, marginal in ((0, u), (1, 1.0 - u)):
        sites = np.arange(phase, L, 2)
        count = int(round(sites.size * marginal))
        order = np.argsort(coins[sites], kind="stable")
        values[sites[order[:count]]] = 1
    return SiteSequence(values, origin=0, halfstep=0)


def _pair_indices(L: int, h: int) -> tuple[np.ndarray, np.ndarray]:
    start = 1 if h % 2 == 0 else 0
    lo = np.arange(start, L, 2, dtype=np.int64)
    hi = (lo + 1) % L
    return lo, hi


def _halfstep_values(values: np.ndarray, h: int, p2: float, seed: int):
    """One ring half-step in place; returns (lo indices, swap mask, coins)."""
    L = values.size
    lo, hi = _pair_indices(L, h)
    coins = pair_uniforms(halfstep_key(seed, h), lo)
    swap = (values[lo] == 1) & (values[hi] == 0) & (coins < p2)
    values[lo[swap]] = 0
    values[hi[swap]] = 1
    return lo, swap, coins


def halfstep(s: SiteSequence, params: ModelBParams, seed: Seed) -> SiteSequence:
    """Apply one sublattice-parallel half-step on the ring."""
    values = s.values.copy()
    _halfstep_values(values, s.halfstep, params.p2, seed.state())
    return SiteSequence(values, s.origin, s.halfstep + 1)


def sample_cell_types(
    s: SiteSequence, params: ModelBParams, seed: Seed
) -> np.ndarray:
    """Cell types (0 match, 1 mismatch) the cells of the next half-step
    would draw, using the same coins as the value update.

    The entry pair (lower, upper) read as a binary number selects the
    probability: 0 -> p0, 1 -> p1, 2 -> p2, 3 -> p3. Only the p2 case can
    change values.
    """
    values = s.values
    lo, hi = _pair_indices(values.size, s.halfstep)
    coins = pair_uniforms(halfstep_key(seed.state(), s.halfstep), lo)
    pv = np.array([params.p0, params.p1, params.p2, params.p3])
    idx = (values[lo].astype(np.int64) << 1) | values[hi].astype(np.int64)
    return (coins < pv[idx]).astype(np.uint8)


@dataclass
class InvarianceReport:
    p2: float
    L: int
    burn_in: int
    measure_steps: int
    u_theory: float
    u_phase_density: float
    ubar_phase_density: float
    pair_freq_10: float
    pair_freq_00: float
    pred_pair_10: float
    pred_pair_00: float
    density_sigma: float
    rows: list = field(default_factory=list)


def run_ring(
    p2: float,
    L: int,
    burn_in: int,
    measure_steps: int,
    seed: int,
    collect_rows: bool = False,
):
    """Drive the ring from its predicted stationary measure and record
    phase-corrected statistics each measured half-step."""
    if L % 2 != 0:
        raise InputError("L must be even")
    u = stationary_u(p2).u
    state = sample_stationary_canonical(L, u, Seed(seed, 0))
    values = state.values.copy()
    dyn_seed = Seed(seed, 1).state()
    dens_u, dens_ub, swaps, f10, f00 = [], [], [], [], []
    rows = []
    for h in range(burn_in + measure_steps):
        lo, swap, _ = _halfstep_values(values, h, p2, dyn_seed)
        if h < burn_in:
            continue
        done = h + 1
        u_phase = values[(np.arange(L) + done) % 2 == 0]
        ub_phase = values[(np.arange(L) + done) % 2 == 1]
        # seam pairs for the *next* half-step: lower site in ubar phase
        nlo, nhi = _pair_indices(L, done)
        pair10 = float(np.mean((values[nlo] == 1) & (values[nhi] == 0)))
        pair00 = float(np.mean((values[nlo] == 0) & (values[nhi] == 0)))
        dens_u.append(float(u_phase.mean()))
        dens_ub.append(float(ub_phase.mean()))
        swaps.append(float(swap.mean()))
        f10.append(pair10)
        f00.append(pair00)
        if collect_rows:
            rows.append(
                {
                    "halfstep": done,
                    "even_density": dens_u[-1],
                    "odd_density": dens_ub[-1],
                    "swap_rate": swaps[-1],
                }
            )
    return values, dens_u, dens_ub, swaps, f10, f00, rows


def invariance_test(
    p2: float, L: int, burn_in: int, measure_steps: int, seed: int = 0
) -> InvarianceReport:
    """Measure deviations from the product-form stationary predictions."""
    u = stationary_u(p2).u
    ub = 1.0 - u
    _, dens_u, dens_ub, _, f10, f00, rows = run_ring(
        p2, L, burn_in, measure_steps, seed, collect_rows=True
    )
    sigma = math.sqrt(u * ub / (L / 2 * max(len(dens_u), 1)))
    return InvarianceReport(
        p2=p2,
        L=L,
        burn_in=burn_in,
        measure_steps=measure_steps,
        u_theory=u,
        u_phase_density=float(np.mean(dens_u)),
        ubar_phase_density=float(np.mean(dens_ub)),
        pair_freq_10=float(np.mean(f10)),
        pair_freq_00=float(np.mean(f00)),
        pred_pair_10=ub * ub,
        pred_pair_00=u * ub,
        density_sigma=sigma,
        rows=rows,
    )


def measure_flux(
    p2: float, L: int, steps: int, seed: int = 0, burn_in: int | None = None
) -> FluxReport:
    """Empirical exchange probability per pair; in stationarity
    f = (1-u)^2 p2 = 1 - 2u, so fbar estimates the peak flux complement."""
    if burn_in is None:
        burn_in = max(steps // 10, 10)
    _, dens_u, _, swaps, _, _, _ = run_ring(p2, L, burn_in, steps, seed)
    return FluxReport(
        swaps_per_pair=float(np.mean(swaps)),
        u_phase_density=float(np.mean(dens_u)),
        halfsteps=steps,
    )
