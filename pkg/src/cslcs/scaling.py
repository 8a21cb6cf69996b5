"""Scaling-limit utilities: rarefaction-fan density profiles for a concave
flux, the mass-transport identity, and empirical profiles from the
particle models.

Scaled coordinates: after n diagonal time steps from the step initial
condition, wire index w sits at x = w / n and the state corresponds to
scaled time t = 1. The empirical density at x mixes adjacent site
parities, so the peak density at the main diagonal is 1/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

from . import backend
from ._rng import stream_seed
from .errors import InputError, NumericError
from .network import step_initial_condition
from .strings import Seed, random_string

_CONCAVITY_GRID = 201


class FluxFunction:
    """Flux f(y) on [0, 1] with f(0) = f(1) = 0, strictly concave.

    The derivative may be supplied; otherwise a central finite difference
    is used. Concavity and the boundary conditions are verified on a grid
    at construction.
    """

    def __init__(
        self,
        f: Callable[[float], float],
        fprime: Callable[[float], float] | None = None,
        name: str = "flux",
    ):
        self.f = f
        self.name = name
        if fprime is None:
            h = 1e-6

            def fprime(y, _f=f, _h=h):
                lo, hi = max(y - _h, 0.0), min(y + _h, 1.0)
                return (_f(hi) - _f(lo)) / (hi - lo)

        self.fprime = fprime
        self._validate()

    def _validate(self):
        if abs(self.f(0.0)) > 1e-9 or abs(self.f(1.0)) > 1e-9:
            raise NumericError(f"{self.name}: flux must vanish at 0 and 1")
        ys = np.linspace(0.0, 1.0, _CONCAVITY_GRID)
        vals = np.array([self.f(float(y)) for y in ys])
        second = vals[2:] - 2.0 * vals[1:-1] + vals[:-2]
        if not (second < 0.0).all():
            raise NumericError(f"{self.name}: flux is not strictly concave")

    def peak_density(self, tol: float = 1e-12) -> float:
        """ytilde = (f')^{-1}(0)."""
        return self.inverse_derivative(0.0, tol)

    def peak_flux(self) -> float:
        return self.f(self.peak_density())

    def inverse_derivative(self, slope: float, tol: float = 1e-12) -> float:
        """Monotone inverse of f' by bisection on [0, 1]."""
        lo, hi = 0.0, 1.0
        # f' is strictly decreasing by concavity
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if self.fprime(mid) > slope:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)


def rarefaction_density(flux: FluxFunction, t: float, x: float) -> float:
    """Self-similar solution y(t, x) of the conservation law from step data."""
    if t <= 0.0:
        raise InputError("t must be positive")
    if x <= flux.fprime(1.0) * t:
        return 1.0
    if x >= flux.fprime(0.0) * t:
        return 0.0
    return flux.inverse_derivative(x / t)


def transported_mass(flux: FluxFunction) -> dict:
    """Mass crossing the origin by t = 1, two ways: the integral of the
    t = 1 profile over x > 0, and the peak flux f(ytilde)."""
    upper = flux.fprime(0.0)
    integral, _ = integrate.quad(
        lambda x: rarefaction_density(flux, 1.0, x), 0.0, upper, limit=200
    )
    peak = flux.peak_flux()
    return {
        "integral": float(integral),
        "peak_flux": float(peak),
        "difference": float(integral - peak),
    }


@dataclass(frozen=True)
class DensityProfile:
    model: str
    n: int
    ensemble: int
    t: float
    x: np.ndarray
    y_mean: np.ndarray
    y_stderr: np.ndarray
    transported_mass: float
    mass_stderr: float

    def peak_window_density(self, half_width: float = 0.05) -> float:
        sel = np.abs(self.x) < half_width
        return float(np.nanmean(self.y_mean[sel]))

    def skew_symmetry_excess(self) -> tuple[np.ndarray, np.ndarray]:
        """Per-bin y(-x) + y(x) - 1 and its standard error."""
        y = self.y_mean
        e = self.y_stderr
        rev = y[::-1]
        erev = e[::-1]
        return (y + rev - 1.0), np.sqrt(e**2 + erev**2)


def _evolve_member_cs(n: int, master: int, member: int) -> np.ndarray:
    a = random_string(2 * n, Seed(master, 2 * member))
    b = random_string(2 * n, Seed(master, 2 * member + 1))
    values = step_initial_condition(-2 * n, 4 * n).values.copy()
    backend.evolve_cells(values, -2 * n, a.bits, b.bits, 0, 2 * n)
    return values


def _evolve_member_b(n: int, p2: float, master: int, member: int) -> np.ndarray:
    values = step_initial_condition(-2 * n, 4 * n).values.copy()
    backend.evolve_b_cells(values, -2 * n, 0, 2 * n, p2, stream_seed(master, member))
    return values


def empirical_profile(
    model: str,
    n: int,
    bins: int = 201,
    ensemble: int = 100,
    seed: int = 0,
    p2: float = 0.5,
    x_range: tuple[float, float] = (-1.5, 1.5),
) -> DensityProfile:
    """Ensemble-averaged density profile after n time steps from step IC.

    model is "cs" (random-string cell types, quenched average over string
    pairs) or "b" (Bernoulli cell types at rate p2). The transported mass
    is the ensemble mean of (particles at nonnegative wires) / n.
    """
    if model not in ("cs", "b"):
        raise InputError(f"unknown model {model!r}")
    if n < 1 or ensemble < 1:
        raise InputError("n and ensemble must be positive")
    wires = np.arange(-2 * n, 2 * n)
    x_sites = (wires + 0.5) / n
    edges = np.linspace(x_range[0], x_range[1], bins + 1)
    which = np.digitize(x_sites, edges) - 1
    inside = (which >= 0) & (which < bins)
    bin_counts = np.bincount(which[inside], minlength=bins)
    member_bins = np.empty((ensemble, bins))
    member_mass = np.empty(ensemble)
    for e in range(ensemble):
        if model == "cs":
            values = _evolve_member_cs(n, seed, e)
        else:
            values = _evolve_member_b(n, p2, seed, e)
        sums = np.bincount(
            which[inside], weights=values[inside].astype(float), minlength=bins
        )
        with np.errstate(invalid="ignore"):
            member_bins[e] = sums / bin_counts
        member_mass[e] = values[2 * n :].sum() / n
    y_mean = member_bins.mean(axis=0)
    y_stderr = member_bins.std(axis=0, ddof=1) / np.sqrt(ensemble) if ensemble > 1 \
        else np.zeros(bins)
    centers = 0.5 * (edges[:-1] + edges[1:])
    return DensityProfile(
        model=model,
        n=n,
        ensemble=ensemble,
        t=1.0,
        x=centers,
        y_mean=y_mean,
        y_stderr=y_stderr,
        transported_mass=float(member_mass.mean()),
        mass_stderr=float(member_mass.std(ddof=1) / np.sqrt(ensemble))
        if ensemble > 1
        else 0.0,
    )
