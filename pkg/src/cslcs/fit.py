"""The local-fitting polynomial system linking the Bernoulli model to the
random-string model, its damped Newton solver, and the exact closed-form
solution.

Main variables are (u, p0, p1, p2) with p3 = p0 and zbar = 1 - z
throughout. The five equations are the time-invariance equation E1, the
total probability equation E2, and the three linking equations E3..E5 for
the rate and pseudo-rates. E2 is redundant and is used as a consistency
check; Newton iterates on {E1, E3, E4, E5}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError, SolverError

LUEKER_LOWER = 0.788071
LUEKER_UPPER = 0.826280

DEFAULT_START = (math.sqrt(2.0) - 1.0, 0.5, 0.5, 0.5)


@dataclass(frozen=True)
class AuxProbs:
    """Cell-type probabilities conditioned on a single entry site (q) and
    on the exit pair of the reverse process (r)."""

    q0: float
    q1: float
    r0: float
    r1: float
    r2: float
    r3: float

    def admissible(self) -> bool:
        return all(
            0.0 <= v <= 1.0
            for v in (self.q0, self.q1, self.r0, self.r1, self.r2, self.r3)
        )


@dataclass(frozen=True)
class FitSolution:
    u: float
    p0: float
    p1: float
    p2: float
    aux: AuxProbs
    residuals: tuple
    method: str

    @property
    def gamma(self) -> float:
        return 2.0 * self.u

    @property
    def p3(self) -> float:
        return self.p0

    def admissible(self) -> bool:
        mains = (self.u, self.p0, self.p1, self.p2)
        return all(0.0 <= v <= 1.0 for v in mains) and self.aux.admissible()

    @property
    def exceeds_lueker_upper_bound(self) -> bool:
        return self.gamma > LUEKER_UPPER

    def to_dict(self) -> dict:
        return {
            "u": self.u,
            "gamma": self.gamma,
            "p0": self.p0,
            "p1": self.p1,
            "p2": self.p2,
            "q0": self.aux.q0,
            "q1": self.aux.q1,
            "r0": self.aux.r0,
            "r1": self.aux.r1,
            "residuals": list(self.residuals),
            "method": self.method,
            "admissible": self.admissible(),
            "exceeds_lueker_upper_bound": self.exceeds_lueker_upper_bound,
        }


def aux(u: float, p0: float, p1: float, p2: float) -> AuxProbs:
    """Auxiliary probabilities as functions of the main variables."""
    if u == 1.0:
        raise InputError("u = 1 is outside the domain (division by zero)")
    for name, v in (("u", u), ("p0", p0), ("p1", p1), ("p2", p2)):
        if not 0.0 <= v <= 1.0:
            raise InputError(f"{name} must be in [0, 1], got {v}")
    ub = 1.0 - u
    p3 = p0
    return AuxProbs(
        q0=ub * p0 + u * p1,
        q1=ub * p2 + u * p3,
        r0=p0,
        r1=1.0 - u * u * (1.0 - p1) / (ub * ub),
        r2=0.0,
        r3=p3,
    )


def residuals(u: float, p0: float, p1: float, p2: float) -> np.ndarray:
    """Residual vector (E1..E5) of the five-equation system."""
    ub = 1.0 - u
    p3 = p0
    ax = aux(u, p0, p1, p2)
    q0, q1, r0, r1 = ax.q0, ax.q1, ax.r0, ax.r1
    qb0, qb1, rb0, rb1 = 1.0 - q0, 1.0 - q1, 1.0 - r0, 1.0 - r1
    e1 = u * u - ub * ub * (1.0 - p2)
    e2 = ub * ub * p2 + 2.0 * u * ub * p0 + u * u * p1 - 0.5
    e3 = ub * ub * p2 - (
        2.0 * u * u * q0 * qb0
        + 2.0 * ub * ub * u * p2 * (r0 * q0 + rb0 * qb0)
        + ub**4 * r1 * p2 * p2
    )
    e4 = u * ub * p0 - (
        u * ub * qb1 * (rb0 * q0 + r0 * qb0)
        + u * u * ub * p0 * (r0 * q0 + rb0 * qb0)
        + u * ub**3 * r1 * p0 * p2
        + ub**3 * rb1 * qb1 * p2
    )
    e5 = u * u * p1 - (
        u * u * ub * ub * r1 * p0 * p3
        + 2.0 * u * ub * ub * rb1 * p0 * qb1
        + ub * ub * r1 * qb1 * qb1
    )
    return np.array([e1, e2, e3, e4, e5])


def _solution(u, p0, p1, p2, method) -> FitSolution:
    return FitSolution(
        u=u,
        p0=p0,
        p1=p1,
        p2=p2,
        aux=aux(u, p0, p1, p2),
        residuals=tuple(residuals(u, p0, p1, p2)),
        method=method,
    )


def closed_form() -> FitSolution:
    """Exact-radical solution of the system; gamma = 2u = 0.814050..."""
    u = math.sqrt(7.0 / 3.0) - math.sqrt((23.0 - 5.0 * math.sqrt(21.0)) / 6.0) - 1.0
    p0 = -8.0 / 3.0 + 49.0 / 6.0 * u - u * u - 0.5 * u**3
    p1 = 29.0 / 2.0 - 51.0 * u + 75.0 / 2.0 * u * u + 9.0 * u**3
    p2 = -2.0 / 3.0 + 34.0 / 3.0 * u - 19.0 * u * u - 4.0 * u**3
    return _solution(u, p0, p1, p2, "closed_form")


def arratia_steele() -> FitSolution:
    """The equal-rates point u = sqrt(2)-1, all rates 1/2; satisfies E1 and
    E2 but not the linking equations."""
    u = math.sqrt(2.0) - 1.0
    return _solution(u, 0.5, 0.5, 0.5, "arratia_steele")


def _newton_system(x: np.ndarray) -> np.ndarray:
    e = residuals(*x)
    return e[[0, 2, 3, 4]]


def _jacobian_fd(x: np.ndarray, rel_h: float = 1e-7) -> np.ndarray:
    jac = np.empty((4, 4))
    for j in range(4):
        h = rel_h * max(1.0, abs(x[j]))
        xp, xm = x.copy(), x.copy()
        xp[j] = min(xp[j] + h, 1.0)
        xm[j] = max(xm[j] - h, 0.0)
        jac[:, j] = (_newton_system(xp) - _newton_system(xm)) / (xp[j] - xm[j])
    return jac


def _newton(x0, tol=1e-13, max_iter=60, max_halvings=40):
    x = np.asarray(x0, dtype=float)
    # clamp inside the open domain so aux() stays defined during iteration
    x = np.clip(x, 1e-9, 1.0 - 1e-9)
    f = _newton_system(x)
    for _ in range(max_iter):
        norm = np.linalg.norm(f)
        if np.abs(f).max() < tol:
            return x, True
        try:
            step = np.linalg.solve(_jacobian_fd(x), -f)
        except np.linalg.LinAlgError:
            return x, False
        for _ in range(max_halvings):
            xn = np.clip(x + step, 1e-9, 1.0 - 1e-9)
            fn = _newton_system(xn)
            if np.linalg.norm(fn) < norm:
                break
            step *= 0.5
        else:
            return x, np.abs(f).max() < tol
        x, f = xn, fn
    return x, bool(np.abs(f).max() < tol)


def multi_starts() -> list[tuple]:
    """16 starting points: corners of [0.3, 0.5] x [0.3, 0.7]^3."""
    pts = []
    for us in (0.3, 0.5):
        for a in (0.3, 0.7):
            for b in (0.3, 0.7):
                for c in (0.3, 0.7):
                    pts.append((us, a, b, c))
    return pts


def solve(start: tuple | None = None) -> FitSolution:
    """Damped Newton on {E1, E3, E4, E5}; the converged point must be
    admissible, and E2 is evaluated afterwards as a consistency check."""
    starts = [start] if start is not None else [DEFAULT_START] + multi_starts()
    found = []
    for x0 in starts:
        x, ok = _newton(x0)
        if not ok:
            continue
        sol = _solution(float(x[0]), float(x[1]), float(x[2]), float(x[3]), "newton")
        if sol.admissible():
            found.append(sol)
    if not found:
        raise SolverError(
            "Newton failed to reach an admissible solution from "
            f"{len(starts)} start(s)"
        )
    found.sort(key=lambda s: (s.u, s.p0, s.p1, s.p2))
    return found[0]
