"""Constrained maximization of the volume cubic over a weighted simplex.

The question: scale the first coordinate by lambda >= 1, freeze the last
coordinate at zero, and maximize the volume cubic over nonnegative
(tau12, tau13, tau14, tau23, tau24) summing to a budget C.  The closed
form of the maximum is

    16 C^3 lambda^3 / (27 (4 lambda - 1)^2)

attained at tau13 = tau14 = tau23 = tau24 = 2 lambda C / (12 lambda - 3)
and tau12 = ((4 lambda - 3) / (2 lambda)) tau13.  A grid scan over exact
integer compositions plus coordinate-transfer refinement serves as an
independent check that no boundary stratum beats the interior point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .zonotope import volume_polynomial


class DomainError(ValueError):
    """Scale factor outside the hypothesis lambda >= 1."""


@dataclass(frozen=True)
class SimplexPoint:
    """Feasible point: five nonnegative coordinates summing to budget."""

    tau: np.ndarray  # (5,) = (tau12, tau13, tau14, tau23, tau24)
    budget: float

    def __post_init__(self) -> None:
        t = np.asarray(self.tau, dtype=np.float64)
        if t.shape != (5,) or not np.isfinite(t).all():
            raise ValueError("expected five finite coordinates")
        if (t < -1e-12).any():
            raise ValueError("coordinates must be nonnegative")
        if abs(t.sum() - self.budget) > 1e-9 * max(1.0, self.budget):
            raise ValueError("coordinates must sum to the budget")
        object.__setattr__(self, "tau", t)

    def objective(self, lam: float) -> float:
        t = self.tau
        return volume_polynomial(
            np.array([lam * t[0], t[1], t[2], t[3], t[4], 0.0])
        )


def scaled_simplex_max(lam: float, budget: float = 1.0) -> tuple[float, SimplexPoint]:
    """Closed-form maximum and its unique interior argmax."""
    if lam < 1.0:
        raise DomainError(f"scale factor {lam} < 1")
    if budget <= 0.0:
        raise ValueError("budget must be positive")
    value = 16.0 * budget**3 * lam**3 / (27.0 * (4.0 * lam - 1.0) ** 2)
    t13 = 2.0 * lam * budget / (12.0 * lam - 3.0)
    t12 = (4.0 * lam - 3.0) / (2.0 * lam) * t13
    point = SimplexPoint(np.array([t12, t13, t13, t13, t13]), budget)
    return value, point


def boundary_candidates(lam: float) -> list[float]:
    """Candidate maxima of the boundary strata at unit budget.

    Each value arises when one or more coordinates are pinned to zero;
    all are strictly below the interior maximum for lam >= 1.
    """
    if lam < 1.0:
        raise DomainError(f"scale factor {lam} < 1")
    return [
        1.0 / 16.0,
        4.0 * lam**2 / (27.0 * (4.0 * lam - 1.0)),
        lam / 27.0,
        1.0 / 27.0,
    ]


def _refine(lam: float, t: np.ndarray, budget: float, step0: float, rounds: int) -> float:
    """Greedy pairwise mass transfer with a halving step.

    Moves keep the coordinates exactly on the simplex (a transfer
    preserves the sum); each round exhausts improving moves at the
    current step, then halves it.
    """
    t = t.astype(np.float64).copy()

    def f(u: np.ndarray) -> float:
        return volume_polynomial(
            np.array([lam * u[0], u[1], u[2], u[3], u[4], 0.0])
        )

    best = f(t)
    step = step0
    for _ in range(rounds):
        improved = True
        while improved:
            improved = False
            for a in range(5):
                if t[a] < step:
                    continue
                for b in range(5):
                    if a == b:
                        continue
                    u = t.copy()
                    u[a] -= step
                    u[b] += step
                    v = f(u)
                    if v > best:
                        best, t, improved = v, u, True
        step *= 0.5
    return best


def grid_simplex_max(
    lam: float,
    budget: float = 1.0,
    grid_n: int = 60,
    refine_rounds: int = 60,
) -> float:
    """Brute-force maximum: composition grid scan, then local refinement.

    The scan enumerates all integer compositions of ``grid_n`` into five
    parts (exact feasibility, no floating-point drift on the constraint)
    and is the hot path handled by the kernel layer.  Refinement starts
    from the best grid point with step ``budget / grid_n``.
    """
    if lam < 1.0:
        raise DomainError(f"scale factor {lam} < 1")
    if grid_n < 10:
        raise ValueError("grid_n must be at least 10")
    best, comp = _kernels.simplex_grid_scan(lam, grid_n, budget)
    t = comp.astype(np.float64) / grid_n * budget
    if refine_rounds <= 0:
        return float(best)
    return _refine(lam, t, budget, budget / grid_n, refine_rounds)
