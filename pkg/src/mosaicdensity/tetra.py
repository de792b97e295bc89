"""Centered tetrahedra and the quadratic identities tying edge data to volume.

For a tetrahedron with vertex sum zero, write for each vertex pair (i, j)
the scalar ``gamma_ij = -<p_s, p_t>`` where (s, t) is the complementary
pair, and ``zeta_ij = gamma_ij |p_i x p_j|^2``.  Feeding the six gamma
values to the volume cubic yields (9/4) V^2, and the six zeta values sum
to (27/4) V^2, where V is the tetrahedron volume.  These two identities
are the backbone of several optimality arguments in this package and are
re-verified numerically here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .zonotope import PAIRS, GeometryError, volume_polynomial


class DegenerateTetrahedron(GeometryError):
    """Volume too close to zero for reliable normalization."""


@dataclass(frozen=True)
class CenteredTetrahedron:
    """Four vertices translated so they sum to zero.

    The vertex order is normalized so det(p1, p2, p3) > 0 (first two
    vertices swapped when needed).  Construct through :func:`center` or
    :func:`random_tetrahedron` rather than directly.
    """

    vertices: np.ndarray  # (4, 3)

    @property
    def volume(self) -> float:
        p = self.vertices
        return abs(float(np.linalg.det(p[1:] - p[0]))) / 6.0

    @property
    def triple_product(self) -> float:
        return float(np.linalg.det(self.vertices[:3]))


def center(raw: np.ndarray, min_volume: float = 0.0) -> CenteredTetrahedron:
    """Translate to vertex sum zero and normalize the orientation."""
    p = np.asarray(raw, dtype=np.float64)
    if p.shape != (4, 3) or not np.isfinite(p).all():
        raise GeometryError("expected four finite vertices")
    p = p - p.mean(axis=0)
    vol = abs(float(np.linalg.det(p[1:] - p[0]))) / 6.0
    if vol <= min_volume:
        raise DegenerateTetrahedron(f"volume {vol:.3e} at or below {min_volume:.3e}")
    if np.linalg.det(p[:3]) < 0:
        p = p[[1, 0, 2, 3]]
    return CenteredTetrahedron(p)


def normalized_to_frame(t: CenteredTetrahedron) -> CenteredTetrahedron:
    """Rescale so det(p1, p2, p3) = +1, i.e. volume exactly 2/3."""
    d = t.triple_product
    return CenteredTetrahedron(t.vertices * d ** (-1.0 / 3.0))


def random_tetrahedron(
    rng: np.random.Generator, reject_volume_below: float = 1e-3
) -> CenteredTetrahedron:
    """Uniform vertices in [-1, 1]^3, recentered; slivers are rejected."""
    while True:
        p = rng.uniform(-1.0, 1.0, size=(4, 3))
        try:
            return center(p, min_volume=reject_volume_below)
        except DegenerateTetrahedron:
            continue


@dataclass(frozen=True)
class PairInvariants:
    """Per-pair scalars in :data:`PAIRS` order."""

    neg_opposite_dot: np.ndarray  # gamma: minus the dot of the complementary pair
    cross_weighted: np.ndarray    # zeta: gamma * |p_i x p_j|^2


def pair_invariants(t: CenteredTetrahedron) -> PairInvariants:
    p = t.vertices
    gamma = np.empty(6)
    zeta = np.empty(6)
    for k, (i, j) in enumerate(PAIRS):
        s, u = PAIRS[5 - k]
        gamma[k] = -float(p[s] @ p[u])
        cr = np.cross(p[i], p[j])
        zeta[k] = gamma[k] * float(cr @ cr)
    return PairInvariants(gamma, zeta)


@dataclass(frozen=True)
class IdentityReport:
    volume: float
    poly_value: float      # volume cubic evaluated on gamma; equals 9 V^2 / 4
    weighted_sum: float    # sum of zeta; equals 27 V^2 / 4
    poly_residual: float
    sum_residual: float
    passed: bool


def verify_identities(t: CenteredTetrahedron, tol: float = 1e-9) -> IdentityReport:
    """Check both quadratic identities; residuals are relative to max(1, V^2)."""
    inv = pair_invariants(t)
    v2 = t.volume**2
    pv = volume_polynomial(inv.neg_opposite_dot)
    ws = float(inv.cross_weighted.sum())
    scale = max(1.0, v2)
    r1 = abs(pv - 2.25 * v2) / scale
    r2 = abs(ws - 6.75 * v2) / scale
    return IdentityReport(t.volume, pv, ws, r1, r2, bool(r1 <= tol and r2 <= tol))


def batch_identity_residuals(
    samples: int, seed: int = 0, reject_volume_below: float = 1e-3
) -> tuple[float, float]:
    """Worst relative residual of each identity over random tetrahedra.

    Sampling and evaluation are vectorized through the kernel layer;
    rejection keeps volumes above ``reject_volume_below``.
    """
    rng = np.random.default_rng(seed)
    collected = 0
    worst1 = worst2 = 0.0
    while collected < samples:
        n = min(4096, max(256, samples - collected))
        p = rng.uniform(-1.0, 1.0, size=(n, 4, 3))
        p -= p.mean(axis=1, keepdims=True)
        gamma, zeta, vol = _kernels.pair_scalars_many(p)
        keep = vol > reject_volume_below
        gamma, zeta, vol = gamma[keep], zeta[keep], vol[keep]
        if len(vol) == 0:
            continue
        take = min(len(vol), samples - collected)
        gamma, zeta, vol = gamma[:take], zeta[:take], vol[:take]
        collected += take
        v2 = vol**2
        scale = np.maximum(1.0, v2)
        pv = _kernels.volume_poly_many(np.ascontiguousarray(gamma))
        r1 = np.abs(pv - 2.25 * v2) / scale
        r2 = np.abs(zeta.sum(axis=1) - 6.75 * v2) / scale
        worst1 = max(worst1, float(r1.max()))
        worst2 = max(worst2, float(r2.max()))
    return worst1, worst2
