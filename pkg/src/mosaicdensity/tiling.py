"""Lattice tilings by parallelohedra and empirical skeleton density.

A parallelohedron tiles space face to face by lattice translates.  This
module finds a tiling lattice (doubled facet centers supply candidate
vectors), validates it (no overlaps, no gaps, one cell per fundamental
domain), and measures the total edge length of the tiling inside a large
ball.  Each interior edge is shared by exactly 4 cells when its segment
lies on a 4-belt and exactly 3 cells on a 6-belt, so the per-cell
functional with weights (2, 1) divided by cell volume is the limit
density; the simulator checks this convergence empirically.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import _kernels
from .zonotope import (
    BeltClass,
    GeometryError,
    WeightPair,
    Zonotope,
    belts,
    weighted_edge_functional,
)


class NoValidBasis(GeometryError):
    """No facet-center triple generates a valid tiling lattice."""


class Overlap(GeometryError):
    """Two translates have intersecting interiors."""

    def __init__(self, message: str, witness: np.ndarray):
        super().__init__(message)
        self.witness = witness


class Gap(GeometryError):
    """A point of space is covered by no translate."""

    def __init__(self, message: str, witness: np.ndarray):
        super().__init__(message)
        self.witness = witness


class RadiusTooSmall(ValueError):
    """Measurement ball not large enough relative to the cell."""


@dataclass(frozen=True)
class Lattice:
    """Three independent vectors, one per row."""

    basis: np.ndarray  # (3, 3)

    def __post_init__(self) -> None:
        b = np.asarray(self.basis, dtype=np.float64)
        if b.shape != (3, 3) or not np.isfinite(b).all():
            raise ValueError("basis must be a finite 3x3 array")
        if abs(np.linalg.det(b)) < 1e-12:
            raise ValueError("basis vectors are linearly dependent")
        object.__setattr__(self, "basis", b)

    @property
    def covolume(self) -> float:
        return abs(float(np.linalg.det(self.basis)))

    def points_in_ball(self, rmax: float) -> np.ndarray:
        """All lattice vectors of norm at most rmax."""
        binv = np.linalg.inv(self.basis)
        # |c_i| <= |t| * ||column i of basis inverse|| for t = c @ basis
        lim = np.linalg.norm(binv, axis=0) * rmax
        axes = [np.arange(-math.floor(l) - 1, math.floor(l) + 2) for l in lim]
        i, j, k = np.meshgrid(*axes, indexing="ij")
        coeffs = np.stack([i.ravel(), j.ravel(), k.ravel()], axis=1)
        t = coeffs @ self.basis
        return t[np.linalg.norm(t, axis=1) <= rmax]


@dataclass(frozen=True)
class WeightedEdge:
    """A deduplicated tiling edge with its sharing weight 1/k."""

    endpoints: tuple[np.ndarray, np.ndarray]
    weight: float
    cells: int  # k, the number of cells containing the edge


@dataclass(frozen=True)
class DensityEstimate:
    radius: float
    skeleton_length: float
    density: float
    target: float
    weighted_length: float
    cells: int

    @property
    def relative_error(self) -> float:
        return abs(self.density - self.target) / self.target


@dataclass(frozen=True)
class TilingReport:
    determinant: float
    cell_volume: float
    translates_checked: int
    covering_fraction: float
    covering_samples: int


def _oriented_planes(z: Zonotope) -> tuple[np.ndarray, np.ndarray]:
    normals, offsets = z.facet_planes()
    flip = offsets < 0
    normals = np.where(flip[:, None], -normals, normals)
    offsets = np.abs(offsets)
    return normals, offsets


def _has_overlap(z: Zonotope, lat: Lattice) -> np.ndarray | None:
    """Returns an interior-intersection witness point, or None.

    Translates z and z + t overlap iff t/2 lies in the interior of z;
    all lattice points within twice the diameter are screened.
    """
    normals, offsets = _oriented_planes(z)
    t = lat.points_in_ball(2.0 * z.diameter() + 1e-9)
    t = t[np.linalg.norm(t, axis=1) > 1e-12]
    if len(t) == 0:
        return np.zeros(3)
    inside = ((t @ normals.T) / (2.0 * offsets) < 1.0 - 1e-12).all(axis=1)
    if inside.any():
        return t[np.argmax(inside)] / 2.0
    return None


def _covering_fraction(
    z: Zonotope, lat: Lattice, samples: int, seed: int
) -> tuple[float, np.ndarray | None]:
    """Monte-Carlo coverage over one fundamental domain.

    Each sample is tested against the translates at its 27 nearest
    lattice coordinates; by periodicity this decides coverage of all of
    space.
    """
    normals, offsets = _oriented_planes(z)
    rng = np.random.default_rng(seed)
    binv = np.linalg.inv(lat.basis)
    shifts = np.array(
        [(i, j, k) for i in (-1, 0, 1) for j in (-1, 0, 1) for k in (-1, 0, 1)]
    )
    covered = 0
    witness = None
    done = 0
    while done < samples:
        n = min(65536, samples - done)
        x = rng.random((n, 3)) @ lat.basis
        base = np.rint(x @ binv)
        ok = np.zeros(n, dtype=bool)
        for s in shifts:
            t = (base + s) @ lat.basis
            rel = x - t
            ok |= (rel @ normals.T <= offsets + 1e-9).all(axis=1)
        covered += int(ok.sum())
        if witness is None and not ok.all():
            witness = x[np.argmin(ok)].copy()
        done += n
    return covered / samples, witness


def validate_tiling(
    z: Zonotope, lat: Lattice, samples: int = 1_000_000, seed: int = 0
) -> TilingReport:
    """Certify that lattice translates of z tile space.

    Checks, in order: no two translates overlap (witnessed), random
    points are always covered (witnessed), and the lattice covolume
    equals the cell volume so cells fill space with multiplicity one.
    """
    witness = _has_overlap(z, lat)
    if witness is not None:
        raise Overlap(f"translate interiors meet near {witness}", witness)
    frac, gap_witness = _covering_fraction(z, lat, samples, seed)
    if frac < 1.0 - 1e-6:
        raise Gap(
            f"covering fraction {frac:.8f}; uncovered point {gap_witness}",
            gap_witness if gap_witness is not None else np.zeros(3),
        )
    vol = z.volume()
    det = lat.covolume
    if abs(det - vol) > 1e-9 * max(1.0, vol):
        raise GeometryError(
            f"lattice covolume {det:.12g} != cell volume {vol:.12g} despite coverage"
        )
    t = lat.points_in_ball(2.0 * z.diameter() + 1e-9)
    return TilingReport(det, vol, len(t) - 1, frac, samples)


def lattice_from_parallelohedron(z: Zonotope) -> Lattice:
    """Find a tiling lattice among doubled facet centers.

    Accepts the first centroid triple whose covolume matches the cell
    volume and whose translates stay disjoint; the covolume test alone
    is not sufficient (some triples give half-volume fundamental
    domains), so the overlap screen is part of the search.
    """
    vol = z.volume()
    centers = np.array(
        [2.0 * z.vertices[list(f.vertex_ids)].mean(axis=0) for f in z.facets]
    )
    for tri in combinations(range(len(centers)), 3):
        b = centers[list(tri)]
        if abs(abs(np.linalg.det(b)) - vol) > 1e-9 * max(1.0, vol):
            continue
        lat = Lattice(b)
        if _has_overlap(z, lat) is None:
            return lat
    raise NoValidBasis("no facet-center triple yields a disjoint unit-index lattice")


def _cell_edge_arrays(z: Zonotope) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Per-cell edge endpoints, segment labels, and sharing counts 3 or 4."""
    e0 = z.vertices[z.edge_vertex_ids[:, 0]]
    e1 = z.vertices[z.edge_vertex_ids[:, 1]]
    belt = belts(z)
    share = np.array(
        [4 if belt[s] is BeltClass.FOUR else 3 for s in range(len(z.segments))]
    )
    return e0, e1, z.edge_segment, share


def _quantized_keys(a0: np.ndarray, a1: np.ndarray) -> np.ndarray:
    q = np.rint(np.hstack([a0, a1]) * 1e9).astype(np.int64)
    return np.ascontiguousarray(q).view(np.dtype((np.void, 48))).ravel()


def _instance_block(
    t: np.ndarray, e0: np.ndarray, e1: np.ndarray, labels: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    p0 = (t[:, None, :] + e0[None]).reshape(-1, 3)
    p1 = (t[:, None, :] + e1[None]).reshape(-1, 3)
    lab = np.tile(labels, len(t))
    swap = (p0[:, 0] > p1[:, 0]) | (
        (p0[:, 0] == p1[:, 0])
        & ((p0[:, 1] > p1[:, 1]) | ((p0[:, 1] == p1[:, 1]) & (p0[:, 2] > p1[:, 2])))
    )
    a0 = np.where(swap[:, None], p1, p0)
    a1 = np.where(swap[:, None], p0, p1)
    return a0, a1, lab, _quantized_keys(a0, a1)


def _gather_edges(
    z: Zonotope, lat: Lattice, rmax: float, jobs: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Deduplicated edges of all translates near the ball.

    Returns endpoints of each unique edge, its observed multiplicity,
    its expected sharing count, and the translate count.
    """
    e0, e1, labels, share = _cell_edge_arrays(z)
    t = lat.points_in_ball(rmax)
    jobs = max(1, min(jobs, len(t)))
    if jobs == 1:
        blocks = [_instance_block(t, e0, e1, labels)]
    else:
        parts = np.array_split(t, jobs)
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            blocks = list(
                pool.map(lambda part: _instance_block(part, e0, e1, labels), parts)
            )
    a0 = np.concatenate([b[0] for b in blocks])
    a1 = np.concatenate([b[1] for b in blocks])
    lab = np.concatenate([b[2] for b in blocks])
    keys = np.concatenate([b[3] for b in blocks])
    _, first, counts = np.unique(keys, return_index=True, return_counts=True)
    return a0[first], a1[first], counts, share[lab[first]], np.array([len(t)])


def skeleton_density(
    z: Zonotope, lat: Lattice, radius: float, jobs: int = 1
) -> DensityEstimate:
    """Edge length of the tiling per unit ball volume at one radius.

    Two independent totals are formed: unique edges clipped to the ball
    and counted once, and per-cell edges weighted by 1/k with k the
    ball-interior sharing count.  They must agree to 1e-9; a mismatch
    would mean an edge is missing some of its cells.
    """
    if radius < 3.0 * z.diameter():
        raise RadiusTooSmall(
            f"radius {radius} below 3x cell diameter {3.0 * z.diameter():.6g}"
        )
    a0, a1, counts, share, ncells = _gather_edges(z, lat, radius + z.circumradius(), jobs)
    clip = _kernels.segment_ball_clip(a0, a1, radius)
    total = math.fsum(clip.tolist())
    weighted = math.fsum((clip * counts / share).tolist())
    if abs(total - weighted) > 1e-9 * max(1.0, total):
        raise GeometryError(
            f"dedup total {total!r} and weighted total {weighted!r} disagree"
        )
    active = clip > 0
    if active.any() and (counts[active] != share[active]).any():
        bad = int(np.abs(counts[active] - share[active]).max())
        raise GeometryError(f"edge multiplicity off by {bad} inside the ball")
    density = total / (4.0 / 3.0 * math.pi * radius**3)
    target = weighted_edge_functional(z, WeightPair(2.0, 1.0)) / z.volume()
    return DensityEstimate(radius, total, density, target, weighted, int(ncells[0]))


def collect_weighted_edges(z: Zonotope, lat: Lattice, radius: float) -> list[WeightedEdge]:
    """Materialized unique edges with 1/k weights, for small radii."""
    a0, a1, counts, share, _ = _gather_edges(z, lat, radius + z.circumradius(), 1)
    clip = _kernels.segment_ball_clip(a0, a1, radius)
    keep = clip > 0
    return [
        WeightedEdge((p, q), 1.0 / int(k), int(k))
        for p, q, k in zip(a0[keep], a1[keep], share[keep])
    ]


@dataclass(frozen=True)
class ConvergenceReport:
    rows: tuple[DensityEstimate, ...]

    @property
    def final_relative_error(self) -> float:
        return self.rows[-1].relative_error


def convergence_series(
    z: Zonotope, lat: Lattice, radii: list[float], jobs: int = 1
) -> ConvergenceReport:
    """Density estimates over ascending radii."""
    if list(radii) != sorted(radii):
        raise ValueError("radii must ascend")
    rows = tuple(skeleton_density(z, lat, r, jobs) for r in radii)
    return ConvergenceReport(rows)
