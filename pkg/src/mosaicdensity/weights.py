"""Per-type minima of the weighted edge functional and the overall winner.

For a weight pair m = (alpha6, alpha4) the functional w_m(P) sums segment
lengths weighted by belt class.  Over unit-volume bodies of each
parallelohedron type the minimum has a closed form (exact for types 1,
2, 3 and 5; a lower bound for type 4), and the overall minimizer as a
function of alpha4/alpha6 switches from the cube to the hexagonal prism
at sqrt(3)/2 and from the prism to the truncated octahedron at
(2/3)^(1/4).  This module also provides the isotropic-position fixed
point used in the type-5 argument and the stationarity formulas on the
type-4 stratum.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .tetra import CenteredTetrahedron, pair_invariants
from .zonotope import (
    BetaVector,
    ParallelohedronType,
    WeightPair,
    Zonotope,
    cube,
    hexagonal_prism,
    rhombic_dodecahedron,
    truncated_octahedron,
)

# winner switches at these alpha4/alpha6 ratios
CUBE_PRISM_RATIO = math.sqrt(3.0) / 2.0
PRISM_OCTA_RATIO = (2.0 / 3.0) ** 0.25

_TIE_RTOL = 1e-12


class NotOrthogonal(ValueError):
    """First two frame vectors fail the required orthogonality."""


class NegativeBeta(ValueError):
    """A stationarity formula produced a negative coefficient."""


class NoConvergence(RuntimeError):
    """Isotropic iteration failed to reach tolerance."""


@dataclass(frozen=True)
class TypeMinimum:
    """Minimum of w_m over unit-volume bodies of one type.

    ``is_exact`` is False only for type 4, whose exact minimum is open;
    there ``value`` is a proven lower bound and ``optimal_shape`` is None.
    """

    type_tag: ParallelohedronType
    value: float
    is_exact: bool
    optimal_shape: dict | None
    note: str | None = None


class Winner(Enum):
    CUBE = "Cube"
    HEX_PRISM = "HexPrism"
    TRUNC_OCTA = "TruncOcta"
    TIE_CUBE_PRISM = "TieCubePrism"
    TIE_PRISM_OCTA = "TiePrismOcta"


@dataclass(frozen=True)
class OptimalAnswer:
    winner: Winner
    value: float


def _prism_edges(m: WeightPair) -> tuple[float, float]:
    a6, a4 = m.alpha6, m.alpha4
    base = 2.0 ** (2.0 / 3.0) * a6 ** (1.0 / 3.0) / (3.0 ** (5.0 / 6.0) * a4 ** (1.0 / 3.0))
    lateral = 3.0 ** (1.0 / 6.0) * a4 ** (2.0 / 3.0) / (2.0 ** (1.0 / 3.0) * a6 ** (2.0 / 3.0))
    return base, lateral


def type_minimum(i: int, m: WeightPair) -> TypeMinimum:
    """Closed-form minimum of w_m at unit volume for one type."""
    a6, a4 = m.alpha6, m.alpha4
    if i == 1:
        return TypeMinimum(
            ParallelohedronType.PARALLELEPIPED, 3.0 * a4, True, {"shape": "cube", "edge": 1.0}
        )
    if i == 2:
        base, lateral = _prism_edges(m)
        value = 3.0 ** (7.0 / 6.0) / 2.0 ** (1.0 / 3.0) * a4 ** (2.0 / 3.0) * a6 ** (1.0 / 3.0)
        return TypeMinimum(
            ParallelohedronType.HEXAGONAL_PRISM,
            value,
            True,
            {"shape": "hexagonal_prism", "base_edge": base, "height": lateral},
        )
    if i == 3:
        edge = math.sqrt(3.0) / 2.0 ** (4.0 / 3.0)
        return TypeMinimum(
            ParallelohedronType.RHOMBIC_DODECAHEDRON,
            2.0 ** (2.0 / 3.0) * math.sqrt(3.0) * a6,
            True,
            {"shape": "rhombic_dodecahedron", "edge": edge},
        )
    if i == 4:
        type5 = 3.0 * a6 / 2.0 ** (1.0 / 6.0)
        if a4 <= a6:
            value = 3.0 * a4 ** (1.0 / 3.0) * (4.0 * a6**2 - a4**2) ** (1.0 / 3.0) / 2.0 ** (2.0 / 3.0)
            note = "lower bound; the attaining shape is not known"
        else:
            value = type5
            note = "exceeds the type-5 minimum; shown value is that minimum"
        return TypeMinimum(ParallelohedronType.ELONGATED_RHOMBIC_DODECAHEDRON, value, False, None, note)
    if i == 5:
        edge = 2.0 ** (-7.0 / 6.0)
        return TypeMinimum(
            ParallelohedronType.TRUNCATED_OCTAHEDRON,
            3.0 * a6 / 2.0 ** (1.0 / 6.0),
            True,
            {"shape": "truncated_octahedron", "edge": edge},
        )
    raise ValueError(f"type index must be 1..5, got {i}")


def optimal_shape_zonotope(i: int, m: WeightPair) -> Zonotope | None:
    """Build the unit-volume minimizer of type i, or None when unknown."""
    tm = type_minimum(i, m)
    if tm.optimal_shape is None:
        return None
    p = tm.optimal_shape
    if p["shape"] == "cube":
        return cube(p["edge"])
    if p["shape"] == "hexagonal_prism":
        return hexagonal_prism(p["base_edge"], p["height"])
    if p["shape"] == "rhombic_dodecahedron":
        return rhombic_dodecahedron(p["edge"])
    return truncated_octahedron(p["edge"])


def classify_optimal(m: WeightPair) -> OptimalAnswer:
    """Overall minimizer of w_m over all five types, with tie detection.

    Ratios within 1e-12 (relative) of a threshold report a tie; the two
    tied shapes share the returned value there.
    """
    ratio = m.alpha4 / m.alpha6
    cube_val = 3.0 * m.alpha4
    prism_val = type_minimum(2, m).value
    octa_val = 3.0 * m.alpha6 / 2.0 ** (1.0 / 6.0)
    if abs(ratio - CUBE_PRISM_RATIO) <= _TIE_RTOL * CUBE_PRISM_RATIO:
        return OptimalAnswer(Winner.TIE_CUBE_PRISM, cube_val)
    if ratio < CUBE_PRISM_RATIO:
        return OptimalAnswer(Winner.CUBE, cube_val)
    if abs(ratio - PRISM_OCTA_RATIO) <= _TIE_RTOL * PRISM_OCTA_RATIO:
        return OptimalAnswer(Winner.TIE_PRISM_OCTA, octa_val)
    if ratio < PRISM_OCTA_RATIO:
        return OptimalAnswer(Winner.HEX_PRISM, prism_val)
    return OptimalAnswer(Winner.TRUNC_OCTA, octa_val)


@dataclass(frozen=True)
class FacetMeasure:
    """Outer unit facet normals with their areas.

    Valid measures satisfy the closure condition sum(F_i u_i) = 0 and
    the normals span all of space.
    """

    normals: np.ndarray  # (k, 3), unit rows
    areas: np.ndarray    # (k,), positive

    def __post_init__(self) -> None:
        u = np.asarray(self.normals, dtype=np.float64)
        f = np.asarray(self.areas, dtype=np.float64)
        if u.ndim != 2 or u.shape[1] != 3 or f.shape != (u.shape[0],):
            raise ValueError("normals must be (k, 3) with matching areas")
        if (f <= 0).any():
            raise ValueError("areas must be positive")
        ln = np.linalg.norm(u, axis=1)
        if np.abs(ln - 1.0).max() > 1e-9:
            raise ValueError("normals must be unit vectors")
        surf = float(f.sum())
        if np.linalg.norm(f @ u) > 1e-9 * surf:
            raise ValueError("facet measure is not closed (sum F_i u_i != 0)")
        if np.linalg.matrix_rank(u, tol=1e-9) < 3:
            raise ValueError("normals do not span space")
        object.__setattr__(self, "normals", u)
        object.__setattr__(self, "areas", f)

    @classmethod
    def from_zonotope(cls, z: Zonotope) -> "FacetMeasure":
        u = np.array([f.normal for f in z.facets])
        a = np.array([f.area for f in z.facets])
        return cls(u, a)

    @property
    def surface_area(self) -> float:
        return float(self.areas.sum())

    def isotropy_residual(self) -> tuple[np.ndarray, float]:
        """Second-moment matrix M and max-abs deviation of M from identity."""
        u, f = self.normals, self.areas
        mat = 3.0 * (f[:, None, None] * u[:, :, None] * u[:, None, :]).sum(axis=0)
        mat /= f.sum()
        return mat, float(np.abs(mat - np.eye(3)).max())

    def transformed(self, a: np.ndarray) -> "FacetMeasure":
        """Measure of the body mapped by the volume-preserving matrix a."""
        raw = self.normals @ np.linalg.inv(a)
        ln = np.linalg.norm(raw, axis=1)
        return FacetMeasure(raw / ln[:, None], self.areas * ln)


@dataclass(frozen=True)
class IsotropicResult:
    matrix: np.ndarray  # (3, 3), determinant 1
    iterations: int
    residual: float


def isotropic_position(
    fm: FacetMeasure, tol: float = 1e-8, max_iter: int = 200
) -> IsotropicResult:
    """Volume-preserving map bringing the facet measure to isotropy.

    Fixed point: the body is repeatedly mapped by the determinant-1
    square root of its second-moment matrix; normals and areas transform
    accordingly and the hull itself is never rebuilt.
    """
    u = fm.normals.copy()
    f = fm.areas.copy()
    acc = np.eye(3)
    for it in range(max_iter):
        mat = 3.0 * (f[:, None, None] * u[:, :, None] * u[:, None, :]).sum(axis=0) / f.sum()
        res = float(np.abs(mat - np.eye(3)).max())
        if res <= tol:
            acc = acc / np.linalg.det(acc) ** (1.0 / 3.0)
            return IsotropicResult(acc, it, res)
        w, q = np.linalg.eigh(mat)
        if w.min() <= 0:
            raise NoConvergence("second-moment matrix lost positive definiteness")
        s = (q * np.sqrt(w)) @ q.T
        s /= np.linalg.det(s) ** (1.0 / 3.0)
        acc = s @ acc
        raw = u @ np.linalg.inv(s)  # s is symmetric, so this is s^{-T} applied to rows
        ln = np.linalg.norm(raw, axis=1)
        f = f * ln
        u = raw / ln[:, None]
    raise NoConvergence(f"no isotropic position within {max_iter} iterations")


def stationary_betas_type4(t: CenteredTetrahedron, m: WeightPair) -> BetaVector:
    """Stationary coefficients of w_m on the type-4 stratum.

    Requires a frame-normalized tetrahedron (triple product 1, volume
    2/3) whose first two vertices are orthogonal.  The last coefficient
    is pinned to zero; the five active ones come from the complementary
    dot products scaled by the belt weight of their segment.
    """
    p = t.vertices
    if abs(t.triple_product - 1.0) > 1e-8:
        raise ValueError("tetrahedron must be normalized to triple product 1")
    if abs(float(p[0] @ p[1])) > 1e-8:
        raise NotOrthogonal(f"<v1,v2> = {float(p[0] @ p[1]):.3e}, expected 0")
    gamma = pair_invariants(t).neg_opposite_dot
    if gamma[:5].min() < 0:
        raise NegativeBeta("a required complementary dot product has the wrong sign")
    pairs = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3))
    beta = np.zeros(6)
    for k, (i, j) in enumerate(pairs):
        weight = m.alpha4 if k == 0 else m.alpha6
        beta[k] = gamma[k] * float(np.linalg.norm(np.cross(p[i], p[j]))) / (3.0 * weight)
    return BetaVector(beta)


@dataclass(frozen=True)
class Type4SweepReport:
    samples: int
    min_observed: float
    bound: float
    type5_value: float

    @property
    def respects_bound(self) -> bool:
        return self.min_observed >= self.bound - 1e-9


def _sweep_worker(seed_seq: np.random.SeedSequence, quota: int, a6: float, a4: float) -> float:
    rng = np.random.default_rng(seed_seq)
    best = math.inf
    done = 0
    while done < quota:
        n = min(2048, quota - done)
        p = rng.uniform(-1.0, 1.0, size=(n, 4, 3))
        p -= p.mean(axis=1, keepdims=True)
        d = np.linalg.det(p[:, :3])
        keep = np.abs(d) > 5e-2
        p, d = p[keep], d[keep]
        if len(p) == 0:  # a whole tail batch can be slivers; redraw
            continue
        neg = d < 0
        p[neg] = p[neg][:, [1, 0, 2, 3]]
        p *= np.abs(d)[:, None, None] ** (-1.0 / 3.0)
        beta = 1.0 - rng.random(size=(len(p), 5))  # uniform on (0, 1]
        vals = _kernels.type4_functional_many(np.ascontiguousarray(p), beta, a6, a4)
        best = min(best, float(vals.min()))
        done += len(p)
    return best


def type4_sweep(
    m: WeightPair, samples: int, seed: int = 0, jobs: int = 1
) -> Type4SweepReport:
    """Random search over type-4 bodies versus the closed-form lower bound.

    Samples are split across ``jobs`` workers with independent spawned
    streams and a final min-reduction, so results do not depend on
    scheduling.
    """
    if samples < 100:
        raise ValueError("need at least 100 samples")
    jobs = max(1, min(int(jobs), samples))
    quotas = [samples // jobs + (1 if k < samples % jobs else 0) for k in range(jobs)]
    seqs = np.random.SeedSequence(seed).spawn(jobs)
    if jobs == 1:
        best = _sweep_worker(seqs[0], quotas[0], m.alpha6, m.alpha4)
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futs = [
                pool.submit(_sweep_worker, sq, q, m.alpha6, m.alpha4)
                for sq, q in zip(seqs, quotas)
            ]
            best = min(f.result() for f in futs)
    return Type4SweepReport(samples, best, type_minimum(4, m).value, type_minimum(5, m).value)


def figure_curves(alpha4_values: np.ndarray, alpha6: float = 1.0) -> tuple[list[str], np.ndarray]:
    """Per-type minima as functions of alpha4 at fixed alpha6.

    Returns a header and one row per alpha4 with the five type values
    (the type-4 column is the lower bound, switching to the type-5 value
    once alpha4 exceeds alpha6).
    """
    header = ["alpha4", "type1", "type2", "type3", "type4_bound", "type5"]
    rows = []
    for a4 in np.asarray(alpha4_values, dtype=np.float64):
        if a4 <= 0:
            raise ValueError("alpha4 grid must be positive")
        m = WeightPair(alpha6, float(a4))
        rows.append([a4] + [type_minimum(i, m).value for i in range(1, 6)])
    return header, np.array(rows)
