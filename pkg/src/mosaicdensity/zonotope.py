"""Zonotopes generated by few segments, their face structure and belts.

A body here is a Minkowski sum of at most six line segments in R^3,
centered at the origin.  The face complex is built combinatorially: every
facet normal comes from a coplanar class of generators, every facet is a
zonogon of the generators in its class, and every vertex is a subset sum
of generators.  Working with subsets instead of raw coordinates keeps the
incidence structure exact; floating point only enters when positions,
areas and normals are evaluated.

The parametrized family built from a centered frame of four vectors
(summing to zero, unit triple products) with six nonnegative coefficients
covers the five combinatorial types of space-filling polytopes: the
parallelepiped, the hexagonal prism, the rhombic dodecahedron, its
elongated variant and the truncated octahedron.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

Vec3 = np.ndarray

#: Unordered index pairs of a 4-element frame, in canonical order.
#: The complementary pair of ``PAIRS[k]`` is ``PAIRS[5 - k]``.
PAIRS: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

VECTOR_TOL = 1e-10
DET_TOL = 1e-12
COPLANAR_TOL = 1e-10


class GeometryError(ValueError):
    """Base class for all geometric input and construction errors."""


class NotCentered(GeometryError):
    """Frame vectors do not sum to zero within tolerance."""


class DegenerateFrame(GeometryError):
    """Some three frame vectors are linearly dependent."""


class FlatBody(GeometryError):
    """The nonzero segments do not span R^3."""


class ParallelSegments(GeometryError):
    """Two distinct nonzero segments are parallel; zones would be ambiguous."""


class BeltAnomaly(GeometryError):
    """A segment's zone has a size other than 4 or 6."""


class ConstructionError(GeometryError):
    """The face complex could not be assembled consistently."""


class ParallelohedronType(Enum):
    """Combinatorial type of the parametrized body, by zero pattern."""

    DEGENERATE = 0
    PARALLELEPIPED = 1
    HEXAGONAL_PRISM = 2
    RHOMBIC_DODECAHEDRON = 3
    ELONGATED_RHOMBIC_DODECAHEDRON = 4
    TRUNCATED_OCTAHEDRON = 5


class BeltClass(Enum):
    FOUR = 4
    SIX = 6


@dataclass(frozen=True)
class GeneratorSet:
    """Four vectors with zero sum and triple products of unit magnitude.

    Use :func:`validate_generators` to obtain a normalized instance; the
    constructor itself does not re-check the invariants.
    """

    vectors: np.ndarray  # shape (4, 3), det(v1, v2, v3) = +1

    def __post_init__(self) -> None:
        object.__setattr__(self, "vectors", np.asarray(self.vectors, dtype=np.float64))


@dataclass(frozen=True)
class BetaVector:
    """Six nonnegative coefficients ordered like :data:`PAIRS`."""

    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.shape != (6,):
            raise GeometryError("expected exactly six coefficients")
        if not np.isfinite(vals).all():
            raise GeometryError("coefficients must be finite")
        if (vals < 0).any():
            raise GeometryError("coefficients must be nonnegative")
        object.__setattr__(self, "values", vals)

    def zero_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(PAIRS[k] for k in range(6) if self.values[k] == 0.0)


@dataclass(frozen=True)
class WeightPair:
    """Edge weights (alpha6 for six-belts, alpha4 for four-belts)."""

    alpha6: float
    alpha4: float

    def __post_init__(self) -> None:
        if not (self.alpha6 > 0 and self.alpha4 > 0):
            raise GeometryError("weights must be positive")


@dataclass(frozen=True)
class Segment:
    """A generating segment: its vector and where it came from.

    ``generator_index`` is the frame pair (i, j) for parametrized bodies
    and a plain ordinal for directly constructed shapes.
    """

    direction: np.ndarray
    generator_index: tuple[int, int] | int

    def __post_init__(self) -> None:
        object.__setattr__(self, "direction", np.asarray(self.direction, dtype=np.float64))

    @property
    def length(self) -> float:
        return float(np.linalg.norm(self.direction))


@dataclass(frozen=True)
class Facet:
    vertex_ids: tuple[int, ...]  # CCW seen from outside
    normal: np.ndarray           # outward unit normal
    area: float
    segment_members: tuple[int, ...]  # indices into Zonotope.segments


@dataclass
class Zonotope:
    segments: list[Segment]
    vertices: np.ndarray            # (V, 3), centered at the origin
    edge_vertex_ids: np.ndarray     # (E, 2) int
    edge_segment: np.ndarray        # (E,) int, index into segments
    facets: list[Facet]

    def volume(self) -> float:
        """Volume by the divergence theorem over facet polygons."""
        total = 0.0
        for f in self.facets:
            total += f.area * float(self.vertices[f.vertex_ids[0]] @ f.normal)
        return total / 3.0

    def circumradius(self) -> float:
        return float(np.linalg.norm(self.vertices, axis=1).max())

    def diameter(self) -> float:
        # centered body: the farthest vertex pair is antipodal
        return 2.0 * self.circumradius()

    def edge_lengths(self) -> np.ndarray:
        d = self.vertices[self.edge_vertex_ids[:, 1]] - self.vertices[self.edge_vertex_ids[:, 0]]
        return np.linalg.norm(d, axis=1)

    def facet_planes(self) -> tuple[np.ndarray, np.ndarray]:
        """Outward normals (F, 3) and support offsets (F,) with n.x <= h."""
        normals = np.array([f.normal for f in self.facets])
        offsets = np.array(
            [float(self.vertices[f.vertex_ids[0]] @ f.normal) for f in self.facets]
        )
        return normals, offsets

    def contains(self, points: np.ndarray, tol: float = 1e-12) -> np.ndarray:
        normals, offsets = self.facet_planes()
        pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
        return (pts @ normals.T <= offsets + tol).all(axis=1)


def _det3(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> float:
    return float(
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def validate_generators(raw: Iterable[Iterable[float]]) -> GeneratorSet:
    """Normalize four frame vectors to the canonical scale and orientation.

    The input must sum to zero (tolerance 1e-10 per coordinate) and any
    three vectors must be linearly independent.  The result is rescaled so
    det(v1, v2, v3) = +1, swapping the first two vectors when the input
    orientation is negative.  Inputs already satisfying the determinant
    convention within 1e-12 are returned unchanged.
    """
    v = np.asarray(raw, dtype=np.float64)
    if v.shape != (4, 3) or not np.isfinite(v).all():
        raise GeometryError("expected four finite vectors in R^3")
    if np.abs(v.sum(axis=0)).max() > VECTOR_TOL:
        raise NotCentered("frame vectors must sum to zero")
    d = _det3(v[0], v[1], v[2])
    scale = np.abs(v).max()
    if scale == 0.0 or abs(d) <= DET_TOL * scale**3:
        raise DegenerateFrame("frame has a dependent triple")
    if d < 0:
        v = v[[1, 0, 2, 3]]
        d = -d
    if abs(d - 1.0) > DET_TOL:
        v = v * d ** (-1.0 / 3.0)
    for tri in combinations(range(4), 3):
        if abs(abs(_det3(*v[list(tri)])) - 1.0) > 1e-8:
            raise DegenerateFrame("triple products are not of unit magnitude")
    return GeneratorSet(v)


def segments_from_parameters(g: GeneratorSet, b: BetaVector) -> list[Segment]:
    """The six segments beta_ij (v_i x v_j), zero length allowed."""
    v = g.vectors
    return [
        Segment(b.values[k] * np.cross(v[i], v[j]), (i, j))
        for k, (i, j) in enumerate(PAIRS)
    ]


def classify_type(b: BetaVector) -> ParallelohedronType:
    """Combinatorial type from the zero pattern of the six coefficients.

    All positive: truncated octahedron.  One zero: elongated rhombic
    dodecahedron.  Two zeros on disjoint pairs: rhombic dodecahedron; on
    intersecting pairs: hexagonal prism.  Three zeros whose complementary
    positive pairs share no common frame index: parallelepiped.  Anything
    else does not span R^3.
    """
    zero = [PAIRS[k] for k in range(6) if b.values[k] == 0.0]
    nonzero = [PAIRS[k] for k in range(6) if b.values[k] != 0.0]
    if len(zero) == 0:
        return ParallelohedronType.TRUNCATED_OCTAHEDRON
    if len(zero) == 1:
        return ParallelohedronType.ELONGATED_RHOMBIC_DODECAHEDRON
    if len(zero) == 2:
        a, c = zero
        if set(a).isdisjoint(c):
            return ParallelohedronType.RHOMBIC_DODECAHEDRON
        return ParallelohedronType.HEXAGONAL_PRISM
    if len(zero) == 3:
        shared = set(nonzero[0])
        for p in nonzero[1:]:
            shared &= set(p)
        if not shared:
            return ParallelohedronType.PARALLELEPIPED
    return ParallelohedronType.DEGENERATE


def volume_polynomial(tau: Sequence[float]) -> float:
    """The 16-term cubic giving the volume of the parametrized body.

    For any valid frame, the body built from coefficients ``tau`` has
    volume exactly ``volume_polynomial(tau)``; it is symmetric under
    relabeling the frame and vanishes exactly on the degenerate patterns.
    """
    t = np.asarray(tau, dtype=np.float64)
    if t.shape != (6,):
        raise GeometryError("expected six coefficients")
    t12, t13, t14, t23, t24, t34 = t
    return float(
        t12 * t13 * t23
        + t12 * t14 * t24
        + t13 * t14 * t34
        + t23 * t24 * t34
        + (t12 + t34) * (t13 * t24 + t14 * t23)
        + (t13 + t24) * (t12 * t34 + t14 * t23)
        + (t14 + t23) * (t12 * t34 + t13 * t24)
    )


def _hull2d(pts: np.ndarray) -> list[int]:
    """Indices of the convex hull of 2-D points, CCW, strict corners only."""
    spread = float(np.ptp(pts, axis=0).max())
    if spread <= 0.0:
        raise ConstructionError("degenerate zonogon projection")
    turn_eps = 1e-13 * spread * spread
    dup_eps = 1e-12 * spread
    order = sorted(range(len(pts)), key=lambda i: (pts[i][0], pts[i][1]))

    def chain(idx: list[int]) -> list[int]:
        out: list[int] = []
        for i in idx:
            if out and abs(pts[i][0] - pts[out[-1]][0]) <= dup_eps and abs(
                pts[i][1] - pts[out[-1]][1]
            ) <= dup_eps:
                continue
            while len(out) >= 2:
                o, a = pts[out[-2]], pts[out[-1]]
                cross = (a[0] - o[0]) * (pts[i][1] - o[1]) - (a[1] - o[1]) * (
                    pts[i][0] - o[0]
                )
                if cross <= turn_eps:
                    out.pop()
                else:
                    break
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(order[::-1])
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise ConstructionError("zonogon hull collapsed")
    return hull


def _as_segments(segments: Iterable[Segment] | np.ndarray) -> list[Segment]:
    out: list[Segment] = []
    for k, s in enumerate(segments):
        if isinstance(s, Segment):
            out.append(s)
        else:
            out.append(Segment(np.asarray(s, dtype=np.float64), k))
    if len(out) > 6:
        raise GeometryError("at most six segments are supported")
    return out


def build_zonotope(
    segments: Iterable[Segment] | np.ndarray, *, tol: float = COPLANAR_TOL
) -> Zonotope:
    """Assemble the face complex of the Minkowski sum of the segments.

    Zero-length segments are dropped.  The remaining ones must span R^3
    (:class:`FlatBody` otherwise) and be pairwise non-parallel
    (:class:`ParallelSegments`).  Facets are found as coplanar classes of
    segments at relative tolerance ``tol``; vertices are subset sums,
    recentered so the body is symmetric about the origin.  Each edge is a
    translate of exactly one segment and carries that segment's index.
    """
    all_segs = _as_segments(segments)
    segs = [s for s in all_segs if s.length > 0.0]
    k = len(segs)
    gens = np.array([s.direction for s in segs]).reshape(k, 3)
    norms = np.linalg.norm(gens, axis=1)
    if k < 3 or np.linalg.matrix_rank(gens, tol=1e-12 * max(1.0, norms.max())) < 3:
        raise FlatBody("nonzero segments do not span R^3")
    for i, j in combinations(range(k), 2):
        if np.linalg.norm(np.cross(gens[i], gens[j])) <= tol * norms[i] * norms[j]:
            raise ParallelSegments(f"segments {i} and {j} are parallel")

    # Coplanar classes: one per facet-normal direction.
    classes: dict[tuple[int, ...], np.ndarray] = {}
    for i, j in combinations(range(k), 2):
        n = np.cross(gens[i], gens[j])
        n /= np.linalg.norm(n)
        members = tuple(m for m in range(k) if abs(gens[m] @ n) <= tol * norms[m])
        if members in classes:
            if abs(abs(classes[members] @ n) - 1.0) > 1e-9:
                raise ConstructionError("inconsistent coplanar classes")
        else:
            if n[np.argmax(np.abs(n))] < 0:
                n = -n
            classes[members] = n

    center = gens.sum(axis=0) / 2.0
    facet_raw: list[tuple[np.ndarray, list[frozenset[int]], tuple[int, ...]]] = []
    for members, n0 in classes.items():
        for sign in (1.0, -1.0):
            n = sign * n0
            base = frozenset(m for m in range(k) if gens[m] @ n > tol * norms[m])
            # zonogon of the class, projected on the facet plane
            e1 = gens[members[0]] / norms[members[0]]
            e1 = e1 - (e1 @ n) * n
            e1 /= np.linalg.norm(e1)
            e2 = np.cross(n, e1)
            pts = []
            subs = []
            for r in range(len(members) + 1):
                for chosen in combinations(members, r):
                    s = gens[list(chosen)].sum(axis=0) if chosen else np.zeros(3)
                    pts.append((float(s @ e1), float(s @ e2)))
                    subs.append(frozenset(chosen))
            cycle_idx = _hull2d(np.asarray(pts))
            cycle = [base | subs[h] for h in cycle_idx]
            facet_raw.append((n, cycle, members))

    vertex_id: dict[frozenset[int], int] = {}
    for _, cycle, _ in facet_raw:
        for s in cycle:
            if s not in vertex_id:
                vertex_id[s] = len(vertex_id)
    verts = np.empty((len(vertex_id), 3))
    for s, i in vertex_id.items():
        verts[i] = gens[sorted(s)].sum(axis=0) - center if s else -center

    edge_label: dict[tuple[int, int], int] = {}
    edge_facets: dict[tuple[int, int], int] = {}
    for _, cycle, _ in facet_raw:
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            diff = a ^ b
            if len(diff) != 1:
                raise ConstructionError("facet cycle step is not a single segment")
            u, v = vertex_id[a], vertex_id[b]
            key = (u, v) if u < v else (v, u)
            lab = next(iter(diff))
            if key in edge_label and edge_label[key] != lab:
                raise ConstructionError("conflicting edge labels")
            edge_label[key] = lab
            edge_facets[key] = edge_facets.get(key, 0) + 1
    if any(c != 2 for c in edge_facets.values()):
        raise ConstructionError("an edge is not shared by exactly two facets")

    facets: list[Facet] = []
    for n, cycle, members in facet_raw:
        ids = [vertex_id[s] for s in cycle]
        poly = verts[ids]
        signed = float(np.cross(poly - poly[0], np.roll(poly, -1, axis=0) - poly[0]).sum(axis=0) @ n) / 2.0
        if signed < 0:
            ids = ids[::-1]
        facets.append(Facet(tuple(ids), n, abs(signed), members))

    n_v, n_e, n_f = len(verts), len(edge_label), len(facets)
    if n_v - n_e + n_f != 2:
        raise ConstructionError(f"Euler relation failed: V={n_v} E={n_e} F={n_f}")

    ekeys = sorted(edge_label)
    return Zonotope(
        segments=segs,
        vertices=verts,
        edge_vertex_ids=np.array(ekeys, dtype=np.int64).reshape(n_e, 2),
        edge_segment=np.array([edge_label[e] for e in ekeys], dtype=np.int64),
        facets=facets,
    )


def build_from_parameters(g: GeneratorSet, b: BetaVector) -> Zonotope:
    """Convenience: segments from (g, b), zero-length entries dropped."""
    return build_zonotope(segments_from_parameters(g, b))


def belts(z: Zonotope) -> list[BeltClass]:
    """Zone size of each segment: the facets containing a translate of it.

    A facet belongs to the zone of a segment exactly when one of its edges
    is labeled with that segment.  Every zone of a space-filling body of
    this family has size 4 or 6; anything else raises :class:`BeltAnomaly`.
    """
    label_of = {
        (int(u), int(v)): int(g)
        for (u, v), g in zip(z.edge_vertex_ids, z.edge_segment)
    }
    counts = [0] * len(z.segments)
    for f in z.facets:
        ids = f.vertex_ids
        labels = {
            label_of[(a, b) if a < b else (b, a)]
            for a, b in zip(ids, ids[1:] + ids[:1])
        }
        for lab in labels:
            counts[lab] += 1
    out = []
    for idx, c in enumerate(counts):
        if c == 4:
            out.append(BeltClass.FOUR)
        elif c == 6:
            out.append(BeltClass.SIX)
        else:
            raise BeltAnomaly(f"segment {idx} lies in {c} facets")
    return out


def weighted_edge_functional(z: Zonotope, m: WeightPair) -> float:
    """Sum of segment lengths weighted by belt class (alpha4 or alpha6)."""
    cls = belts(z)
    total = 0.0
    for s, c in zip(z.segments, cls):
        total += (m.alpha4 if c is BeltClass.FOUR else m.alpha6) * s.length
    return total


def total_edge_length(z: Zonotope) -> float:
    """Sum of all edge lengths, computed from the vertex coordinates."""
    return float(z.edge_lengths().sum())


def mean_width_estimate(z: Zonotope, n_polar: int = 256, n_azimuth: int = 512) -> float:
    """Mean width by spherical quadrature of the vertex support function.

    Gauss-Legendre nodes in the polar cosine and a uniform azimuth grid;
    independent of the segment representation.
    """
    from scipy.special import roots_legendre

    x, w = roots_legendre(n_polar)
    phi = (np.arange(n_azimuth) + 0.5) * (2.0 * np.pi / n_azimuth)
    st = np.sqrt(1.0 - x**2)
    dirs = np.stack(
        [
            np.outer(st, np.cos(phi)).ravel(),
            np.outer(st, np.sin(phi)).ravel(),
            np.repeat(x, n_azimuth),
        ],
        axis=1,
    )
    h = (dirs @ z.vertices.T).max(axis=1)
    weights = np.repeat(w, n_azimuth) * (2.0 * np.pi / n_azimuth)
    # mean width = (1 / 2 pi) * integral of the support function over S^2
    return float((h * weights).sum() / (2.0 * np.pi))


# ---------------------------------------------------------------------------
# canonical shapes


def cube(edge: float = 1.0) -> Zonotope:
    return build_zonotope(np.eye(3) * edge)


def hexagonal_prism(base_edge: float, height: float) -> Zonotope:
    """Right prism over a regular hexagon: three base segments at 60 degrees
    plus one lateral segment."""
    a, b = base_edge, height
    gens = np.array(
        [
            (a, 0.0, 0.0),
            (a / 2.0, a * math.sqrt(3.0) / 2.0, 0.0),
            (-a / 2.0, a * math.sqrt(3.0) / 2.0, 0.0),
            (0.0, 0.0, b),
        ]
    )
    return build_zonotope(gens)


def rhombic_dodecahedron(edge: float = 1.0) -> Zonotope:
    """Zonotope of the four main diagonals of a cube, all of length ``edge``."""
    dirs = np.array([(1, 1, 1), (1, 1, -1), (1, -1, 1), (-1, 1, 1)], dtype=np.float64)
    return build_zonotope(dirs / math.sqrt(3.0) * edge)


def elongated_rhombic_dodecahedron(edge: float = 1.0, elongation: float | None = None) -> Zonotope:
    """The rhombic dodecahedron's four diagonals plus an axial segment."""
    if elongation is None:
        elongation = edge
    dirs = np.array([(1, 1, 1), (1, 1, -1), (1, -1, 1), (-1, 1, 1)], dtype=np.float64)
    gens = np.vstack([dirs / math.sqrt(3.0) * edge, [(0.0, 0.0, elongation)]])
    return build_zonotope(gens)


def truncated_octahedron(edge: float = 1.0) -> Zonotope:
    """Zonotope of the six segments joining midpoints of opposite cube edges."""
    dirs = np.array(
        [(1, 1, 0), (1, -1, 0), (1, 0, 1), (1, 0, -1), (0, 1, 1), (0, 1, -1)],
        dtype=np.float64,
    )
    return build_zonotope(dirs / np.linalg.norm(dirs, axis=1)[:, None] * edge)


def to_json(z: Zonotope, beta: BetaVector | None = None) -> dict:
    """Versioned plain-JSON document for a built body."""
    return {
        "schema": "1",
        "generators": [s.direction.tolist() for s in z.segments],
        "generator_index": [
            list(s.generator_index) if isinstance(s.generator_index, tuple) else s.generator_index
            for s in z.segments
        ],
        "beta": beta.values.tolist() if beta is not None else None,
        "vertices": z.vertices.tolist(),
        "edges": [
            [int(u), int(v), int(g)]
            for (u, v), g in zip(z.edge_vertex_ids, z.edge_segment)
        ],
        "facets": [
            {
                "vertices": list(map(int, f.vertex_ids)),
                "normal": f.normal.tolist(),
                "area": f.area,
            }
            for f in z.facets
        ],
    }


def from_json(doc: dict | str) -> Zonotope:
    """Rebuild a body from :func:`to_json` output and cross-check counts."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    if doc.get("schema") != "1":
        raise GeometryError("unsupported document schema")
    gens = np.asarray(doc["generators"], dtype=np.float64)
    labels = doc.get("generator_index")
    segs = []
    for k, gvec in enumerate(gens):
        lab = labels[k] if labels is not None else k
        if isinstance(lab, list):
            lab = tuple(lab)
        segs.append(Segment(gvec, lab))
    z = build_zonotope(segs)
    if len(z.vertices) != len(doc["vertices"]) or len(z.edge_vertex_ids) != len(doc["edges"]):
        raise ConstructionError("stored complex does not match the rebuilt body")
    return z
