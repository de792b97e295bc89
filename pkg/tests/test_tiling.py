"""Tiling lattices, validation witnesses, and skeleton density."""

import math

import numpy as np
import pytest

from mosaicdensity import tiling as TL
from mosaicdensity.zonotope import GeometryError, cube


class TestLattice:
    def test_validation(self):
        with pytest.raises(ValueError):
            TL.Lattice(np.zeros((2, 3)))
        with pytest.raises(ValueError):
            TL.Lattice(np.array([[1.0, 0, 0], [2.0, 0, 0], [0, 0, 1.0]]))
        assert abs(TL.Lattice(np.eye(3) * 2.0).covolume - 8.0) < 1e-12

    def test_points_in_ball_integer_lattice(self):
        lat = TL.Lattice(np.eye(3))
        pts = lat.points_in_ball(2.5)
        norms = np.linalg.norm(pts, axis=1)
        assert (norms <= 2.5).all()
        # brute-force count over the integer cube
        grid = np.array(
            [
                (i, j, k)
                for i in range(-3, 4)
                for j in range(-3, 4)
                for k in range(-3, 4)
                if i * i + j * j + k * k <= 2.5**2
            ]
        )
        assert len(pts) == len(grid)
        assert (norms == 0).sum() == 1

    def test_points_in_ball_skewed(self):
        lat = TL.Lattice(np.array([[1.0, 0.9, 0.0], [0.0, 1.0, 0.8], [0.0, 0.0, 1.0]]))
        pts = lat.points_in_ball(3.0)
        assert (np.linalg.norm(pts, axis=1) <= 3.0).all()
        # closure under negation
        keys = {tuple(np.round(p, 9)) for p in pts}
        assert all(tuple(np.round(-p, 9)) in keys for p in pts)


class TestLatticeSearch:
    def test_all_canonical_shapes(self, unit_shapes):
        for name, z in unit_shapes.items():
            lat = TL.lattice_from_parallelohedron(z)
            assert abs(lat.covolume - z.volume()) <= 1e-9, name

    def test_cube_gives_unit_lattice(self):
        lat = TL.lattice_from_parallelohedron(cube())
        assert abs(lat.covolume - 1.0) <= 1e-12
        # rows are signed unit vectors in some order
        assert np.allclose(np.abs(lat.basis) @ np.ones(3), np.ones(3))


class TestValidateTiling:
    def test_cube_passes(self):
        rep = TL.validate_tiling(cube(), TL.Lattice(np.eye(3)), samples=200_000)
        assert rep.covering_fraction == 1.0
        assert abs(rep.determinant - 1.0) < 1e-12
        assert abs(rep.cell_volume - 1.0) < 1e-12
        assert rep.translates_checked > 0
        assert rep.covering_samples == 200_000

    def test_overlap_witness(self):
        with pytest.raises(TL.Overlap) as exc:
            TL.validate_tiling(cube(), TL.Lattice(np.eye(3) * 0.9), samples=1000)
        w = exc.value.witness
        assert w.shape == (3,)
        # witness is interior to the cell
        assert np.abs(w).max() < 0.5

    def test_gap_witness(self):
        with pytest.raises(TL.Gap) as exc:
            TL.validate_tiling(cube(), TL.Lattice(np.eye(3) * 1.1), samples=50_000)
        assert exc.value.witness.shape == (3,)

    def test_truncated_octahedron_passes(self, unit_shapes):
        z = unit_shapes["truncocta"]
        lat = TL.lattice_from_parallelohedron(z)
        rep = TL.validate_tiling(z, lat, samples=200_000)
        assert rep.covering_fraction == 1.0


class TestSkeletonDensity:
    def test_radius_floor(self, unit_shapes):
        z = unit_shapes["cube"]
        with pytest.raises(TL.RadiusTooSmall):
            TL.skeleton_density(z, TL.Lattice(np.eye(3)), 2.0)

    def test_cube_converges(self):
        est = TL.skeleton_density(cube(), TL.Lattice(np.eye(3)), 10.0)
        assert est.target == 3.0
        assert est.relative_error <= 0.05
        assert est.skeleton_length > 0
        assert abs(est.weighted_length - est.skeleton_length) <= 1e-9 * est.skeleton_length
        assert est.density == est.skeleton_length / (4.0 / 3.0 * math.pi * 1000.0)

    def test_rhombic_converges(self, unit_shapes):
        z = unit_shapes["rhombic"]
        lat = TL.lattice_from_parallelohedron(z)
        est = TL.skeleton_density(z, lat, 10.0)
        assert est.relative_error <= 0.05

    def test_jobs_do_not_change_result(self, unit_shapes):
        z = unit_shapes["hexprism"]
        lat = TL.lattice_from_parallelohedron(z)
        one = TL.skeleton_density(z, lat, 9.0, jobs=1)
        many = TL.skeleton_density(z, lat, 9.0, jobs=3)
        assert one.skeleton_length == many.skeleton_length
        assert one.cells == many.cells


class TestWeightedEdges:
    def test_cube_edges_shared_by_four(self):
        edges = TL.collect_weighted_edges(cube(), TL.Lattice(np.eye(3)), 6.0)
        assert len(edges) > 0
        assert {e.cells for e in edges} == {4}
        assert all(e.weight == 0.25 for e in edges)

    def test_truncocta_edges_shared_by_three(self, unit_shapes):
        z = unit_shapes["truncocta"]
        lat = TL.lattice_from_parallelohedron(z)
        edges = TL.collect_weighted_edges(z, lat, 5.0)
        assert {e.cells for e in edges} == {3}

    def test_elongated_has_both_classes(self, unit_shapes):
        z = unit_shapes["elongated"]
        lat = TL.lattice_from_parallelohedron(z)
        edges = TL.collect_weighted_edges(z, lat, 6.0)
        assert {e.cells for e in edges} == {3, 4}


class TestConvergence:
    def test_series_and_ordering(self, unit_shapes):
        z = unit_shapes["cube"]
        lat = TL.Lattice(np.eye(3))
        rep = TL.convergence_series(z, lat, [6.0, 9.0, 12.0])
        assert len(rep.rows) == 3
        assert rep.final_relative_error <= 0.03
        assert rep.final_relative_error == rep.rows[-1].relative_error
        with pytest.raises(ValueError):
            TL.convergence_series(z, lat, [9.0, 6.0])
