"""Agreement of the compiled and pure-numpy kernel implementations, and
the environment switch between them."""

import os
import subprocess
import sys
import textwrap

import numpy as np
import pytest

from mosaicdensity import _kernels as K

needs_numba = pytest.mark.skipif(not K.NUMBA_ENABLED, reason="numba disabled")


def _random_tetra_batch(n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    p = rng.uniform(-1.0, 1.0, size=(n, 4, 3))
    return np.ascontiguousarray(p - p.mean(axis=1, keepdims=True))


@needs_numba
class TestJitMatchesNumpy:
    def test_volume_poly(self):
        tau = np.random.default_rng(1).uniform(0.0, 2.0, size=(500, 6))
        a = K.volume_poly_many_numpy(tau)
        b = K.volume_poly_many_jit(tau)
        assert np.allclose(a, b, rtol=1e-14, atol=0)

    def test_grid_scan(self):
        for lam in (1.0, 2.5):
            va, ia = K.simplex_grid_scan_numpy(lam, 24, 1.0)
            vb, ib = K.simplex_grid_scan_jit(lam, 24, 1.0)
            assert va == vb
            assert (ia == ib).all()

    def test_pair_scalars(self):
        p = _random_tetra_batch(300, 2)
        ga, za, va = K.pair_scalars_many_numpy(p)
        gb, zb, vb = K.pair_scalars_many_jit(p)
        assert np.allclose(ga, gb, atol=1e-13)
        assert np.allclose(za, zb, atol=1e-13)
        assert np.allclose(va, vb, atol=1e-13)

    def test_type4_functional(self):
        p = _random_tetra_batch(300, 3)
        d = np.linalg.det(p[:, :3])
        p = p[np.abs(d) > 5e-2]
        beta = np.random.default_rng(4).uniform(0.1, 1.0, size=(len(p), 5))
        a = K.type4_functional_many_numpy(p, beta, 1.0, 0.8)
        b = K.type4_functional_many_jit(np.ascontiguousarray(p), beta, 1.0, 0.8)
        assert np.allclose(a, b, rtol=1e-12)

    def test_ball_clip(self):
        rng = np.random.default_rng(5)
        p0 = rng.uniform(-4.0, 4.0, size=(1000, 3))
        p1 = p0 + rng.uniform(-2.0, 2.0, size=(1000, 3))
        a = K.segment_ball_clip_numpy(p0, p1, 3.0)
        b = K.segment_ball_clip_jit(p0, p1, 3.0)
        assert np.allclose(a, b, atol=1e-12)

    def test_public_names_bind_to_jit(self):
        assert K.volume_poly_many is K.volume_poly_many_jit
        assert K.segment_ball_clip is K.segment_ball_clip_jit


class TestBallClipGeometry:
    def test_inside_segment_full_length(self):
        p0 = np.array([[0.0, 0.0, 0.0]])
        p1 = np.array([[1.0, 0.0, 0.0]])
        assert abs(K.segment_ball_clip(p0, p1, 5.0)[0] - 1.0) < 1e-14

    def test_outside_segment_zero(self):
        p0 = np.array([[10.0, 0.0, 0.0]])
        p1 = np.array([[11.0, 0.0, 0.0]])
        assert K.segment_ball_clip(p0, p1, 5.0)[0] == 0.0

    def test_chord_through_ball(self):
        p0 = np.array([[-10.0, 0.3, 0.0]])
        p1 = np.array([[10.0, 0.3, 0.0]])
        want = 2.0 * np.sqrt(2.0**2 - 0.3**2)
        assert abs(K.segment_ball_clip(p0, p1, 2.0)[0] - want) < 1e-12

    def test_degenerate_segment(self):
        p = np.array([[0.1, 0.2, 0.3]])
        assert K.segment_ball_clip(p, p, 2.0)[0] == 0.0


def test_env_flag_switches_to_numpy():
    code = textwrap.dedent(
        """
        import mosaicdensity._kernels as K
        assert not K.NUMBA_ENABLED
        assert K.volume_poly_many_jit is None
        assert K.volume_poly_many is K.volume_poly_many_numpy
        assert K.pair_scalars_many is K.pair_scalars_many_numpy
        assert K.segment_ball_clip is K.segment_ball_clip_numpy
        import mosaicdensity
        assert mosaicdensity.NUMBA_ENABLED is False
        import numpy as np
        tau = np.full((2, 6), 0.5)
        assert np.allclose(K.volume_poly_many(tau), 2.0)
        print("fallback ok")
        """
    )
    env = dict(os.environ, MOSAICDENSITY_NO_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True
    )
    assert out.returncode == 0, out.stderr
    assert "fallback ok" in out.stdout
