import os
import subprocess
import sys

import numpy as np
import pytest

from holderopt import _kernels as k

pytestmark = pytest.mark.skipif(not k.HAS_NUMBA, reason="numba not installed")


@pytest.fixture
def rng():
    return np.random.default_rng(42)


def test_distances_parity(rng):
    P, C = rng.random((300, 3)), rng.random((4, 3))
    assert np.allclose(k.distances_to_centers_numba(P, C), k.distances_to_centers_numpy(P, C), rtol=1e-14)


def test_overlap_parity(rng):
    centers = rng.random((150, 2))
    edges = rng.random((150, 2)) * 0.05
    assert k.count_overlapping_pairs_numba(centers, edges, 1e-9) == k.count_overlapping_pairs_numpy(centers, edges, 1e-9)


def test_overlap_touching_boxes_do_not_count():
    centers = np.array([[0.25, 0.5], [0.75, 0.5]])
    edges = np.array([[0.25, 0.5], [0.25, 0.5]])
    assert k.count_overlapping_pairs_numba(centers, edges, 1e-9) == 0
    assert k.count_overlapping_pairs_numpy(centers, edges, 1e-9) == 0


def test_holder_ratio_parity(rng):
    x, y = rng.random((500, 2)), rng.random((500, 2))
    fx, fy = np.sin(x).sum(1), np.sin(y).sum(1)
    y[0] = x[0]
    fy[0] = fx[0] + 1.0  # coincident pair must be ignored
    a = k.holder_ratio_max_numba(x, y, fx, fy, 0.5)
    b = k.holder_ratio_max_numpy(x, y, fx, fy, 0.5)
    assert a == pytest.approx(b, rel=1e-13)


def test_prefix_sums_parity(rng):
    v = rng.random(1000)
    assert np.allclose(k.prefix_power_sums_numba(v, 0.3), k.prefix_power_sums_numpy(v, 0.3), rtol=1e-12)


def test_grid_max_parity():
    a = k.concave_gap_grid_max_numba(1.0, 1.0, 0.5, 2.0, 10_001)
    b = k.concave_gap_grid_max_numpy(1.0, 1.0, 0.5, 2.0, 10_001)
    assert a == pytest.approx(b, abs=1e-15)


def test_env_flag_selects_numpy_backend():
    env = dict(os.environ, HOLDEROPT_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "from holderopt import _kernels; print(_kernels.backend())"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "numpy"
