import os
import subprocess
import sys

import numpy as np
import pytest

from morseposet import kernels
from morseposet.sampling import sample_tetrahedra

needs_numba = pytest.mark.skipif("numba" not in kernels.BACKENDS, reason="numba not installed")


def test_subset_table_layout():
    members, sizes, subsets = kernels.subset_table(4, 3)
    assert subsets[:4] == ((0,), (1,), (2,), (3,))
    assert subsets[4:10] == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
    assert subsets[14] == (0, 1, 2, 3)
    assert list(sizes) == [1] * 4 + [2] * 6 + [3] * 4 + [4]
    assert members.shape == (15, 4) and members[0, 1] == -1


def test_subset_table_caps_size_at_dim_plus_one():
    _, sizes, _ = kernels.subset_table(6, 2)
    assert sizes.max() == 3


@needs_numba
@pytest.mark.parametrize("n_points, dim", [(4, 3), (3, 2), (6, 2), (7, 3)])
def test_backends_agree(n_points, dim):
    rng = np.random.default_rng(n_points * 10 + dim)
    pts = rng.normal(size=(2000, n_points, dim))
    s1, r1 = kernels.subset_status(pts, 1e-9, backend="numba")
    s2, r2 = kernels.subset_status(pts, 1e-9, backend="numpy")
    np.testing.assert_array_equal(s1, s2)
    # Near-flat subsets have huge, ill-conditioned radii; statuses must still match exactly.
    np.testing.assert_allclose(r1, r2, rtol=1e-6)


@needs_numba
def test_backends_agree_on_sphere_samples():
    pts = sample_tetrahedra(20000, seed=3)
    s1, _ = kernels.subset_status(pts, 1e-9, backend="numba")
    s2, _ = kernels.subset_status(pts, 1e-9, backend="numpy")
    np.testing.assert_array_equal(s1, s2)


def test_degenerate_and_indeterminate_codes():
    flat = np.array([[(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)]], dtype=float)
    for backend in kernels.BACKENDS:
        status, _ = kernels.subset_status(flat, 1e-9, backend=backend)
        assert status[0, 14] == kernels.DEGENERATE
        # Each triangle of the square has a right angle: center on a face.
        assert np.all(status[0, 10:14] == kernels.INDETERMINATE)


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        kernels.subset_status(np.zeros((1, 2, 1)) + [[[0.0], [1.0]]], 1e-9, backend="fortran")


@pytest.mark.parametrize("flag, expected", [("numpy", "numpy"), ("", None)])
def test_env_flag_selects_backend(flag, expected):
    env = dict(os.environ, MORSEPOSET_BACKEND=flag)
    out = subprocess.run(
        [sys.executable, "-c", "from morseposet import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    ).stdout.strip()
    assert out == (expected or kernels.BACKENDS[0])


def test_env_flag_invalid_value():
    env = dict(os.environ, MORSEPOSET_BACKEND="cuda")
    proc = subprocess.run([sys.executable, "-c", "import morseposet"], env=env, capture_output=True, text=True)
    assert proc.returncode != 0 and "MORSEPOSET_BACKEND" in proc.stderr
