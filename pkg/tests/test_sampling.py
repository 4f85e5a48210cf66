import numpy as np
import pytest

from morseposet.classify import LABELS
from morseposet.sampling import (
    BLOCK_SIZE,
    SamplerConfig,
    TypeHistogram,
    run_statistics,
    sample_block,
    sample_tetrahedra,
    sphere_moment_check,
    sphere_point,
)


@pytest.mark.parametrize(
    "a1, a2, expected",
    [(0.5, 0.0, (0, 1, 0)), (1.0, 0.37, (0, 0, 1)), (0.5, 0.25, (1, 0, 0)), (0.0, 0.9, (0, 0, -1))],
)
def test_sphere_point_examples(a1, a2, expected):
    np.testing.assert_allclose(sphere_point(a1, a2), expected, atol=1e-15)


def test_sphere_point_unit_norm():
    u = np.random.default_rng(0).random((1000, 2))
    np.testing.assert_allclose(np.linalg.norm(sphere_point(u[:, 0], u[:, 1]), axis=1), 1.0, rtol=1e-14)


@pytest.mark.slow
def test_sphere_moments():
    mean, cov = sphere_moment_check(10**6, seed=1)
    assert np.all(np.abs(mean) < 0.005)
    assert np.all(np.abs(cov - np.eye(3) / 3) < 0.005)


def test_moment_check_needs_enough_samples():
    with pytest.raises(ValueError):
        sphere_moment_check(100)


def test_hemisphere_fraction():
    pts = sample_tetrahedra(250_000, seed=2).reshape(-1, 3)
    assert abs((pts[:, 2] > 0).mean() - 0.5) < 0.002


def test_samples_are_function_of_seed_and_index():
    a = sample_tetrahedra(BLOCK_SIZE + 10, seed=4)
    b = sample_tetrahedra(BLOCK_SIZE + 500, seed=4)
    np.testing.assert_array_equal(a, b[: len(a)])
    np.testing.assert_array_equal(sample_block(4, 1, 10), a[BLOCK_SIZE:])
    assert not np.array_equal(sample_tetrahedra(10, seed=5), a[:10])


def test_config_validation():
    for bad in ({"samples": 0}, {"samples": 5, "workers": 0}, {"samples": 5, "seed": -1}):
        with pytest.raises(ValueError):
            SamplerConfig(**bad)


def test_histogram_invariants_and_worker_independence():
    cfg = SamplerConfig(150_000, seed=9, workers=1)
    h1 = run_statistics(cfg)
    h3 = run_statistics(SamplerConfig(150_000, seed=9, workers=3))
    assert h1.as_tuple() == h3.as_tuple()
    assert h1.classified() + h1.nongeneric + h1.violations == h1.total == 150_000
    assert h1.violations == 0
    assert h1.nongeneric / h1.total < 1e-4
    assert sum(h1.frequencies().values()) == pytest.approx(1.0)
    assert all(h1.counts[k] > 0 for k in LABELS)


def test_histogram_merge():
    a = TypeHistogram(dict.fromkeys(LABELS, 1), 2, 0, 11)
    b = TypeHistogram(dict.fromkeys(LABELS, 3), 0, 1, 28)
    m = a.merge(b)
    assert m.counts["4641"] == 4 and m.nongeneric == 2 and m.violations == 1 and m.total == 39
