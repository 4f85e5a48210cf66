"""Seeded Monte Carlo over tetrahedra with vertices uniform on the unit sphere.

Sample indices are cut into fixed blocks of ``BLOCK_SIZE``.  Block ``b`` draws
from its own PCG64 stream keyed by ``(seed, b)``, so every sample is a pure
function of ``(seed, index)`` and results do not depend on how many workers
process the blocks or in which order they finish.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .classify import LABELS, NONGENERIC, VIOLATION, labels_from_status
from .geometry import DEFAULT_EPS

BLOCK_SIZE = 1 << 16
MAX_EXAMPLES = 10


@dataclass(frozen=True)
class SamplerConfig:
    samples: int
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if int(self.samples) < 1:
            raise ValueError("samples must be >= 1")
        if int(self.workers) < 1:
            raise ValueError("workers must be >= 1")
        if int(self.seed) < 0:
            raise ValueError("seed must be a nonnegative integer")


@dataclass
class TypeHistogram:
    counts: dict[str, int] = field(default_factory=lambda: dict.fromkeys(LABELS, 0))
    nongeneric: int = 0
    violations: int = 0
    total: int = 0
    violation_examples: list = field(default_factory=list)

    def merge(self, other: "TypeHistogram") -> "TypeHistogram":
        counts = {k: self.counts[k] + other.counts[k] for k in LABELS}
        examples = (self.violation_examples + other.violation_examples)[:MAX_EXAMPLES]
        return TypeHistogram(
            counts,
            self.nongeneric + other.nongeneric,
            self.violations + other.violations,
            self.total + other.total,
            examples,
        )

    def classified(self) -> int:
        return sum(self.counts.values())

    def frequencies(self) -> dict[str, float]:
        n = self.classified()
        return {k: (v / n if n else 0.0) for k, v in self.counts.items()}

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(self.counts[k] for k in LABELS) + (self.nongeneric, self.violations, self.total)


def sphere_point(a1, a2):
    """Map ``(a1, a2)`` in the unit square to the unit sphere, area-preservingly.

    ``z = 2 a1 - 1`` and azimuth ``2 pi a2``; the area element is
    ``4 pi da1 da2`` so uniform inputs give uniform points.  Accepts scalars or
    broadcastable arrays and returns ``(..., 3)``.
    """
    a1 = np.asarray(a1, dtype=np.float64)
    a2 = np.asarray(a2, dtype=np.float64)
    z = 2.0 * a1 - 1.0
    s = np.sin(np.arccos(z))
    phi = 2.0 * np.pi * a2
    return np.stack(np.broadcast_arrays(s * np.sin(phi), s * np.cos(phi), z), axis=-1)


def block_generator(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed), spawn_key=(int(block),))))


def _block_layout(samples: int) -> list[tuple[int, int]]:
    n_blocks = math.ceil(samples / BLOCK_SIZE)
    return [(b, min(BLOCK_SIZE, samples - b * BLOCK_SIZE)) for b in range(n_blocks)]


def sample_block(seed: int, block: int, size: int, n_points: int = 4) -> np.ndarray:
    """``(size, n_points, 3)`` points on the sphere for one block."""
    u = block_generator(seed, block).random((size, n_points, 2))
    return sphere_point(u[..., 0], u[..., 1])


def sample_tetrahedra(samples: int, seed: int = 0) -> np.ndarray:
    """All ``samples`` tetrahedra of a run, concatenated in index order."""
    return np.concatenate([sample_block(seed, b, m) for b, m in _block_layout(samples)])


def map_blocks(fn, samples: int, seed: int, workers: int = 1) -> list:
    """Apply ``fn(block, points)`` to every block; results come back in block order."""
    layout = _block_layout(samples)

    def run(item):
        b, m = item
        return fn(b, sample_block(seed, b, m))

    if workers == 1:
        return [run(item) for item in layout]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, layout))


def histogram_from_labels(labels: np.ndarray, points: np.ndarray | None = None) -> TypeHistogram:
    counts = np.bincount(labels.astype(np.int64) + 2, minlength=len(LABELS) + 2)
    hist = TypeHistogram(
        {k: int(c) for k, c in zip(LABELS, counts[2:])},
        int(counts[NONGENERIC + 2]),
        int(counts[VIOLATION + 2]),
        int(labels.size),
    )
    if hist.violations and points is not None:
        hist.violation_examples = [points[i].copy() for i in np.flatnonzero(labels == VIOLATION)[:MAX_EXAMPLES]]
    return hist


def run_statistics(cfg: SamplerConfig, eps: float = DEFAULT_EPS, backend: str | None = None) -> TypeHistogram:
    """Classify ``cfg.samples`` random tetrahedra and count the types."""

    def one(block, pts):
        status, _ = kernels.subset_status(pts, eps, backend=backend)
        return histogram_from_labels(labels_from_status(status), pts)

    hist = TypeHistogram()
    for part in map_blocks(one, int(cfg.samples), int(cfg.seed), int(cfg.workers)):
        hist = hist.merge(part)
    return hist


def sample_sphere(samples: int, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    u = rng.random((samples, 2))
    return sphere_point(u[:, 0], u[:, 1])


def sphere_moment_check(samples: int, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Empirical mean vector and covariance matrix of sphere samples."""
    if samples < 10_000:
        raise ValueError("moment check needs at least 10^4 samples")
    x = sample_sphere(samples, seed)
    return x.mean(axis=0), np.cov(x, rowvar=False)
