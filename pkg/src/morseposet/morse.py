"""Activity predicate, Morse poset construction and the Cech-nerve oracle.

A subset S of the configuration is *active* when its circumcenter (taken in
the affine span of S) is a critical point of the distance-to-nearest-point
function: the center lies in the relative interior of conv(S) and no other
point is closer to it than the points of S.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np

from . import kernels
from .errors import CriticalEpsilon, EulerViolation, NonGeneric
from .geometry import (
    DEFAULT_EPS,
    Configuration,
    Position,
    as_configuration,
    as_subset,
    barycentric_position,
    circumcenter,
    genericity_check,
    min_enclosing_ball,
)


@dataclass(frozen=True, eq=False)
class ActiveSubset:
    subset: tuple[int, ...]
    center: np.ndarray
    critical_value: float

    @property
    def index(self) -> int:
        return len(self.subset) - 1


@dataclass(frozen=True)
class CriticalSpectrum:
    """Numbers ``a_0 .. a_n`` of critical points of each index."""

    counts: tuple[int, ...]

    def __iter__(self):
        return iter(self.counts)

    def __getitem__(self, i):
        return self.counts[i]

    def __len__(self):
        return len(self.counts)

    def alternating_sum(self) -> int:
        return sum((-1) ** i * a for i, a in enumerate(self.counts))

    def __str__(self):
        return "".join(str(a) for a in self.counts)


@dataclass(frozen=True, eq=False)
class MorsePoset:
    """Active subsets of a configuration, partially ordered by inclusion."""

    n_points: int
    dim: int
    elements: tuple[ActiveSubset, ...]

    def __iter__(self) -> Iterator[ActiveSubset]:
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, subset):
        return as_subset(subset) in self.subsets()

    def subsets(self) -> frozenset[tuple[int, ...]]:
        return frozenset(e.subset for e in self.elements)

    def layer(self, size: int) -> list[ActiveSubset]:
        return [e for e in self.elements if len(e.subset) == size]

    def covers(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        """Hasse diagram edges ``(smaller, larger)`` of the inclusion order."""
        subs = sorted(self.subsets(), key=lambda s: (len(s), s))
        out = []
        for a in subs:
            sa = set(a)
            for b in subs:
                if len(b) <= len(a) or not sa < set(b):
                    continue
                if not any(sa < set(c) < set(b) for c in subs if len(a) < len(c) < len(b)):
                    out.append((a, b))
        return out

    def spectrum(self) -> CriticalSpectrum:
        return critical_spectrum(self)


def _others_tolerance(config: Configuration, eps: float) -> float:
    return eps * config.diameter()


def is_active(config, subset: Iterable[int], eps: float = DEFAULT_EPS) -> bool:
    """Decide whether ``subset`` is active, evaluated one predicate at a time.

    Raises
    ------
    NonGeneric
        If the center is within tolerance of the boundary of the simplex, or a
        non-member point is within tolerance of the circumsphere.
    DegenerateSubset
        If the subset is affinely dependent.
    """
    config = as_configuration(config)
    idx = as_subset(subset, config.n_points)
    if len(idx) == 1:
        return True
    circ = circumcenter(config, idx, eps)
    pos = barycentric_position(circ, eps)
    indeterminate = pos is Position.BOUNDARY
    inside = pos is Position.INTERIOR
    empty = True
    others = [q for q in range(config.n_points) if q not in idx]
    if others:
        gap = np.linalg.norm(config.points[others] - circ.center, axis=1) - circ.radius
        tol = _others_tolerance(config, eps)
        indeterminate |= bool(np.any(np.abs(gap) <= tol))
        empty = bool(np.all(gap > 0))
    if indeterminate:
        raise NonGeneric(f"activity of {idx} is indeterminate within tolerance")
    return inside and empty


def _raise_nongeneric(config, eps):
    report = genericity_check(config, eps)
    details = ", ".join(f"{v.subset}:{v.kind}" for v in report.violations[:8])
    raise NonGeneric(f"configuration is not generic ({details})", report.violations)


def morse_poset(config, eps: float = DEFAULT_EPS, backend: str | None = None) -> MorsePoset:
    """All active subsets with their centers and critical values."""
    config = as_configuration(config)
    status, _ = kernels.subset_status(config.points[None], eps, backend=backend)
    status = status[0]
    if np.any(status >= kernels.INDETERMINATE):
        _raise_nongeneric(config, eps)
    _, _, subsets = kernels.subset_table(config.n_points, config.dim)
    elements = []
    for s in np.flatnonzero(status == kernels.ACTIVE):
        circ = circumcenter(config, subsets[s], eps)
        elements.append(ActiveSubset(circ.subset, circ.center, circ.radius))
    return MorsePoset(config.n_points, config.dim, tuple(elements))


def critical_spectrum(poset: MorsePoset) -> CriticalSpectrum:
    """Count active subsets by index and check the Euler identity.

    Raises
    ------
    EulerViolation
        If the alternating sum is not 1, which means a tolerance failure upstream.
    """
    counts = [0] * (poset.dim + 1)
    for e in poset.elements:
        counts[e.index] += 1
    spec = CriticalSpectrum(tuple(counts))
    if spec.alternating_sum() != 1:
        raise EulerViolation(f"alternating sum of {spec.counts} is {spec.alternating_sum()}")
    return spec


def gabriel_graph(config, eps: float = DEFAULT_EPS) -> frozenset[tuple[int, int]]:
    """Edges whose diametral ball holds no other point: the size-2 layer."""
    return frozenset(e.subset for e in morse_poset(config, eps).layer(2))


def batch_status(points, eps: float = DEFAULT_EPS, backend: str | None = None):
    """Kernel pass over a ``(B, N, n)`` batch; see :func:`kernels.subset_status`."""
    return kernels.subset_status(points, eps, backend=backend)


def batch_spectra(status: np.ndarray, n_points: int, dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-configuration ``(a_0..a_n)`` and a mask of generic configurations."""
    _, sizes, _ = kernels.subset_table(n_points, dim)
    active = status == kernels.ACTIVE
    counts = np.stack([active[:, sizes == k].sum(axis=1) for k in range(1, dim + 2)], axis=1)
    generic = ~np.any(status >= kernels.INDETERMINATE, axis=1)
    return counts, generic


class CechFiltration:
    """Minimum enclosing ball radius of every nonempty subset of the points.

    The nerve of the balls ``B(P_i, eps)`` contains S exactly when the smallest
    ball enclosing S has radius at most eps, so its Euler characteristic is a
    count over these radii.  Subsets of size <= n+1 are solved by Welzl's
    recursion; a larger subset's ball is supported on at most n+1 points and
    therefore equals the largest ball among its co-size-one faces.
    """

    def __init__(self, config, eps: float = DEFAULT_EPS):
        self.config = as_configuration(config)
        self.eps = eps
        P = self.config.points
        N, n = P.shape
        radii = np.zeros(1 << N)
        sizes = np.zeros(1 << N, dtype=np.int64)
        for k in range(1, N + 1):
            for sub in combinations(range(N), k):
                mask = sum(1 << i for i in sub)
                sizes[mask] = k
                if k == 1:
                    continue
                if k <= n + 1:
                    radii[mask] = min_enclosing_ball(P[list(sub)])[1]
                else:
                    radii[mask] = max(radii[mask & ~(1 << i)] for i in sub)
        self.radii = radii[1:]
        self.sizes = sizes[1:]
        self._signs = np.where(self.sizes % 2 == 1, 1, -1)
        self._tol = eps * self.config.diameter()

    def euler_characteristic(self, epsilon: float) -> int:
        if epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if np.any(np.abs(self.radii[self.sizes > 1] - epsilon) <= self._tol):
            raise CriticalEpsilon(f"epsilon={epsilon!r} is within tolerance of a critical value")
        return int(self._signs[self.radii <= epsilon].sum())


def cech_euler_characteristic(config, epsilon: float, eps: float = DEFAULT_EPS) -> int:
    """Euler characteristic of the nerve of the radius-``epsilon`` balls."""
    return CechFiltration(config, eps).euler_characteristic(epsilon)


def morse_partial_sum(poset: MorsePoset, epsilon: float) -> int:
    """Alternating count of critical points with critical value below ``epsilon``."""
    return sum((-1) ** e.index for e in poset.elements if e.critical_value < epsilon)
