"""Floating-point primitives: circumcenters, barycentric position, Cayley-Menger
circumradius, minimum enclosing balls and genericity diagnostics.

All strict inequalities use one relative tolerance ``eps`` (default
``DEFAULT_EPS``).  Barycentric coefficients are compared against ``eps``
directly; lengths are compared against ``eps`` times the configuration diameter.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import DegenerateSubset, NotRealizable

DEFAULT_EPS = 1e-9


@dataclass(frozen=True, eq=False)
class Configuration:
    """N labeled points in R^n, stored as an ``(N, n)`` float array."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] < 1:
            raise ValueError("points must be a 2-d array of shape (N, n)")
        if pts.shape[0] < 2:
            raise ValueError("a configuration needs at least two points")
        if not np.all(np.isfinite(pts)):
            raise ValueError("coordinates must be finite")
        diff = pts[:, None, :] - pts[None, :, :]
        dist = np.sqrt(np.einsum("ija,ija->ij", diff, diff))
        scale = max(float(dist.max()), 1.0)
        iu = np.triu_indices(len(pts), 1)
        if np.any(dist[iu] <= 1e-12 * scale):
            raise ValueError("points must be pairwise distinct")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def n_points(self) -> int:
        return self.points.shape[0]

    def __len__(self):
        return self.points.shape[0]

    def __eq__(self, other):
        if not isinstance(other, Configuration):
            return NotImplemented
        return np.array_equal(self.points, other.points)

    __hash__ = None

    def diameter(self) -> float:
        diff = self.points[:, None, :] - self.points[None, :, :]
        return float(np.sqrt(np.einsum("ija,ija->ij", diff, diff).max()))

    def edge_lengths(self) -> np.ndarray:
        """Symmetric ``(N, N)`` matrix of pairwise distances."""
        diff = self.points[:, None, :] - self.points[None, :, :]
        return np.sqrt(np.einsum("ija,ija->ij", diff, diff))

    def transformed(self, rotation=None, scale=1.0, shift=None) -> "Configuration":
        """Apply ``x -> scale * R x + shift`` to every point."""
        pts = self.points
        if rotation is not None:
            pts = pts @ np.asarray(rotation, dtype=np.float64).T
        pts = scale * pts
        if shift is not None:
            pts = pts + np.asarray(shift, dtype=np.float64)
        return Configuration(pts)


def as_configuration(obj) -> Configuration:
    if isinstance(obj, Configuration):
        return obj
    return Configuration(np.asarray(obj, dtype=np.float64))


def as_subset(subset: Iterable[int], n_points: int | None = None) -> tuple[int, ...]:
    """Normalize a subset to a strictly increasing tuple of point indices."""
    idx = tuple(sorted(int(i) for i in subset))
    if not idx:
        raise ValueError("subset must be nonempty")
    if len(set(idx)) != len(idx):
        raise ValueError(f"subset {idx} repeats an index")
    if n_points is not None and (idx[0] < 0 or idx[-1] >= n_points):
        raise ValueError(f"subset {idx} out of range for {n_points} points")
    return idx


@dataclass(frozen=True, eq=False)
class CircumData:
    """Circumcenter of a subset inside its affine span.

    ``barycentric`` holds the affine coefficients of ``center`` with respect to
    the subset points, in subset order; they sum to one.
    """

    subset: tuple[int, ...]
    center: np.ndarray
    radius: float
    barycentric: np.ndarray


class Position(enum.Enum):
    INTERIOR = "interior"
    EXTERIOR = "exterior"
    BOUNDARY = "boundary"


def _circumcenter_of(Q: np.ndarray, eps: float):
    """Return (center, radius, barycentric) for the rows of Q, or raise."""
    if len(Q) == 1:
        return Q[0].copy(), 0.0, np.ones(1)
    D = Q[1:] - Q[0]
    G = D @ D.T
    l2 = np.einsum("ja,ja->j", D, D)
    det = np.linalg.det(G)
    # Normalized volume: sqrt(det G) / prod |D_j| lies in [0, 1].
    if not det > eps * eps * np.prod(l2):
        raise DegenerateSubset("subset points are affinely dependent within tolerance")
    lam = np.linalg.solve(G, 0.5 * l2)
    offset = lam @ D
    bary = np.concatenate([[1.0 - lam.sum()], lam])
    return Q[0] + offset, float(np.sqrt(offset @ offset)), bary


def circumcenter(config, subset: Sequence[int], eps: float = DEFAULT_EPS) -> CircumData:
    """Center and radius of the sphere through the subset, within its affine span.

    The center solves the equidistance equations ``(c - P_0) . (P_j - P_0) =
    |P_j - P_0|^2 / 2`` written in the basis of difference vectors, which works
    in any ambient dimension.

    Raises
    ------
    DegenerateSubset
        If the subset is affinely dependent within ``eps``.
    """
    config = as_configuration(config)
    idx = as_subset(subset, config.n_points)
    if len(idx) > config.dim + 1:
        raise DegenerateSubset(f"{len(idx)} points are always dependent in R^{config.dim}")
    center, radius, bary = _circumcenter_of(config.points[list(idx)], eps)
    return CircumData(idx, center, radius, bary)


def barycentric_position(circ: CircumData, eps: float = DEFAULT_EPS) -> Position:
    """Locate a circumcenter relative to the (relative interior of the) simplex."""
    b = circ.barycentric
    if len(b) == 1:
        return Position.INTERIOR
    if np.any(b < -eps):
        return Position.EXTERIOR
    if np.all(b > eps):
        return Position.INTERIOR
    return Position.BOUNDARY


def circumradius_from_lengths(lengths, eps: float = DEFAULT_EPS) -> float:
    """Circumradius of a simplex given its symmetric matrix of edge lengths.

    Uses the Cayley-Menger identity ``R^2 = -det(D) / (2 det(CM))`` where ``D``
    holds squared distances and ``CM`` is ``D`` bordered by ones.  Realizability
    is checked on the Gram matrix ``(d_0i^2 + d_0j^2 - d_ij^2) / 2``: it must be
    positive definite, with the same normalized-volume floor ``eps`` that
    :func:`circumcenter` applies.
    """
    d = np.asarray(lengths, dtype=np.float64)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError("lengths must be a square matrix")
    if not np.allclose(d, d.T) or np.any(np.diag(d) != 0):
        raise NotRealizable("lengths must be symmetric with a zero diagonal")
    k = d.shape[0]
    if k == 1:
        return 0.0
    D = d * d
    gram = 0.5 * (D[0, 1:, None] + D[0, None, 1:] - D[1:, 1:])
    ev = np.linalg.eigvalsh(gram)
    if not (ev[0] > 0 and np.prod(ev) > eps * eps * np.prod(np.diag(gram))):
        raise NotRealizable("lengths do not span a nondegenerate simplex")
    cm = np.ones((k + 1, k + 1))
    cm[0, 0] = 0.0
    cm[1:, 1:] = D
    r2 = -0.5 * np.linalg.det(D) / np.linalg.det(cm)
    if not r2 > 0:
        raise NotRealizable("Cayley-Menger determinant has the wrong sign")
    return float(np.sqrt(r2))


def min_enclosing_ball(points) -> tuple[np.ndarray, float]:
    """Smallest closed ball containing the rows of ``points`` (Welzl recursion).

    Points are processed in their given order so the result is deterministic.
    Boundary sets are solved with the affine-span circumcenter; at most n+1
    points are ever placed on the boundary.
    """
    P = np.asarray(points, dtype=np.float64)
    dim = P.shape[1]
    scale = max(float(np.abs(P).max()), 1.0)
    slack = 1e-12 * scale

    def ball_of(R):
        if not R:
            return np.zeros(dim), -1.0
        c, r, _ = _circumcenter_of(P[list(R)], 0.0)
        return c, r

    def welzl(n, R):
        if n == 0 or len(R) == dim + 1:
            return ball_of(R)
        c, r = welzl(n - 1, R)
        p = P[n - 1]
        if r >= 0 and np.linalg.norm(p - c) <= r + slack:
            return c, r
        return welzl(n - 1, R + (n - 1,))

    c, r = welzl(len(P), ())
    return c, max(r, 0.0)


class Violation(NamedTuple):
    subset: tuple[int, ...]
    kind: str
    margin: float


AFFINE_DEGENERATE = "affine-degenerate"
CIRCUMCENTER_ON_FACE = "circumcenter-on-face"
EQUIDISTANT_TIE = "equidistant-tie"


@dataclass(frozen=True)
class GenericityReport:
    is_generic: bool
    violations: tuple[Violation, ...]

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


def genericity_check(config, eps: float = DEFAULT_EPS) -> GenericityReport:
    """Report every way the configuration fails general position.

    Checks all subsets of size 2..n+1 for affine dependence, circumcenters
    whose barycentric coefficients are within ``eps`` of zero, and non-member
    points within ``eps * diameter`` of a circumsphere.
    """
    config = as_configuration(config)
    P = config.points
    N, n = P.shape
    tol_d = eps * config.diameter()
    found = []
    for k in range(2, min(n + 1, N) + 1):
        for sub in combinations(range(N), k):
            try:
                center, radius, bary = _circumcenter_of(P[list(sub)], eps)
            except DegenerateSubset:
                D = P[list(sub[1:])] - P[sub[0]]
                l2 = np.einsum("ja,ja->j", D, D)
                vol = np.sqrt(max(np.linalg.det(D @ D.T), 0.0) / np.prod(l2))
                found.append(Violation(sub, AFFINE_DEGENERATE, float(vol)))
                continue
            low = float(np.abs(bary).min())
            if low <= eps:
                found.append(Violation(sub, CIRCUMCENTER_ON_FACE, low))
            others = [q for q in range(N) if q not in sub]
            if others:
                gap = np.abs(np.linalg.norm(P[others] - center, axis=1) - radius)
                for q, g in zip(others, gap):
                    if g <= tol_d:
                        found.append(Violation(sub, EQUIDISTANT_TIE, float(g)))
    return GenericityReport(not found, tuple(found))


def random_rotation(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-distributed proper rotation matrix."""
    A = rng.normal(size=(dim, dim))
    Q, R = np.linalg.qr(A)
    Q = Q * np.sign(np.diag(R))
    if np.linalg.det(Q) < 0:
        Q[:, 0] = -Q[:, 0]
    return Q


def perturb(config, delta: float, seed: int, sphere=None) -> Configuration:
    """Add seeded uniform jitter in ``[-delta, delta]`` to every coordinate.

    With ``sphere=(center, radius)`` each jittered point is pushed radially back
    onto that sphere, which keeps the circumsphere fixed when jittering a
    cocircular configuration.  The jitter direction for a given seed does not
    depend on ``delta``.
    """
    config = as_configuration(config)
    rng = np.random.default_rng(seed)
    pts = config.points + delta * rng.uniform(-1.0, 1.0, size=config.points.shape)
    if sphere is not None:
        c, r = np.asarray(sphere[0], dtype=np.float64), float(sphere[1])
        v = pts - c
        pts = c + r * v / np.linalg.norm(v, axis=1, keepdims=True)
    return Configuration(pts)
