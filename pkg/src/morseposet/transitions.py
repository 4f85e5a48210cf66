"""Discriminant crossings along straight-line paths in configuration space."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import NonGenericEndpoint, UnresolvedCluster
from .geometry import DEFAULT_EPS, Configuration, as_configuration

Family = frozenset

_PROBES = np.array([0.5, 0.25, 0.75, 0.125, 0.875, 0.375, 0.625])


@dataclass(frozen=True)
class PathSpec:
    """Pointwise linear interpolation ``(1 - t) * start + t * end``."""

    start: Configuration
    end: Configuration

    def __post_init__(self):
        a, b = as_configuration(self.start), as_configuration(self.end)
        if a.points.shape != b.points.shape:
            raise ValueError("path endpoints must have the same number of points and dimension")
        object.__setattr__(self, "start", a)
        object.__setattr__(self, "end", b)

    def points_at(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=np.float64)[..., None, None]
        return (1.0 - t) * self.start.points + t * self.end.points

    def at(self, t: float) -> Configuration:
        return Configuration(self.points_at(t))


@dataclass(frozen=True)
class TransitionEvent:
    t_low: float
    t_high: float
    added: frozenset
    removed: frozenset

    def changes(self) -> int:
        return len(self.added) + len(self.removed)


def _families(path: PathSpec, ts, eps, backend):
    """Active-subset family at each t, or None where the poset is not generic."""
    status, _ = kernels.subset_status(path.points_at(ts), eps, backend=backend)
    _, _, subsets = kernels.subset_table(path.start.n_points, path.start.dim)
    out = []
    for row in status:
        if np.any(row >= kernels.INDETERMINATE):
            out.append(None)
        else:
            out.append(Family(subsets[s] for s in np.flatnonzero(row == kernels.ACTIVE)))
    return out


def _is_cluster(added, removed) -> bool:
    return len(added) + len(removed) > 2


def scan_path(
    path: PathSpec,
    steps: int = 256,
    tol_t: float = 1e-10,
    eps: float = DEFAULT_EPS,
    backend: str | None = None,
) -> list[TransitionEvent]:
    """Locate every change of the Morse poset along ``path``.

    The poset is evaluated on ``steps + 1`` uniform parameters.  Each interval
    whose end posets differ is bisected until it is at most ``tol_t`` wide or
    its midpoint falls inside the tolerance band of the discriminant; a
    midpoint differing from both ends splits the interval into two searches.

    Raises
    ------
    NonGenericEndpoint
        If the poset at t=0 or t=1 is not generic.
    UnresolvedCluster
        If a final bracket still changes more than two subsets, which means
        several crossings too close to separate; jitter the endpoints and retry.
    """
    if steps < 2:
        raise ValueError("steps must be >= 2")
    ts = np.linspace(0.0, 1.0, steps + 1)
    fams = _families(path, ts, eps, backend)
    if fams[0] is None or fams[-1] is None:
        raise NonGenericEndpoint("path endpoint is not generic")
    grid = [(t, f) for t, f in zip(ts, fams) if f is not None]

    events = []

    def emit(lo, flo, hi, fhi):
        ev = TransitionEvent(float(lo), float(hi), fhi - flo, flo - fhi)
        if _is_cluster(ev.added, ev.removed):
            raise UnresolvedCluster(
                f"{ev.changes()} subsets change within [{lo!r}, {hi!r}]", ev
            )
        events.append(ev)

    def probe(lo, hi):
        # Midpoint first; if it sits in a tolerance band try other interior points,
        # since a second crossing may still be separable from this one.
        mid = 0.5 * (lo + hi)
        f = _families(path, [mid], eps, backend)[0]
        if f is not None:
            return mid, f
        ts = lo + (hi - lo) * _PROBES[1:]
        for t, f in zip(ts, _families(path, ts, eps, backend)):
            if f is not None:
                return t, f
        return None, None

    def refine(lo, flo, hi, fhi):
        while True:
            if hi - lo <= tol_t:
                emit(lo, flo, hi, fhi)
                return
            mid, fmid = probe(lo, hi)
            if fmid is None:
                emit(lo, flo, hi, fhi)
                return
            if fmid == flo:
                lo = mid
            elif fmid == fhi:
                hi = mid
            else:
                refine(lo, flo, mid, fmid)
                lo, flo = mid, fmid

    for (t0, f0), (t1, f1) in zip(grid, grid[1:]):
        if f0 != f1:
            refine(t0, f0, t1, f1)
    return events


def check_event(event: TransitionEvent) -> bool:
    """True when one subset of length j and one of length j+1 change, in the same
    direction, and the smaller is contained in the larger."""
    if event.added and event.removed:
        return False
    changed = sorted(event.added or event.removed, key=len)
    if len(changed) != 2:
        return False
    small, large = changed
    return len(large) == len(small) + 1 and set(small) < set(large)


def apply_event(family: frozenset, event: TransitionEvent) -> frozenset:
    return (family - event.removed) | event.added


def poset_family(config, eps: float = DEFAULT_EPS, backend: str | None = None) -> frozenset:
    """Active subsets of one configuration as a frozenset (None if not generic)."""
    config = as_configuration(config)
    return _families(PathSpec(config, config), [0.0], eps, backend)[0]
