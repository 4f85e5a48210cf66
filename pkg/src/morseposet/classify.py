"""The nine combinatorial types of generic tetrahedra.

A type is keyed by the critical spectrum ``(a_0, a_1, a_2, a_3)`` and, when
``a_1`` is 3 or 4, by the shape of the Gabriel graph.  Connected graphs on four
vertices with three or four edges are told apart by their degree sequence:

    3 edges  (1, 1, 2, 2) -> L (path)      (1, 1, 1, 3) -> T (star)
    4 edges  (2, 2, 2, 2) -> O (4-cycle)   (1, 2, 2, 3) -> P (triangle + pendant)
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import kernels
from .errors import BadEdgeCount, Disconnected, TheoremViolation
from .geometry import DEFAULT_EPS, as_configuration
from .morse import critical_spectrum, morse_poset

LABELS = ("4300L", "4300T", "4410O", "4410P", "4520", "4421O", "4630", "4531", "4641")

# (spectrum, letter) for each label, in LABELS order.
TYPE_KEYS = {
    "4300L": ((4, 3, 0, 0), "L"),
    "4300T": ((4, 3, 0, 0), "T"),
    "4410O": ((4, 4, 1, 0), "O"),
    "4410P": ((4, 4, 1, 0), "P"),
    "4520": ((4, 5, 2, 0), None),
    "4421O": ((4, 4, 2, 1), "O"),
    "4630": ((4, 6, 3, 0), None),
    "4531": ((4, 5, 3, 1), None),
    "4641": ((4, 6, 4, 1), None),
}

EXCLUDED = {
    ((4, 2, 0, 1), None),
    ((4, 3, 1, 1), "L"),
    ((4, 3, 1, 1), "T"),
    ((4, 4, 2, 1), "P"),
}

_LETTERS = {
    (3, (1, 1, 2, 2)): "L",
    (3, (1, 1, 1, 3)): "T",
    (4, (2, 2, 2, 2)): "O",
    (4, (1, 2, 2, 3)): "P",
}

EDGES = tuple(combinations(range(4), 2))

NONGENERIC = -1
VIOLATION = -2


class Verdict(enum.Enum):
    ALLOWED = "allowed"
    EXCLUDED = "excluded"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class GraphShape:
    edge_count: int
    degree_sequence: tuple[int, ...]
    letter: str | None


@dataclass(frozen=True)
class TetrahedronType:
    label: str
    spectrum: tuple[int, int, int, int]
    shape_letter: str | None

    def __str__(self):
        return self.label


def _connected(edges, n=4) -> bool:
    adj = {v: set() for v in range(n)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen, todo = {0}, [0]
    while todo:
        for w in adj[todo.pop()]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == n


def graph_shape(edges) -> GraphShape:
    """Edge count, degree sequence and O/P/L/T letter of a graph on 4 vertices."""
    edges = {tuple(sorted(e)) for e in edges}
    if any(len(set(e)) != 2 or min(e) < 0 or max(e) > 3 for e in edges):
        raise ValueError(f"not a simple graph on vertices 0..3: {sorted(edges)}")
    m = len(edges)
    if not 3 <= m <= 6:
        raise BadEdgeCount(f"{m} edges; a connected graph on 4 vertices needs 3 to 6")
    if not _connected(edges):
        raise Disconnected(f"graph {sorted(edges)} is not connected")
    deg = [0] * 4
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    seq = tuple(sorted(deg))
    return GraphShape(m, seq, _LETTERS.get((m, seq)))


def validate_counts(spectrum, shape: GraphShape | str | None = None) -> Verdict:
    """Check a (spectrum, graph letter) pair against the nine-type list."""
    spectrum = tuple(int(a) for a in spectrum)
    letter = shape.letter if isinstance(shape, GraphShape) else shape
    key = (spectrum, letter)
    if key in EXCLUDED:
        return Verdict.EXCLUDED
    if key in TYPE_KEYS.values():
        return Verdict.ALLOWED
    return Verdict.UNKNOWN


def label_for(spectrum, letter) -> str | None:
    key = (tuple(int(a) for a in spectrum), letter)
    for label, k in TYPE_KEYS.items():
        if k == key:
            return label
    return None


def classify_tetrahedron(config, eps: float = DEFAULT_EPS) -> TetrahedronType:
    """Type of a generic tetrahedron in R^3.

    Raises
    ------
    NonGeneric
        If any activity predicate is indeterminate.
    TheoremViolation
        If the spectrum and Gabriel graph match none of the nine types.
    """
    config = as_configuration(config)
    if config.points.shape != (4, 3):
        raise ValueError("classification needs exactly four points in R^3")
    poset = morse_poset(config, eps)
    spectrum = tuple(critical_spectrum(poset))
    edges = [e.subset for e in poset.layer(2)]
    try:
        letter = graph_shape(edges).letter
    except (BadEdgeCount, Disconnected) as exc:
        raise TheoremViolation(f"spectrum {spectrum}: {exc}", config.points) from exc
    label = label_for(spectrum, letter)
    if label is None:
        verdict = validate_counts(spectrum, letter)
        raise TheoremViolation(
            f"spectrum {spectrum} with graph {letter or '-'} is {verdict.value}", config.points
        )
    return TetrahedronType(label, spectrum, letter)


@lru_cache(maxsize=None)
def _label_table() -> np.ndarray:
    # Indexed by (edge mask, a_2, a_3); value is a LABELS index or VIOLATION.
    table = np.full((64, 5, 2), VIOLATION, dtype=np.int8)
    for mask in range(64):
        edges = [e for bit, e in enumerate(EDGES) if mask >> bit & 1]
        try:
            letter = graph_shape(edges).letter
        except (BadEdgeCount, Disconnected):
            continue
        for a2 in range(5):
            for a3 in range(2):
                label = label_for((4, len(edges), a2, a3), letter)
                if label is not None:
                    table[mask, a2, a3] = LABELS.index(label)
    table.setflags(write=False)
    return table


def labels_from_status(status: np.ndarray) -> np.ndarray:
    """Vectorized classification of a ``(B, 15)`` status batch for N=4, n=3.

    Returns LABELS indices, with ``NONGENERIC`` for configurations holding an
    indeterminate or degenerate subset and ``VIOLATION`` for pairs outside the
    nine types.
    """
    status = np.asarray(status)
    active = status == kernels.ACTIVE
    bits = 1 << np.arange(6, dtype=np.int64)
    mask = active[:, 4:10].astype(np.int64) @ bits
    a2 = active[:, 10:14].sum(axis=1)
    a3 = active[:, 14].astype(np.int64)
    codes = _label_table()[mask, a2, a3]
    nongeneric = np.any(status >= kernels.INDETERMINATE, axis=1)
    return np.where(nongeneric, NONGENERIC, codes).astype(np.int8)
