"""Status codes and subset tables shared by both kernel backends."""
from functools import lru_cache
from itertools import combinations

import numpy as np

INACTIVE = 0
ACTIVE = 1
INDETERMINATE = 2
DEGENERATE = 3


@lru_cache(maxsize=None)
def subset_table(n_points, dim):
    """All subsets of size 1..dim+1 of ``range(n_points)``, by size then lexicographic.

    Returns ``(members, sizes, subsets)``: ``members`` is an int64 array of shape
    ``(S, dim + 1)`` padded with -1, ``sizes`` the subset lengths, and ``subsets``
    the same subsets as a tuple of tuples.
    """
    kmax = min(dim + 1, n_points)
    subsets = tuple(
        c for k in range(1, kmax + 1) for c in combinations(range(n_points), k)
    )
    members = np.full((len(subsets), dim + 1), -1, dtype=np.int64)
    sizes = np.empty(len(subsets), dtype=np.int64)
    for s, sub in enumerate(subsets):
        members[s, : len(sub)] = sub
        sizes[s] = len(sub)
    members.setflags(write=False)
    sizes.setflags(write=False)
    return members, sizes, subsets
