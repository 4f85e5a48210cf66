"""Pure-numpy fallback: vectorized over configurations, looped over subsets."""
import numpy as np

from ._common import ACTIVE, DEGENERATE, INACTIVE, INDETERMINATE


def subset_status(points, members, sizes, eps_rel):
    points = np.asarray(points, dtype=np.float64)
    n_conf, n_pts, dim = points.shape
    n_sub = members.shape[0]
    status = np.empty((n_conf, n_sub), dtype=np.int8)
    radius = np.zeros((n_conf, n_sub), dtype=np.float64)

    diff = points[:, :, None, :] - points[:, None, :, :]
    diam = np.sqrt(np.einsum("bija,bija->bij", diff, diff).max(axis=(1, 2)))
    tol_d = eps_rel * diam

    for s in range(n_sub):
        k = int(sizes[s])
        if k == 1:
            status[:, s] = ACTIVE
            continue
        idx = members[s, :k]
        Q = points[:, idx, :]
        D = Q[:, 1:, :] - Q[:, :1, :]
        G = D @ D.transpose(0, 2, 1)
        l2 = np.einsum("bja,bja->bj", D, D)
        det = np.linalg.det(G)
        ok = det > eps_rel * eps_rel * np.prod(l2, axis=1)
        # Swap singular systems for the identity so the batched solve never raises.
        G[~ok] = np.eye(k - 1)
        lam = np.linalg.solve(G, 0.5 * l2[..., None])[..., 0]
        offset = np.einsum("bj,bja->ba", lam, D)
        center = Q[:, 0, :] + offset
        r = np.sqrt(np.einsum("ba,ba->b", offset, offset))
        radius[:, s] = np.where(ok, r, 0.0)

        beta = np.concatenate([1.0 - lam.sum(axis=1, keepdims=True), lam], axis=1)
        indet = np.any(np.abs(beta) <= eps_rel, axis=1)
        inside = np.all(beta > 0.0, axis=1)

        others = np.setdiff1d(np.arange(n_pts), idx)
        if others.size:
            dq = np.linalg.norm(points[:, others, :] - center[:, None, :], axis=2)
            gap = dq - r[:, None]
            indet |= np.any(np.abs(gap) <= tol_d[:, None], axis=1)
            empty = np.all(gap > 0.0, axis=1)
        else:
            empty = np.ones(n_conf, dtype=bool)

        col = np.where(inside & empty, ACTIVE, INACTIVE)
        col = np.where(indet, INDETERMINATE, col)
        col = np.where(ok, col, DEGENERATE)
        status[:, s] = col
    return status, radius
