"""Compiled kernels. Loop structure mirrors ``_numpy`` one subset at a time."""
import numpy as np
from numba import njit

from ._common import ACTIVE, DEGENERATE, INACTIVE, INDETERMINATE

JIT_OPTIONS = {"nogil": True, "cache": True}


@njit(**JIT_OPTIONS)
def _solve_in_place(G, rhs, m):
    # Gaussian elimination with partial pivoting on the leading m x m block.
    # Leaves the solution in rhs[:m] and returns det(G).
    det = 1.0
    for col in range(m):
        piv = col
        best = abs(G[col, col])
        for r in range(col + 1, m):
            v = abs(G[r, col])
            if v > best:
                best = v
                piv = r
        if best == 0.0:
            return 0.0
        if piv != col:
            det = -det
            for a in range(m):
                t = G[col, a]
                G[col, a] = G[piv, a]
                G[piv, a] = t
            t = rhs[col]
            rhs[col] = rhs[piv]
            rhs[piv] = t
        d = G[col, col]
        det *= d
        for r in range(col + 1, m):
            f = G[r, col] / d
            if f != 0.0:
                for a in range(col, m):
                    G[r, a] -= f * G[col, a]
                rhs[r] -= f * rhs[col]
    for r in range(m - 1, -1, -1):
        acc = rhs[r]
        for a in range(r + 1, m):
            acc -= G[r, a] * rhs[a]
        rhs[r] = acc / G[r, r]
    return det


@njit(**JIT_OPTIONS)
def subset_status(points, members, sizes, eps_rel):
    n_conf, n_pts, dim = points.shape
    n_sub = members.shape[0]
    status = np.empty((n_conf, n_sub), dtype=np.int8)
    radius = np.zeros((n_conf, n_sub), dtype=np.float64)
    D = np.empty((dim, dim))
    G = np.empty((dim, dim))
    rhs = np.empty(dim)
    center = np.empty(dim)
    for b in range(n_conf):
        P = points[b]
        diam2 = 0.0
        for i in range(n_pts):
            for j in range(i + 1, n_pts):
                acc = 0.0
                for a in range(dim):
                    t = P[i, a] - P[j, a]
                    acc += t * t
                if acc > diam2:
                    diam2 = acc
        tol_d = eps_rel * np.sqrt(diam2)
        for s in range(n_sub):
            k = sizes[s]
            if k == 1:
                status[b, s] = ACTIVE
                continue
            m = k - 1
            p0 = members[s, 0]
            prod = 1.0
            for j in range(m):
                q = members[s, j + 1]
                l2 = 0.0
                for a in range(dim):
                    t = P[q, a] - P[p0, a]
                    D[j, a] = t
                    l2 += t * t
                rhs[j] = 0.5 * l2
                prod *= l2
            for i in range(m):
                for j in range(i, m):
                    acc = 0.0
                    for a in range(dim):
                        acc += D[i, a] * D[j, a]
                    G[i, j] = acc
                    G[j, i] = acc
            det = _solve_in_place(G, rhs, m)
            if not det > eps_rel * eps_rel * prod:
                status[b, s] = DEGENERATE
                continue
            lam_sum = 0.0
            for a in range(dim):
                center[a] = P[p0, a]
            for j in range(m):
                lam_sum += rhs[j]
                for a in range(dim):
                    center[a] += rhs[j] * D[j, a]
            r2 = 0.0
            for a in range(dim):
                t = center[a] - P[p0, a]
                r2 += t * t
            r = np.sqrt(r2)
            radius[b, s] = r
            indet = False
            inside = True
            beta = 1.0 - lam_sum
            if abs(beta) <= eps_rel:
                indet = True
            elif beta < 0.0:
                inside = False
            for j in range(m):
                beta = rhs[j]
                if abs(beta) <= eps_rel:
                    indet = True
                elif beta < 0.0:
                    inside = False
            empty = True
            for q in range(n_pts):
                member = False
                for j in range(k):
                    if members[s, j] == q:
                        member = True
                        break
                if member:
                    continue
                acc = 0.0
                for a in range(dim):
                    t = center[a] - P[q, a]
                    acc += t * t
                dq = np.sqrt(acc)
                if abs(dq - r) <= tol_d:
                    indet = True
                elif dq < r:
                    empty = False
            if indet:
                status[b, s] = INDETERMINATE
            elif inside and empty:
                status[b, s] = ACTIVE
            else:
                status[b, s] = INACTIVE
    return status, radius
