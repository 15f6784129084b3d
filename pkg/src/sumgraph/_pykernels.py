"""Pure-Python graph kernels: import-time fallback for the compiled core.

Every loop here mirrors `_ckernels.pyx` statement for statement, including
accumulation order, so both backends produce identical floating-point
results. Change the two files together.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND_NAME = "pure"

_INF = math.inf


def pagerank_kernel(indptr, indices, trans, dangling, damping, tol, max_iter):
    """Weighted power iteration with uniform teleport for dangling mass.

    `trans[k]` is edge weight / source strength for the k-th CSR slot.
    Returns (scores, iterations_used, converged).
    """
    indptr = indptr.tolist()
    indices = indices.tolist()
    trans = trans.tolist()
    dangling = dangling.tolist()
    n = len(indptr) - 1
    base = (1.0 - damping) / n
    inv_n = 1.0 / n
    x = [inv_n] * n
    x_new = [0.0] * n
    iterations = 0
    converged = False
    while iterations < max_iter:
        iterations += 1
        dm = 0.0
        for u in range(n):
            if dangling[u]:
                dm += x[u]
        dm_n = dm * inv_n
        diff = 0.0
        for v in range(n):
            acc = 0.0
            for k in range(indptr[v], indptr[v + 1]):
                acc += x[indices[k]] * trans[k]
            value = base + damping * (acc + dm_n)
            x_new[v] = value
            diff += abs(value - x[v])
        x, x_new = x_new, x
        if diff < tol:
            converged = True
            break
    return np.array(x, dtype=np.float64), iterations, converged


def hits_kernel(indptr, indices, weights, tol, max_iter):
    """Alternating authority/hub iteration on the symmetric adjacency.

    Both vectors are Euclidean-normalized each half step; the authority
    vector is the reported score. A zero product vector (no edges) leaves
    the previous vector in place, which makes a single node score 1.
    """
    indptr = indptr.tolist()
    indices = indices.tolist()
    weights = weights.tolist()
    n = len(indptr) - 1
    start = 1.0 / math.sqrt(n)
    auth = [start] * n
    hub = [start] * n
    iterations = 0
    converged = False
    while iterations < max_iter:
        iterations += 1
        diff_a = _multiply_normalize(indptr, indices, weights, hub, auth, n)
        diff_h = _multiply_normalize(indptr, indices, weights, auth, hub, n)
        if diff_a < tol and diff_h < tol:
            converged = True
            break
    return np.array(auth, dtype=np.float64), iterations, converged


def _multiply_normalize(indptr, indices, weights, src, dst, n):
    """dst <- normalize(A @ src); returns the L1 change of dst."""
    y = [0.0] * n
    for v in range(n):
        acc = 0.0
        for k in range(indptr[v], indptr[v + 1]):
            acc += src[indices[k]] * weights[k]
        y[v] = acc
    sq = 0.0
    for v in range(n):
        sq += y[v] * y[v]
    norm = math.sqrt(sq)
    diff = 0.0
    if norm > 0.0:
        inv = 1.0 / norm
        for v in range(n):
            value = y[v] * inv
            diff += abs(value - dst[v])
            dst[v] = value
    return diff


def closeness_kernel(indptr, indices, lengths):
    """Harmonic closeness over shortest paths with edge length 1/weight."""
    indptr = indptr.tolist()
    indices = indices.tolist()
    lengths = lengths.tolist()
    n = len(indptr) - 1
    scores = [0.0] * n
    dist = [0.0] * n
    done = [False] * n
    for s in range(n):
        for v in range(n):
            dist[v] = _INF
            done[v] = False
        dist[s] = 0.0
        total = 0.0
        while True:
            best = -1
            best_d = _INF
            for v in range(n):
                if not done[v] and dist[v] < best_d:
                    best_d = dist[v]
                    best = v
            if best < 0:
                break
            done[best] = True
            if best != s:
                total += 1.0 / best_d
            for k in range(indptr[best], indptr[best + 1]):
                w = indices[k]
                if done[w]:
                    continue
                nd = best_d + lengths[k]
                if nd < dist[w]:
                    dist[w] = nd
        scores[s] = total
    return np.array(scores, dtype=np.float64)


def betweenness_kernel(indptr, indices, lengths):
    """Brandes betweenness on weighted shortest paths (lengths = 1/weight),
    with each unordered pair counted once."""
    indptr = indptr.tolist()
    indices = indices.tolist()
    lengths = lengths.tolist()
    n = len(indptr) - 1
    nnz = len(indices)
    cb = [0.0] * n
    dist = [0.0] * n
    done = [False] * n
    sigma = [0.0] * n
    delta = [0.0] * n
    pred_count = [0] * n
    preds = [0] * nnz  # predecessor slots share the CSR layout
    order = [0] * n
    for s in range(n):
        for v in range(n):
            dist[v] = _INF
            done[v] = False
            sigma[v] = 0.0
            delta[v] = 0.0
            pred_count[v] = 0
        dist[s] = 0.0
        sigma[s] = 1.0
        settled = 0
        while True:
            best = -1
            best_d = _INF
            for v in range(n):
                if not done[v] and dist[v] < best_d:
                    best_d = dist[v]
                    best = v
            if best < 0:
                break
            done[best] = True
            order[settled] = best
            settled += 1
            for k in range(indptr[best], indptr[best + 1]):
                w = indices[k]
                if done[w]:
                    continue
                nd = best_d + lengths[k]
                if nd < dist[w]:
                    dist[w] = nd
                    sigma[w] = sigma[best]
                    preds[indptr[w]] = best
                    pred_count[w] = 1
                elif nd == dist[w]:
                    sigma[w] += sigma[best]
                    preds[indptr[w] + pred_count[w]] = best
                    pred_count[w] += 1
        for t in range(settled - 1, -1, -1):
            w = order[t]
            coeff = (1.0 + delta[w]) / sigma[w]
            for q in range(pred_count[w]):
                v = preds[indptr[w] + q]
                delta[v] += sigma[v] * coeff
            if w != s:
                cb[w] += delta[w]
    for v in range(n):
        cb[v] *= 0.5
    return np.array(cb, dtype=np.float64)
