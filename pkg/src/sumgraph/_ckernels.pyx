# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled graph kernels.

Twin of `_pykernels.py`: identical loops in identical order so both
backends round identically. Keep the two files in sync.
"""

from libc.math cimport INFINITY, fabs, sqrt

import numpy as np

BACKEND_NAME = "compiled"


def pagerank_kernel(indptr_arr, indices_arr, trans_arr, dangling_arr,
                    double damping, double tol, int max_iter):
    cdef long long[:] indptr = indptr_arr
    cdef long long[:] indices = indices_arr
    cdef double[:] trans = trans_arr
    cdef unsigned char[:] dangling = dangling_arr
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef double base = (1.0 - damping) / n
    cdef double inv_n = 1.0 / n

    x_arr = np.full(n, inv_n, dtype=np.float64)
    x_new_arr = np.zeros(n, dtype=np.float64)
    cdef double[:] x = x_arr
    cdef double[:] x_new = x_new_arr
    cdef double[:] tmp

    cdef int iterations = 0
    cdef bint converged = False
    cdef Py_ssize_t u, v
    cdef long long k
    cdef double dm, dm_n, diff, acc, value

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
            diff += fabs(value - x[v])
        tmp = x
        x = x_new
        x_new = tmp
        if diff < tol:
            converged = True
            break
    return np.asarray(x).copy(), iterations, converged


cdef double _multiply_normalize(long long[:] indptr, long long[:] indices,
                                double[:] weights, double[:] src,
                                double[:] dst, double[:] scratch,
                                Py_ssize_t n):
    cdef Py_ssize_t v
    cdef long long k
    cdef double acc, sq, norm, inv, value, diff
    for v in range(n):
        acc = 0.0
        for k in range(indptr[v], indptr[v + 1]):
            acc += src[indices[k]] * weights[k]
        scratch[v] = acc
    sq = 0.0
    for v in range(n):
        sq += scratch[v] * scratch[v]
    norm = sqrt(sq)
    diff = 0.0
    if norm > 0.0:
        inv = 1.0 / norm
        for v in range(n):
            value = scratch[v] * inv
            diff += fabs(value - dst[v])
            dst[v] = value
    return diff


def hits_kernel(indptr_arr, indices_arr, weights_arr, double tol, int max_iter):
    cdef long long[:] indptr = indptr_arr
    cdef long long[:] indices = indices_arr
    cdef double[:] weights = weights_arr
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef double start = 1.0 / sqrt(<double> n)

    auth_arr = np.full(n, start, dtype=np.float64)
    hub_arr = np.full(n, start, dtype=np.float64)
    scratch_arr = np.zeros(n, dtype=np.float64)
    cdef double[:] auth = auth_arr
    cdef double[:] hub = hub_arr
    cdef double[:] scratch = scratch_arr

    cdef int iterations = 0
    cdef bint converged = False
    cdef double diff_a, diff_h

    while iterations < max_iter:
        iterations += 1
        diff_a = _multiply_normalize(indptr, indices, weights, hub, auth, scratch, n)
        diff_h = _multiply_normalize(indptr, indices, weights, auth, hub, scratch, n)
        if diff_a < tol and diff_h < tol:
            converged = True
            break
    return auth_arr, iterations, converged


def closeness_kernel(indptr_arr, indices_arr, lengths_arr):
    cdef long long[:] indptr = indptr_arr
    cdef long long[:] indices = indices_arr
    cdef double[:] lengths = lengths_arr
    cdef Py_ssize_t n = indptr.shape[0] - 1

    scores_arr = np.zeros(n, dtype=np.float64)
    cdef double[:] scores = scores_arr
    dist_arr = np.zeros(n, dtype=np.float64)
    cdef double[:] dist = dist_arr
    done_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[:] done = done_arr

    cdef Py_ssize_t s, v, best, w
    cdef long long k
    cdef double best_d, total, nd

    for s in range(n):
        for v in range(n):
            dist[v] = INFINITY
            done[v] = 0
        dist[s] = 0.0
        total = 0.0
        while True:
            best = -1
            best_d = INFINITY
            for v in range(n):
                if not done[v] and dist[v] < best_d:
                    best_d = dist[v]
                    best = v
            if best < 0:
                break
            done[best] = 1
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
    return scores_arr


def betweenness_kernel(indptr_arr, indices_arr, lengths_arr):
    cdef long long[:] indptr = indptr_arr
    cdef long long[:] indices = indices_arr
    cdef double[:] lengths = lengths_arr
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t nnz = indices.shape[0]

    cb_arr = np.zeros(n, dtype=np.float64)
    cdef double[:] cb = cb_arr
    dist_arr = np.zeros(n, dtype=np.float64)
    cdef double[:] dist = dist_arr
    done_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[:] done = done_arr
    sigma_arr = np.zeros(n, dtype=np.float64)
    cdef double[:] sigma = sigma_arr
    delta_arr = np.zeros(n, dtype=np.float64)
    cdef double[:] delta = delta_arr
    pred_count_arr = np.zeros(n, dtype=np.int64)
    cdef long long[:] pred_count = pred_count_arr
    preds_arr = np.zeros(max(nnz, 1), dtype=np.int64)
    cdef long long[:] preds = preds_arr
    order_arr = np.zeros(max(n, 1), dtype=np.int64)
    cdef long long[:] order = order_arr

    cdef Py_ssize_t s, v, best, w, settled, t, q
    cdef long long k
    cdef double best_d, nd, coeff

    for s in range(n):
        for v in range(n):
            dist[v] = INFINITY
            done[v] = 0
            sigma[v] = 0.0
            delta[v] = 0.0
            pred_count[v] = 0
        dist[s] = 0.0
        sigma[s] = 1.0
        settled = 0
        while True:
            best = -1
            best_d = INFINITY
            for v in range(n):
                if not done[v] and dist[v] < best_d:
                    best_d = dist[v]
                    best = v
            if best < 0:
                break
            done[best] = 1
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
    return cb_arr
