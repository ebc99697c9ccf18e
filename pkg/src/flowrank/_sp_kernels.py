"""Compiled shortest-path kernels (Dijkstra / Brandes / packet-load).

All kernels take a CSR adjacency (indptr, indices, lengths) where lengths
are the inverse-flow edge lengths, plus an explicit array of source nodes,
and return unnormalized per-node accumulations for that source slice.
Callers partition sources across workers and reduce in a fixed order, so
results are reproducible bit-for-bit at any fixed worker count.

Predecessor sets are stored as linked lists threaded through CSR edge
slots: each directed edge can appear at most once per source as a
predecessor relation, so the slot index doubles as the list cell. The
binary heap is lazy (stale entries skipped via the settled flag); pushes
are bounded by one per strict relaxation, so capacity m + 1 suffices.

Shortest-path ties are recognized by exact float equality. Both distances
being compared are left-to-right sums of edge lengths from the source, so
equal paths compare equal with no tolerance needed.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _heap_push(heap_d, heap_v, size, d, v):
    i = size
    heap_d[i] = d
    heap_v[i] = v
    while i > 0:
        parent = (i - 1) >> 1
        if heap_d[parent] <= heap_d[i]:
            break
        heap_d[parent], heap_d[i] = heap_d[i], heap_d[parent]
        heap_v[parent], heap_v[i] = heap_v[i], heap_v[parent]
        i = parent
    return size + 1


@njit(cache=True, nogil=True)
def _heap_pop(heap_d, heap_v, size):
    d = heap_d[0]
    v = heap_v[0]
    size -= 1
    heap_d[0] = heap_d[size]
    heap_v[0] = heap_v[size]
    i = 0
    while True:
        left = 2 * i + 1
        right = left + 1
        smallest = i
        if left < size and heap_d[left] < heap_d[smallest]:
            smallest = left
        if right < size and heap_d[right] < heap_d[smallest]:
            smallest = right
        if smallest == i:
            break
        heap_d[smallest], heap_d[i] = heap_d[i], heap_d[smallest]
        heap_v[smallest], heap_v[i] = heap_v[i], heap_v[smallest]
        i = smallest
    return d, v, size


@njit(cache=True, nogil=True)
def _sssp(source, indptr, indices, lengths, dist, sigma, settled, order,
          pred_head, pred_next, pred_node, heap_d, heap_v):
    """Dijkstra from one source. Returns the number of settled nodes.

    Fills dist, sigma (shortest-path counts), settle order, and the
    predecessor DAG (linked lists over edge slots).
    """
    n = dist.shape[0]
    for i in range(n):
        dist[i] = np.inf
        sigma[i] = 0.0
        settled[i] = 0
        pred_head[i] = -1
    dist[source] = 0.0
    sigma[source] = 1.0
    heap_size = _heap_push(heap_d, heap_v, 0, 0.0, source)
    count = 0
    while heap_size > 0:
        d, v, heap_size = _heap_pop(heap_d, heap_v, heap_size)
        if settled[v]:
            continue
        settled[v] = 1
        order[count] = v
        count += 1
        for e in range(indptr[v], indptr[v + 1]):
            w = indices[e]
            if settled[w]:
                continue
            nd = d + lengths[e]
            if nd < dist[w]:
                dist[w] = nd
                sigma[w] = sigma[v]
                pred_head[w] = e
                pred_next[e] = -1
                pred_node[e] = v
                heap_size = _heap_push(heap_d, heap_v, heap_size, nd, w)
            elif nd == dist[w]:
                sigma[w] += sigma[v]
                pred_node[e] = v
                pred_next[e] = pred_head[w]
                pred_head[w] = e
    return count


@njit(cache=True, nogil=True)
def betweenness_pass(indptr, indices, lengths, sources, n):
    """Brandes accumulation over the given sources; raw (unnormalized),
    ordered-pair convention, endpoints excluded."""
    m = indices.shape[0]
    bc = np.zeros(n, np.float64)
    dist = np.empty(n, np.float64)
    sigma = np.empty(n, np.float64)
    delta = np.empty(n, np.float64)
    settled = np.empty(n, np.uint8)
    order = np.empty(n, np.int64)
    pred_head = np.empty(n, np.int64)
    pred_next = np.empty(m, np.int64)
    pred_node = np.empty(m, np.int64)
    heap_d = np.empty(m + 2, np.float64)
    heap_v = np.empty(m + 2, np.int64)
    for si in range(sources.shape[0]):
        s = sources[si]
        count = _sssp(s, indptr, indices, lengths, dist, sigma, settled,
                      order, pred_head, pred_next, pred_node, heap_d, heap_v)
        for i in range(n):
            delta[i] = 0.0
        for idx in range(count - 1, 0, -1):
            w = order[idx]
            coeff = (1.0 + delta[w]) / sigma[w]
            e = pred_head[w]
            while e != -1:
                delta[pred_node[e]] += sigma[pred_node[e]] * coeff
                e = pred_next[e]
            bc[w] += delta[w]
    return bc


@njit(cache=True, nogil=True)
def load_pass(indptr, indices, lengths, sources, n):
    """Packet-splitting load over the given sources; raw, endpoints excluded.

    Every settled node t != s demands one unit from s. Processing nodes in
    non-increasing distance order, each node's gathered mass (own demand
    plus through-traffic) splits equally among its predecessors. The
    through-traffic alone is the node's load. Summed over all sources this
    equals the forward model where each (s,t) packet divides evenly among
    shortest-path successors at every hop.
    """
    m = indices.shape[0]
    lc = np.zeros(n, np.float64)
    dist = np.empty(n, np.float64)
    sigma = np.empty(n, np.float64)
    mass = np.empty(n, np.float64)
    settled = np.empty(n, np.uint8)
    order = np.empty(n, np.int64)
    pred_head = np.empty(n, np.int64)
    pred_next = np.empty(m, np.int64)
    pred_node = np.empty(m, np.int64)
    heap_d = np.empty(m + 2, np.float64)
    heap_v = np.empty(m + 2, np.int64)
    for si in range(sources.shape[0]):
        s = sources[si]
        count = _sssp(s, indptr, indices, lengths, dist, sigma, settled,
                      order, pred_head, pred_next, pred_node, heap_d, heap_v)
        for i in range(n):
            mass[i] = 0.0
        for idx in range(count - 1, 0, -1):
            w = order[idx]
            lc[w] += mass[w]
            total = mass[w] + 1.0
            npred = 0
            e = pred_head[w]
            while e != -1:
                npred += 1
                e = pred_next[e]
            share = total / npred
            e = pred_head[w]
            while e != -1:
                mass[pred_node[e]] += share
                e = pred_next[e]
    return lc


@njit(cache=True, nogil=True)
def closeness_pass(indptr, indices, lengths, sources, n):
    """Per-source distance sums and reach counts (including the source)."""
    m = indices.shape[0]
    k = sources.shape[0]
    dist_sum = np.zeros(k, np.float64)
    reached = np.zeros(k, np.int64)
    dist = np.empty(n, np.float64)
    sigma = np.empty(n, np.float64)
    settled = np.empty(n, np.uint8)
    order = np.empty(n, np.int64)
    pred_head = np.empty(n, np.int64)
    pred_next = np.empty(m, np.int64)
    pred_node = np.empty(m, np.int64)
    heap_d = np.empty(m + 2, np.float64)
    heap_v = np.empty(m + 2, np.int64)
    for si in range(k):
        s = sources[si]
        count = _sssp(s, indptr, indices, lengths, dist, sigma, settled,
                      order, pred_head, pred_next, pred_node, heap_d, heap_v)
        total = 0.0
        for idx in range(count):
            total += dist[order[idx]]
        dist_sum[si] = total
        reached[si] = count
    return dist_sum, reached
