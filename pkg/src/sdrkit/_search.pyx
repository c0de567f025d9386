# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled rainbow independent set search.

Mirrors ``_search_py.max_rainbow`` exactly; see that function for the
contract. Blocks and adjacency are flattened into CSR arrays.
"""
from libc.stdlib cimport malloc, calloc, free


cdef struct Ctx:
    int nb
    int *bm_ptr
    int *bm_idx
    int *nb_ptr
    int *nb_idx
    int *blocked
    char *used
    int *chosen
    int *best
    int best_size
    int target
    long long nodes
    long long budget
    int exceeded


cdef int rec(Ctx *c, int depth) noexcept nogil:
    cdef int b, k, v, u, pick, pick_avail, live, avail, stop
    c.nodes += 1
    if c.nodes > c.budget:
        c.exceeded = 1
        return 1
    if depth > c.best_size:
        c.best_size = depth
        for b in range(c.nb):
            c.best[b] = c.chosen[b]
        if depth >= c.target:
            return 1
    pick = -1
    pick_avail = 0
    live = 0
    for b in range(c.nb):
        if c.used[b]:
            continue
        avail = 0
        for k in range(c.bm_ptr[b], c.bm_ptr[b + 1]):
            if c.blocked[c.bm_idx[k]] == 0:
                avail += 1
        if avail:
            live += 1
            if pick < 0 or avail < pick_avail:
                pick = b
                pick_avail = avail
    if depth + live <= c.best_size:
        return 0
    c.used[pick] = 1
    for k in range(c.bm_ptr[pick], c.bm_ptr[pick + 1]):
        v = c.bm_idx[k]
        if c.blocked[v]:
            continue
        c.chosen[pick] = v
        c.blocked[v] += 1
        for u in range(c.nb_ptr[v], c.nb_ptr[v + 1]):
            c.blocked[c.nb_idx[u]] += 1
        stop = rec(c, depth + 1)
        c.blocked[v] -= 1
        for u in range(c.nb_ptr[v], c.nb_ptr[v + 1]):
            c.blocked[c.nb_idx[u]] -= 1
        if stop:
            return 1
    c.chosen[pick] = -1
    if rec(c, depth):
        return 1
    c.used[pick] = 0
    return 0


cdef int *_csr(list rows, int **ptr_out) except NULL:
    cdef int n = len(rows)
    cdef int total = 0
    cdef int i, j, pos
    for row in rows:
        total += len(row)
    cdef int *ptr = <int *> malloc((n + 1) * sizeof(int))
    cdef int *idx = <int *> malloc((total + 1) * sizeof(int))
    if ptr == NULL or idx == NULL:
        free(ptr)
        free(idx)
        raise MemoryError()
    pos = 0
    for i in range(n):
        ptr[i] = pos
        for j in rows[i]:
            idx[pos] = j
            pos += 1
    ptr[n] = pos
    ptr_out[0] = ptr
    return idx


def max_rainbow(block_members, neighbors, long long target, long long budget):
    cdef Ctx c
    cdef int nb = len(block_members)
    cdef int nv = len(neighbors)
    cdef int b
    if target > nb:
        target = nb
    if target <= 0:
        return 0, [-1] * nb, 0, False
    c.nb = nb
    c.target = <int> target
    c.budget = budget
    c.nodes = 0
    c.best_size = 0
    c.exceeded = 0
    c.bm_ptr = NULL
    c.nb_ptr = NULL
    c.bm_idx = NULL
    c.nb_idx = NULL
    c.blocked = <int *> calloc(nv + 1, sizeof(int))
    c.used = <char *> calloc(nb + 1, sizeof(char))
    c.chosen = <int *> malloc((nb + 1) * sizeof(int))
    c.best = <int *> malloc((nb + 1) * sizeof(int))
    try:
        if c.blocked == NULL or c.used == NULL or c.chosen == NULL or c.best == NULL:
            raise MemoryError()
        c.bm_idx = _csr([list(r) for r in block_members], &c.bm_ptr)
        c.nb_idx = _csr([list(r) for r in neighbors], &c.nb_ptr)
        for b in range(nb):
            c.chosen[b] = -1
            c.best[b] = -1
        with nogil:
            rec(&c, 0)
        return c.best_size, [c.best[b] for b in range(nb)], c.nodes, bool(c.exceeded)
    finally:
        free(c.blocked)
        free(c.used)
        free(c.chosen)
        free(c.best)
        free(c.bm_ptr)
        free(c.bm_idx)
        free(c.nb_ptr)
        free(c.nb_idx)
