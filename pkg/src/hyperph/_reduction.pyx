# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled persistence pairing kernel.

Same contract as hyperph._reduction_py.pair_simplices; see there for the
full docstring.  Union-find handles dimension 0, column reduction of the
triangle boundary matrix handles dimension 1.
"""

from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memcpy

import numpy as np


cdef inline long long _find(long long* parent, long long x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef inline Py_ssize_t _xor_merge(const long long* a, Py_ssize_t na,
                                  const long long* b, Py_ssize_t nb,
                                  long long* out) nogil:
    cdef Py_ssize_t i = 0, j = 0, k = 0
    while i < na and j < nb:
        if a[i] < b[j]:
            out[k] = a[i]; i += 1; k += 1
        elif a[i] > b[j]:
            out[k] = b[j]; j += 1; k += 1
        else:
            i += 1; j += 1
    while i < na:
        out[k] = a[i]; i += 1; k += 1
    while j < nb:
        out[k] = b[j]; j += 1; k += 1
    return k


def pair_simplices(const signed char[::1] dims, const long long[::1] faces,
                   Py_ssize_t n):
    out = np.full(n, -1, dtype=np.int64)
    if n == 0:
        return out
    cdef long long[::1] pair_of = out

    cdef long long* parent = NULL
    cdef long long* size = NULL
    cdef long long* birth = NULL
    cdef long long* col_start = NULL   # arena offset of the column pinned at each low
    cdef long long* col_len = NULL
    cdef long long* arena = NULL
    cdef long long* cur = NULL
    cdef long long* tmp = NULL
    cdef long long* swp = NULL
    cdef Py_ssize_t arena_cap = 4 * n + 16, arena_used = 0
    cdef Py_ssize_t i, d, cur_len, new_cap
    cdef long long ru, rv, young, elder, a, b, c, t, low, start, length

    parent = <long long*> malloc(n * sizeof(long long))
    size = <long long*> malloc(n * sizeof(long long))
    birth = <long long*> malloc(n * sizeof(long long))
    col_start = <long long*> malloc(n * sizeof(long long))
    col_len = <long long*> malloc(n * sizeof(long long))
    arena = <long long*> malloc(arena_cap * sizeof(long long))
    cur = <long long*> malloc(n * sizeof(long long))
    tmp = <long long*> malloc(n * sizeof(long long))
    if (parent == NULL or size == NULL or birth == NULL or col_start == NULL
            or col_len == NULL or arena == NULL or cur == NULL or tmp == NULL):
        free(parent); free(size); free(birth); free(col_start)
        free(col_len); free(arena); free(cur); free(tmp)
        raise MemoryError()

    try:
        for i in range(n):
            parent[i] = i
            size[i] = 1
            birth[i] = i
            col_start[i] = -1
            col_len[i] = 0

        for i in range(n):
            d = dims[i]
            if d == 0:
                continue
            if d == 1:
                ru = _find(parent, faces[3 * i])
                rv = _find(parent, faces[3 * i + 1])
                if ru == rv:
                    continue
                if birth[ru] > birth[rv]:
                    young = birth[ru]; elder = birth[rv]
                else:
                    young = birth[rv]; elder = birth[ru]
                if size[ru] < size[rv]:
                    ru, rv = rv, ru
                parent[rv] = ru
                size[ru] += size[rv]
                birth[ru] = elder
                pair_of[young] = i
                pair_of[i] = young
            else:
                # sorted 3-element boundary column
                a = faces[3 * i]; b = faces[3 * i + 1]; c = faces[3 * i + 2]
                if a > b: t = a; a = b; b = t
                if b > c: t = b; b = c; c = t
                if a > b: t = a; a = b; b = t
                cur[0] = a; cur[1] = b; cur[2] = c
                cur_len = 3
                while cur_len > 0:
                    low = cur[cur_len - 1]
                    start = col_start[low]
                    if start == -1:
                        if arena_used + cur_len > arena_cap:
                            new_cap = arena_cap * 2
                            while new_cap < arena_used + cur_len:
                                new_cap *= 2
                            swp = <long long*> realloc(arena, new_cap * sizeof(long long))
                            if swp == NULL:
                                raise MemoryError()
                            arena = swp
                            arena_cap = new_cap
                        memcpy(arena + arena_used, cur, cur_len * sizeof(long long))
                        col_start[low] = arena_used
                        col_len[low] = cur_len
                        arena_used += cur_len
                        pair_of[low] = i
                        pair_of[i] = low
                        break
                    cur_len = _xor_merge(cur, cur_len, arena + start,
                                         col_len[low], tmp)
                    swp = cur; cur = tmp; tmp = swp
        return out
    finally:
        free(parent); free(size); free(birth); free(col_start)
        free(col_len); free(arena); free(cur); free(tmp)
