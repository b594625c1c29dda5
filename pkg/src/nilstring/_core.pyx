# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contracts as ``_pycore``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def closure(table, seeds, Py_ssize_t identity):
    cdef const int[:, ::1] t = np.ascontiguousarray(table, dtype=np.int32)
    cdef const long long[::1] s = np.ascontiguousarray(seeds, dtype=np.int64)
    cdef Py_ssize_t n = t.shape[0]
    cdef Py_ssize_t ns = s.shape[0]
    seen_arr = np.zeros(n, dtype=np.uint8)
    queue_arr = np.empty(n, dtype=np.int64)
    cdef unsigned char[::1] seen = seen_arr
    cdef long long[::1] queue = queue_arr
    cdef Py_ssize_t head = 0, tail = 1, k
    cdef long long x, y
    seen[identity] = 1
    queue[0] = identity
    while head < tail:
        x = queue[head]
        head += 1
        for k in range(ns):
            y = t[x, s[k]]
            if not seen[y]:
                seen[y] = 1
                queue[tail] = y
                tail += 1
    return seen_arr.astype(bool)


def extend_hom(table_g, gens, table_h, images, Py_ssize_t id_g, Py_ssize_t id_h):
    cdef const int[:, ::1] tg = np.ascontiguousarray(table_g, dtype=np.int32)
    cdef const int[:, ::1] th = np.ascontiguousarray(table_h, dtype=np.int32)
    cdef const long long[::1] g = np.ascontiguousarray(gens, dtype=np.int64)
    cdef const long long[::1] h = np.ascontiguousarray(images, dtype=np.int64)
    cdef Py_ssize_t n_g = tg.shape[0]
    cdef Py_ssize_t n_h = th.shape[0]
    cdef Py_ssize_t ng = g.shape[0]
    phi_arr = np.full(n_g, -1, dtype=np.int64)
    used_arr = np.zeros(n_h, dtype=np.uint8)
    queue_arr = np.empty(n_g, dtype=np.int64)
    cdef long long[::1] phi = phi_arr
    cdef unsigned char[::1] used = used_arr
    cdef long long[::1] queue = queue_arr
    cdef Py_ssize_t head = 0, tail = 1, k
    cdef long long x, y, img, px
    phi[id_g] = id_h
    used[id_h] = 1
    queue[0] = id_g
    while head < tail:
        x = queue[head]
        head += 1
        px = phi[x]
        for k in range(ng):
            y = tg[x, g[k]]
            img = th[px, h[k]]
            if phi[y] < 0:
                if used[img]:
                    return -1, phi_arr
                phi[y] = img
                used[img] = 1
                queue[tail] = y
                tail += 1
            elif phi[y] != img:
                return -1, phi_arr
    return tail, phi_arr
