# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled closure kernels over a group multiplication table."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef Py_ssize_t _close(const int[:, ::1] table, unsigned char[::1] mask,
                       const int[::1] gens, int[::1] queue, Py_ssize_t limit) noexcept nogil:
    cdef Py_ssize_t n = mask.shape[0]
    cdef Py_ssize_t ng = gens.shape[0]
    cdef Py_ssize_t head = 0, tail = 0, i, j
    cdef int x, y
    for i in range(n):
        if mask[i]:
            queue[tail] = <int>i
            tail += 1
    while head < tail:
        x = queue[head]
        head += 1
        for j in range(ng):
            y = table[x, gens[j]]
            if not mask[y]:
                mask[y] = 1
                queue[tail] = y
                tail += 1
                if tail > limit:
                    return -1
    return tail


def closure_mask(const int[:, ::1] table, unsigned char[::1] mask,
                 const int[::1] gens, Py_ssize_t limit):
    """Close ``mask`` in place under right multiplication by ``gens``.

    Returns the size of the closed set, or -1 as soon as it exceeds ``limit``
    (the mask is then left partially filled).
    """
    cdef int[::1] queue = np.empty(mask.shape[0], dtype=np.int32)
    cdef Py_ssize_t r
    with nogil:
        r = _close(table, mask, gens, queue, limit)
    return r


def join_many(const int[:, ::1] table, unsigned char[::1] base,
              const int[::1] gens, const int[::1] extra, Py_ssize_t limit):
    """Join the closed set ``base`` (generated by ``gens``) with each element of ``extra``.

    Row ``k`` of the returned uint8 matrix is the closure of ``base`` with
    ``gens + [extra[k]]``; ``sizes[k]`` is its size or -1 past ``limit``.
    """
    cdef Py_ssize_t n = base.shape[0]
    cdef Py_ssize_t m = extra.shape[0]
    cdef Py_ssize_t ng = gens.shape[0]
    out_arr = np.empty((m, n), dtype=np.uint8)
    sizes_arr = np.empty(m, dtype=np.int64)
    cdef unsigned char[:, ::1] out = out_arr
    cdef long long[::1] sizes = sizes_arr
    cdef int[::1] g2 = np.empty(ng + 1, dtype=np.int32)
    cdef int[::1] queue = np.empty(n, dtype=np.int32)
    cdef Py_ssize_t k, i
    with nogil:
        for i in range(ng):
            g2[i] = gens[i]
        for k in range(m):
            out[k, :] = base
            g2[ng] = extra[k]
            sizes[k] = _close(table, out[k], g2, queue, limit)
    return out_arr, sizes_arr
