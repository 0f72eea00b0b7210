# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled word scanning kernels; see ``_kernels_py`` for the contracts."""

from libc.string cimport memcmp


def count_overlapping(bytes hay, bytes needle):
    cdef Py_ssize_t n = len(hay), m = len(needle), i, count = 0
    cdef const unsigned char* h = hay
    cdef const unsigned char* p = needle
    cdef unsigned char c0
    if m == 0:
        raise ValueError("empty pattern")
    if m > n:
        return 0
    c0 = p[0]
    for i in range(n - m + 1):
        if h[i] == c0 and memcmp(h + i, p, m) == 0:
            count += 1
    return count


def factor_counts(bytes word, Py_ssize_t maxlen, bint cyclic):
    cdef Py_ssize_t n = len(word), k, i, reps, top
    cdef dict out = {}
    cdef bytes ext, key
    if n == 0:
        return out
    if cyclic:
        reps = maxlen // n + 2
        ext = word * reps
        for k in range(1, maxlen + 1):
            for i in range(n):
                key = ext[i:i + k]
                out[key] = out.get(key, 0) + 1
    else:
        top = maxlen if maxlen < n else n
        for k in range(1, top + 1):
            for i in range(n - k + 1):
                key = word[i:i + k]
                out[key] = out.get(key, 0) + 1
    return out


def factor_set(bytes word, Py_ssize_t maxlen):
    cdef Py_ssize_t n = len(word), k, i, top
    cdef set out = set()
    top = maxlen if maxlen < n else n
    for k in range(1, top + 1):
        for i in range(n - k + 1):
            out.add(word[i:i + k])
    return out


def essential_factor_counts(bytes image, Py_ssize_t first, Py_ssize_t last,
                            Py_ssize_t maxlen):
    cdef Py_ssize_t n = len(image), p, e, e0, e1, lo_end = n - last
    cdef dict out = {}
    cdef bytes key
    if first > n:
        first = n
    for p in range(first):
        e0 = p if p > lo_end else lo_end
        e1 = p + maxlen - 1
        if e1 > n - 1:
            e1 = n - 1
        for e in range(e0, e1 + 1):
            key = image[p:e + 1]
            out[key] = out.get(key, 0) + 1
    return out
