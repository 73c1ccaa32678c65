# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled affine permutation primitives; same API as ``_kernels_py``.

Division and modulo keep Python's floor semantics (cdivision is off), which
the window arithmetic relies on for negative values.
"""

from libc.stdlib cimport malloc, free


cdef long* _load(f, Py_ssize_t n) except NULL:
    cdef long* a = <long*> malloc((n if n else 1) * sizeof(long))
    if a == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        a[i] = f[i]
    return a


cdef tuple _dump(long* a, Py_ssize_t n):
    return tuple([a[i] for i in range(n)])


cdef void _inverse(long* f, long* inv, Py_ssize_t n):
    cdef Py_ssize_t j
    cdef long q, r
    for j in range(n):
        q = f[j] // n
        r = f[j] % n
        inv[r] = j - q * n


def length(f):
    cdef Py_ssize_t n = len(f), i, j
    cdef long* a = _load(f, n)
    cdef long total = 0, d
    for i in range(n):
        for j in range(i + 1, n):
            d = (a[j] - a[i]) // n
            total += d if d >= 0 else -d
    free(a)
    return total


def inverse(f):
    cdef Py_ssize_t n = len(f)
    cdef long* a = _load(f, n)
    cdef long* inv = _load(f, n)
    _inverse(a, inv, n)
    out = _dump(inv, n)
    free(a)
    free(inv)
    return out


def compose(f, g):
    cdef Py_ssize_t n = len(f), j
    cdef long* a = _load(f, n)
    cdef long* b = _load(g, n)
    cdef long v
    for j in range(n):
        v = b[j]
        b[j] = a[v % n] + (v // n) * n
    out = _dump(b, n)
    free(a)
    free(b)
    return out


cdef void _left_mult(long k, long* f, Py_ssize_t n):
    cdef long k1 = (k + 1) % n, r
    cdef Py_ssize_t j
    for j in range(n):
        r = f[j] % n
        if r == k:
            f[j] += 1
        elif r == k1:
            f[j] -= 1


def left_mult(k, f):
    cdef Py_ssize_t n = len(f)
    cdef long* a = _load(f, n)
    _left_mult(k, a, n)
    out = _dump(a, n)
    free(a)
    return out


cdef long _min_left_descent(long* f, long* inv, Py_ssize_t n):
    cdef Py_ssize_t k
    if n < 2:
        return -1
    _inverse(f, inv, n)
    for k in range(n - 1):
        if inv[k] > inv[k + 1]:
            return k
    if inv[n - 1] > inv[0] + n:
        return n - 1
    return -1


def is_left_descent(f, k):
    cdef Py_ssize_t n = len(f)
    cdef long* a = _load(f, n)
    cdef long* inv = _load(f, n)
    _inverse(a, inv, n)
    if k < n - 1:
        res = inv[k] > inv[k + 1]
    else:
        res = inv[n - 1] > inv[0] + n
    free(a)
    free(inv)
    return res


def min_left_descent(f):
    cdef Py_ssize_t n = len(f)
    cdef long* a = _load(f, n)
    cdef long* inv = _load(f, n)
    cdef long k = _min_left_descent(a, inv, n)
    free(a)
    free(inv)
    return k


def canonical_word(f):
    cdef Py_ssize_t n = len(f)
    cdef long* a = _load(f, n)
    cdef long* inv = _load(f, n)
    cdef long k
    letters = []
    while True:
        k = _min_left_descent(a, inv, n)
        if k < 0:
            break
        letters.append(k)
        _left_mult(k, a, n)
    m = a[0] if n else 0
    free(a)
    free(inv)
    return tuple(letters), m
