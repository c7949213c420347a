# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled number-theory kernels (64-bit Miller-Rabin and window scans)."""

from libc.stdint cimport int64_t, uint8_t, uint64_t

cdef extern from *:
    """
    #include <stdint.h>
    static inline uint64_t osc_mulmod(uint64_t a, uint64_t b, uint64_t m) {
        return (uint64_t)(((unsigned __int128)a * b) % m);
    }
    """
    uint64_t osc_mulmod(uint64_t a, uint64_t b, uint64_t m) nogil

cdef uint64_t[12] _WITNESSES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
cdef uint64_t[15] _SMALL = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


cdef inline uint64_t _powmod(uint64_t a, uint64_t e, uint64_t m) noexcept nogil:
    cdef uint64_t r = 1
    a %= m
    while e:
        if e & 1:
            r = osc_mulmod(r, a, m)
        a = osc_mulmod(a, a, m)
        e >>= 1
    return r


cdef bint _is_prime(uint64_t n) noexcept nogil:
    cdef int i, s, r
    cdef uint64_t d, x
    if n < 2:
        return False
    for i in range(15):
        if n % _SMALL[i] == 0:
            return n == _SMALL[i]
    if n < 2209:
        return True
    d = n - 1
    s = 0
    while (d & 1) == 0:
        d >>= 1
        s += 1
    for i in range(12):
        x = _powmod(_WITNESSES[i], d, n)
        if x == 1 or x == n - 1:
            continue
        for r in range(s - 1):
            x = osc_mulmod(x, x, n)
            if x == n - 1:
                break
        else:
            return False
    return True


cdef bint _is_isolated(uint64_t p, uint64_t radius) noexcept nogil:
    cdef uint64_t d
    if not _is_prime(p):
        return False
    for d in range(1, radius + 1):
        if _is_prime(p + d):
            return False
        if p >= d and _is_prime(p - d):
            return False
    return True


def is_prime(uint64_t n):
    return _is_prime(n)


def fill_prime_mask(const uint64_t[:] values, uint8_t[:] out):
    cdef Py_ssize_t i
    with nogil:
        for i in range(values.shape[0]):
            out[i] = _is_prime(values[i])


def is_isolated(uint64_t p, uint64_t radius):
    return _is_isolated(p, radius)


def find_isolated(uint64_t a, uint64_t b, uint64_t radius, uint64_t max_k):
    cdef uint64_t k
    cdef int64_t found = -1
    with nogil:
        for k in range(max_k + 1):
            if _is_isolated(a + b * k, radius):
                found = <int64_t>k
                break
    return found


def constellation(uint64_t b, const uint64_t[:] residues, const uint8_t[:] wanted, uint64_t max_k):
    cdef uint64_t k, base
    cdef Py_ssize_t i, n = residues.shape[0]
    cdef bint ok
    cdef int64_t found = -1
    with nogil:
        for k in range(max_k + 1):
            base = b * k
            ok = True
            for i in range(n):
                if _is_prime(base + residues[i]) != (wanted[i] != 0):
                    ok = False
                    break
            if ok:
                found = <int64_t>k
                break
    return found
