# cython: language_level=3
"""Compiled inner loops. Signatures mirror :mod:`minkphi._fallback`."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t

cnp.import_array()


def prime_sieve(Py_ssize_t limit):
    cdef cnp.ndarray[uint8_t, ndim=1] out = np.ones(limit + 1, dtype=np.uint8)
    cdef uint8_t[::1] s = out
    cdef Py_ssize_t i, j
    s[0] = 0
    if limit >= 1:
        s[1] = 0
    i = 2
    while i * i <= limit:
        if s[i]:
            j = i * i
            while j <= limit:
                s[j] = 0
                j += i
        i += 1
    return out.view(np.bool_)


def smallest_factor_sieve(Py_ssize_t limit):
    cdef cnp.ndarray[int64_t, ndim=1] out = np.zeros(limit + 1, dtype=np.int64)
    cdef int64_t[::1] spf = out
    cdef Py_ssize_t i, j
    for i in range(2, limit + 1):
        if spf[i] == 0:
            spf[i] = i
            if i * i <= limit:
                j = i * i
                while j <= limit:
                    if spf[j] == 0:
                        spf[j] = i
                    j += i
    return out


def totient_sieve(Py_ssize_t limit):
    cdef cnp.ndarray[int64_t, ndim=1] out = np.arange(limit + 1, dtype=np.int64)
    cdef int64_t[::1] phi = out
    cdef Py_ssize_t p, j
    for p in range(2, limit + 1):
        if phi[p] == p:
            j = p
            while j <= limit:
                phi[j] -= phi[j] // p
                j += p
    return out


def totient_from_spf(const int64_t[::1] spf):
    cdef Py_ssize_t limit = spf.shape[0] - 1
    cdef cnp.ndarray[int64_t, ndim=1] out = np.zeros(limit + 1, dtype=np.int64)
    cdef int64_t[::1] phi = out
    cdef Py_ssize_t m
    cdef int64_t p, r
    if limit >= 1:
        phi[1] = 1
    for m in range(2, limit + 1):
        p = spf[m]
        r = m // p
        if r % p == 0:
            phi[m] = phi[r] * p
        else:
            phi[m] = phi[r] * (p - 1)
    return out


def inverse_max(const int64_t[::1] phi):
    cdef Py_ssize_t size = phi.shape[0]
    cdef cnp.ndarray[int64_t, ndim=1] out = np.zeros(size, dtype=np.int64)
    cdef int64_t[::1] inv = out
    cdef Py_ssize_t m
    # increasing m, so the last write is the maximum preimage
    for m in range(1, size):
        inv[phi[m]] = m
    return out


def max_over_divisors(const int64_t[::1] inv, Py_ssize_t n_max):
    cdef cnp.ndarray[int64_t, ndim=1] out = np.zeros(n_max + 1, dtype=np.int64)
    cdef int64_t[::1] best = out
    cdef Py_ssize_t top = 2 * n_max
    cdef Py_ssize_t size = inv.shape[0]
    cdef Py_ssize_t d, step, k
    cdef int64_t v
    for d in range(1, min(top, size - 1) + 1):
        v = inv[d]
        if v == 0:
            continue
        # n with d | 2n
        step = d // 2 if d % 2 == 0 else d
        k = step
        while k <= n_max:
            if v > best[k]:
                best[k] = v
            k += step
    return out


def scan_max_dividing(const int64_t[::1] phi, Py_ssize_t start, int64_t target):
    cdef Py_ssize_t m = start
    while m >= 1:
        if target % phi[m] == 0:
            return m
        m -= 1
    return 0


def minkowski_exponents(int64_t n, const int64_t[::1] primes):
    cdef Py_ssize_t count = primes.shape[0]
    cdef cnp.ndarray[int64_t, ndim=1] out = np.zeros(count, dtype=np.int64)
    cdef int64_t[::1] r = out
    cdef Py_ssize_t i
    cdef int64_t q, d, total
    for i in range(count):
        q = primes[i]
        total = 0
        if q == 2:
            total = n // 2
            d = 1
            while d <= n:
                total += n // d
                d *= 2
        else:
            d = q - 1
            while d <= n:
                total += n // d
                d *= q
        r[i] = total
    return out
