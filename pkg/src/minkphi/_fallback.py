"""Pure Python / numpy versions of the compiled kernels.

Used when the extension module is not built, and as the reference side in
the kernel equivalence tests and the benchmark.
"""

import numpy as np


def prime_sieve(limit):
    s = np.ones(limit + 1, dtype=np.bool_)
    s[: min(2, limit + 1)] = False
    for i in range(2, int(limit**0.5) + 1):
        if s[i]:
            s[i * i :: i] = False
    return s


def smallest_factor_sieve(limit):
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, int(limit**0.5) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    rest = np.flatnonzero(spf == 0)
    rest = rest[rest >= 2]
    spf[rest] = rest
    return spf


def totient_sieve(limit):
    phi = np.arange(limit + 1, dtype=np.int64)
    for p in range(2, limit + 1):
        if phi[p] == p:
            phi[p::p] -= phi[p::p] // p
    return phi


def totient_from_spf(spf):
    spf = np.asarray(spf, dtype=np.int64)
    limit = len(spf) - 1
    m = np.arange(limit + 1, dtype=np.int64)
    phi = m.copy()
    rem = m.copy()
    rem[0] = 1
    # strip one distinct prime per pass; at most log2(limit) passes
    while True:
        active = np.flatnonzero(rem > 1)
        if active.size == 0:
            break
        p = spf[rem[active]]
        phi[active] = phi[active] // p * (p - 1)
        r = rem[active] // p
        while True:
            again = r % p == 0
            if not again.any():
                break
            r[again] //= p[again]
        rem[active] = r
    phi[0] = 0
    return phi


def inverse_max(phi):
    phi = np.asarray(phi, dtype=np.int64)
    inv = np.zeros(len(phi), dtype=np.int64)
    np.maximum.at(inv, phi[1:], np.arange(1, len(phi), dtype=np.int64))
    return inv


def max_over_divisors(inv, n_max):
    inv = np.asarray(inv, dtype=np.int64)
    best = np.zeros(n_max + 1, dtype=np.int64)
    top = min(2 * n_max, len(inv) - 1)
    for d in np.flatnonzero(inv[: top + 1]):
        d = int(d)
        if d == 0:
            continue
        step = d // 2 if d % 2 == 0 else d
        view = best[step::step]
        np.maximum(view, inv[d], out=view)
    return best


def scan_max_dividing(phi, start, target):
    window = np.asarray(phi[1 : start + 1], dtype=np.int64)
    hits = np.flatnonzero(target % window == 0)
    return int(hits[-1]) + 1 if hits.size else 0


def minkowski_exponents(n, primes):
    out = np.zeros(len(primes), dtype=np.int64)
    for i, q in enumerate(primes):
        q = int(q)
        if q == 2:
            total = n // 2
            d = 1
            while d <= n:
                total += n // d
                d *= 2
        else:
            total = 0
            d = q - 1
            while d <= n:
                total += n // d
                d *= q
        out[i] = total
    return out
