"""Brute-force G(n) and H(n) from group orders, bypassing the product formula.

G(n) is the gcd of |GL_n(Z/NZ)| over moduli N >= 3, and H(n) the gcd of
|GSp_2n(Z/NZ)|. Orders are multiplicative over the prime-power factorization
of N, with

    |GL_n(Z/p^k)|   = p^((k-1) n^2) * prod_{i<n} (p^n - p^i)
    |GSp_2g(Z/p^k)| = p^((k-1)(2g^2+g+1)) * (p-1) p^(g^2) prod_{i=1..g} (p^(2i) - 1)
"""

from __future__ import annotations

import dataclasses
import math

from minkphi.errors import DomainError
from minkphi.primes import factorize

GSP_CONVENTION = "genus-g groups of 2g x 2g matrices (GSp_2g)"


def _gl_prime_field(n, p):
    out = 1
    pn = p**n
    for i in range(n):
        out *= pn - p**i
    return out


def gl_order(n: int, N: int) -> int:
    if n < 1 or N < 2:
        raise DomainError("gl_order needs n >= 1 and N >= 2")
    out = 1
    for p, k in factorize(N).items():
        out *= p ** ((k - 1) * n * n) * _gl_prime_field(n, p)
    return out


def _gsp_prime_field(g, p):
    out = (p - 1) * p ** (g * g)
    for i in range(1, g + 1):
        out *= p ** (2 * i) - 1
    return out


def gsp_order(g: int, N: int) -> int:
    """Order of GSp_2g(Z/NZ) (symplectic similitudes of a 2g-dimensional form)."""
    if g < 1 or N < 2:
        raise DomainError("gsp_order needs g >= 1 and N >= 2")
    dim = 2 * g * g + g + 1
    out = 1
    for p, k in factorize(N).items():
        out *= p ** ((k - 1) * dim) * _gsp_prime_field(g, p)
    return out


@dataclasses.dataclass(frozen=True)
class GcdScan:
    """Result of scanning moduli 3..last for a gcd of group orders."""

    value: int
    last_modulus: int
    last_change: int
    stopped_early: bool
    history: tuple  # (modulus, gcd) each time the gcd dropped


def gcd_scan(order, n, n_max, target=None, patience=50):
    """gcd of ``order(n, N)`` for N = 3..n_max.

    Stops early once the gcd has been unchanged for ``patience`` consecutive
    moduli and equals ``target`` (when a target is given).
    """
    if n_max < 3:
        raise DomainError("need N_max >= 3")
    g = 0
    last_change = 3
    history = []
    for N in range(3, n_max + 1):
        new = math.gcd(g, order(n, N))
        if new != g:
            g = new
            last_change = N
            history.append((N, g))
        elif target is not None and g == target and N - last_change >= patience:
            return GcdScan(g, N, last_change, True, tuple(history))
    return GcdScan(g, n_max, last_change, False, tuple(history))


def g_by_gcd(n: int, n_max: int, early_stop=False) -> int:
    """gcd of |GL_n(Z/NZ)| over 3 <= N <= n_max."""
    if n < 1:
        raise DomainError("n must be >= 1")
    target = None
    if early_stop:
        from minkphi.minkowski import g_exact

        target = g_exact(n)[1]
    return gcd_scan(gl_order, n, n_max, target).value


def h_by_gcd(g: int, n_max: int) -> int:
    """gcd of |GSp_2g(Z/NZ)| over 3 <= N <= n_max (convention: see GSP_CONVENTION)."""
    if g < 1:
        raise DomainError("g must be >= 1")
    return gcd_scan(gsp_order, g, n_max).value
