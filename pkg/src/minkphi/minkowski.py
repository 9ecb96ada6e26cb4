"""Exact G(n), H(n) and certified evaluation of their explicit bounds.

G(n) = prod_{q <= n+1} q^{r(q)} with Minkowski's exponents

    r(2) = floor(n/2) + sum_{j>=0} floor(n/2^j)
    r(q) = sum_{j>=0} floor(n/(q^j (q-1)))      (q odd)

and H(n) = G(2n) / 2^(n-1).
"""

from __future__ import annotations

import dataclasses
import functools
import math
from fractions import Fraction
from typing import NamedTuple

import gmpy2

from minkphi import kernels
from minkphi.constants import PARTIAL_SUM_FLOOR, k_value
from minkphi.enclosure import (
    DEFAULT_PREC,
    Enclosure,
    contexts,
    int_dot,
    log2,
    log_sqrt_2pi,
)
from minkphi.errors import DomainError, InvariantError
from minkphi.primes import is_prime, prime_count, prime_logs, primes_list, require_prime
from minkphi.reports import BoundReport, certify_less

SILVERBERG_G = Fraction("6.31")


@dataclasses.dataclass(frozen=True)
class GExponents:
    """Factored G(n): prime q -> r(q), primes with r(q) = 0 omitted."""

    n: int
    exponents: dict

    def value(self) -> int:
        out = gmpy2.mpz(1)
        for q, r in self.exponents.items():
            out *= gmpy2.mpz(q) ** r
        return int(out)

    def log(self, prec=DEFAULT_PREC) -> Enclosure:
        qs = sorted(self.exponents)
        if qs and len(qs) == prime_count(qs[-1]):
            logs = prime_logs(len(qs), prec)
        else:
            logs = [Enclosure.exact(q, prec).log() for q in qs]
        return int_dot([self.exponents[q] for q in qs], logs, prec)


def minkowski_exponent(n: int, q: int) -> int:
    if n < 1:
        raise DomainError("n must be >= 1")
    require_prime(q)
    if q == 2:
        total = n // 2
        d = 1
    else:
        total = 0
        d = q - 1
    while d <= n:
        total += n // d
        d *= q
    return total


def g_exponents(n: int) -> GExponents:
    if n < 1:
        raise DomainError("n must be >= 1")
    qs = primes_list(n + 1)
    rs = kernels.minkowski_exponents(n, qs)
    # r(q) >= 1 for every q <= n+1, since q - 1 <= n
    return GExponents(n, {int(q): int(r) for q, r in zip(qs, rs)})


@functools.lru_cache(maxsize=4096)
def g_exact(n: int) -> tuple[GExponents, int]:
    ex = g_exponents(n)
    return ex, ex.value()


def h_exact(n: int) -> int:
    if n < 1:
        raise DomainError("n must be >= 1")
    ex = g_exponents(2 * n)
    if ex.exponents[2] < n - 1:
        raise InvariantError(f"2^{n - 1} does not divide G({2 * n})")
    return ex.value() >> (n - 1)


def legendre_valuation(n: int, q: int) -> int:
    """Exponent of the prime q in n!."""
    require_prime(q)
    if n < 0:
        raise DomainError("n must be >= 0")
    total = 0
    d = q
    while d <= n:
        total += n // d
        d *= q
    return total


# -- log G ---------------------------------------------------------------------


@functools.lru_cache(maxsize=65536)
def _log_g_primary(n, prec):
    return g_exponents(n).log(prec)


def log_g_identity(n: int, prec=DEFAULT_PREC) -> Enclosure:
    """log G(n) assembled term by term from the expanded floor-sum identity.

    floor(n/2) log 2 + sum_j floor(n/2^j) log 2
      + sum_{2<q<=n} log q sum_j floor(n/(q^j (q-1)))  [+ log(n+1) if n+1 prime]
    """
    if n < 2:
        raise DomainError("identity is used for n >= 2")
    l2 = log2(prec)
    total = l2 * (n // 2)
    j = 1
    while j <= n:
        total = total + l2 * (n // j)
        j *= 2
    for q in primes_list(n):
        q = int(q)
        if q == 2:
            continue
        s = 0
        d = q - 1
        while d <= n:
            s += n // d
            d *= q
        total = total + Enclosure.exact(q, prec).log() * s
    if is_prime(n + 1):
        total = total + Enclosure.exact(n + 1, prec).log()
    return total


def log_g(n: int, prec=DEFAULT_PREC, cross_check=False) -> Enclosure:
    """Enclosure of log G(n) as sum r(q) log q.

    With ``cross_check`` the identity route is evaluated too and the
    intersection is returned; disjoint results raise :class:`InvariantError`.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    primary = _log_g_primary(n, prec)
    if not cross_check:
        return primary
    return primary.intersection(log_g_identity(n, prec))


def log_bigint(x: int, prec=DEFAULT_PREC) -> Enclosure:
    """Enclosure of log x for a positive integer, straight from MPFR."""
    down, up = contexts(prec)
    x = gmpy2.mpz(x)
    return Enclosure(down.log(down.div(x, 1)), up.log(up.div(x, 1)), prec)


def log_h(n: int, prec=DEFAULT_PREC) -> Enclosure:
    return log_g(2 * n, prec) - log2(prec) * (n - 1)


def log_factorial_enclosure(n: int, prec=DEFAULT_PREC) -> Enclosure:
    """Stirling with Robbins' remainder: 1/(12n+1) < r_n < 1/(12n)."""
    if n < 1:
        raise DomainError("n must be >= 1")
    base = log_sqrt_2pi(prec) + Enclosure.exact(n, prec).log() * Fraction(2 * n + 1, 2) - n
    lo = base + Fraction(1, 12 * n + 1)
    hi = base + Fraction(1, 12 * n)
    return Enclosure(lo.lo, hi.hi, prec)


# -- log G sandwich ------------------------------------------------------------


class Sandwich(NamedTuple):
    lower: Enclosure
    upper: Enclosure
    main: Enclosure


def _lower_terms(m, prec, log2_coeff, robbins_den):
    """Left-hand side of the log G sandwich at argument m (m = n for G, 2n for H)."""
    k = k_value(prec)
    lm = Enclosure.exact(m, prec).log()
    sm = Enclosure.exact(m, prec).sqrt()
    out = (
        -(sm * lm) / 2
        - sm * 4
        - sm * 7 / lm
        - lm * Fraction(5, 4)
        + log2(prec) * log2_coeff
        + log_sqrt_2pi(prec)
        - k
        - Fraction(13, 4)
        - 1 / lm
        - lm / (sm * 4)
        - 1 / (sm * 4)
    )
    if robbins_den is not None:
        out = out + Fraction(1, robbins_den)
    return out


def _upper_terms(m, prec, log2_coeff, robbins_den):
    lm = Enclosure.exact(m, prec).log()
    sm = Enclosure.exact(m, prec).sqrt()
    return (
        (sm * lm) / 2
        + sm * 4
        + sm * 7 / lm
        + lm / 2
        + 3
        + log_sqrt_2pi(prec)
        + log2(prec) * log2_coeff
        - PARTIAL_SUM_FLOOR
        + 1 / lm
        + Fraction(1, robbins_den)
    )


def g_main_term(n, prec=DEFAULT_PREC):
    """n log n + n (3/2 log 2 - 1 + K)."""
    ln = Enclosure.exact(n, prec).log()
    return ln * n + (log2(prec) * Fraction(3, 2) - 1 + k_value(prec)) * n


def h_main_term(n, prec=DEFAULT_PREC):
    """2n log n + n (4 log 2 - 2 + 2K)."""
    ln = Enclosure.exact(n, prec).log()
    return ln * (2 * n) + (log2(prec) * 4 - 2 + k_value(prec) * 2) * n


def theorem1_bounds(n: int, prec=DEFAULT_PREC) -> Sandwich:
    """(l_G(n), u_G(n), main) so that main + l_G <= log G(n) <= main + u_G."""
    if n < 2:
        raise DomainError("the log G sandwich needs n >= 2")
    lower = _lower_terms(n, prec, Fraction(1, 2), 12 * n + 1)
    upper = _upper_terms(n, prec, -1, 12 * n)
    return Sandwich(lower, upper, g_main_term(n, prec))


def l_g(n, prec=DEFAULT_PREC):
    return theorem1_bounds(n, prec).lower


def big_l_g(n, prec=DEFAULT_PREC):
    """l_G(n) without its trailing 1/(12n+1) term (still a valid lower bound)."""
    if n < 2:
        raise DomainError("n must be >= 2")
    return _lower_terms(n, prec, Fraction(1, 2), None)


def u_g(n, prec=DEFAULT_PREC):
    return theorem1_bounds(n, prec).upper


def corollary_h_bounds(n: int, prec=DEFAULT_PREC) -> Sandwich:
    """(l_H(n), u_H(n), main) for log H(n) - [2n log n + n(4 log 2 - 2 + 2K)]."""
    if n < 2:
        raise DomainError("the log H sandwich needs n >= 2")
    lower = _lower_terms(2 * n, prec, Fraction(3, 2), 24 * n + 1)
    upper = _upper_terms(2 * n, prec, 0, 24 * n)
    return Sandwich(lower, upper, h_main_term(n, prec))


def log_g_sandwich_check(n, prec=DEFAULT_PREC) -> list[BoundReport]:
    """Both halves of the log G sandwich at n."""

    def lower(p):
        b = theorem1_bounds(n, p)
        return b.main + b.lower, log_g(n, p)

    def upper(p):
        b = theorem1_bounds(n, p)
        return log_g(n, p), b.main + b.upper

    return [
        certify_less("logG_lower", n, lower, prec=prec, strict=False),
        certify_less("logG_upper", n, upper, prec=prec, strict=False),
    ]


def log_h_sandwich_check(n, prec=DEFAULT_PREC) -> list[BoundReport]:
    def lower(p):
        b = corollary_h_bounds(n, p)
        return b.main + b.lower, log_h(n, p)

    def upper(p):
        b = corollary_h_bounds(n, p)
        return log_h(n, p), b.main + b.upper

    return [
        certify_less("logH_lower", n, lower, prec=prec, strict=False),
        certify_less("logH_upper", n, upper, prec=prec, strict=False),
    ]


# -- simplified bounds ---------------------------------------------------------


def _sqrt_log(m, prec):
    return Enclosure.exact(m, prec).sqrt() * Enclosure.exact(m, prec).log()


def log_g_deviation_check(n, prec=DEFAULT_PREC):
    """|log G(n) - main| <= 3/2 sqrt(n) log n for n >= 2."""
    if n < 2:
        raise DomainError("n must be >= 2")

    def build(p):
        return abs(log_g(n, p) - g_main_term(n, p)), _sqrt_log(n, p) * Fraction(3, 2)

    return certify_less("logG_deviation", n, build, prec=prec, strict=False)


def log_h_deviation_check(n, prec=DEFAULT_PREC):
    """|log H(n) - main_H| <= 6/5 sqrt(2n) log 2n for n >= 2."""
    if n < 2:
        raise DomainError("n must be >= 2")

    def build(p):
        return abs(log_h(n, p) - h_main_term(n, p)), _sqrt_log(2 * n, p) * Fraction(6, 5)

    return certify_less("logH_deviation", n, build, prec=prec, strict=False)


def g_power_check(n, prec=DEFAULT_PREC):
    """G(n) <= (2 sqrt(3) n)^n, compared in log space; exact fallback G^2 vs (12 n^2)^n."""
    if n < 1:
        raise DomainError("n must be >= 1")

    def build(p):
        rhs = (Enclosure.exact(12 * n * n, p).log() / 2) * n
        return log_g(n, p), rhs

    def exact_sign():
        g = g_exact(n)[1]
        rhs, lhs = (12 * n * n) ** n, g * g
        return (rhs > lhs) - (rhs < lhs)

    return certify_less("G_power", n, build, prec=prec, strict=False, exact_sign=exact_sign)


def h_power_check(n, prec=DEFAULT_PREC):
    """H(n) <= 2 (4 sqrt(3)/sqrt(2) n)^(2n) = 2 (24 n^2)^n."""
    if n < 1:
        raise DomainError("n must be >= 1")

    def build(p):
        rhs = log2(p) + Enclosure.exact(24 * n * n, p).log() * n
        return log_h(n, p), rhs

    def exact_sign():
        rhs, lhs = 2 * (24 * n * n) ** n, h_exact(n)
        return (rhs > lhs) - (rhs < lhs)

    return certify_less("H_power", n, build, prec=prec, strict=False, exact_sign=exact_sign)


def nice_bounds_check(n: int, prec=DEFAULT_PREC) -> list[BoundReport]:
    """The four simplified bounds that apply at n (Eqs. 5, 6 for n >= 1; 3, 4 for n >= 2)."""
    out = []
    if n >= 2:
        out += [log_g_deviation_check(n, prec), log_h_deviation_check(n, prec)]
    out += [g_power_check(n, prec), h_power_check(n, prec)]
    return out


def silverberg_comparison(n: int, prec=DEFAULT_PREC) -> BoundReport:
    """log G(n) < n log(6.31 n); notes that (2 sqrt 3)^2 = 12 < 6.31^2."""
    if n < 1:
        raise DomainError("n must be >= 1")

    def build(p):
        return log_g(n, p), Enclosure.exact(SILVERBERG_G * n, p).log() * n

    note = "2*sqrt(3) < 6.31" if 12 < SILVERBERG_G**2 else "2*sqrt(3) >= 6.31"
    return certify_less("silverberg_G", n, build, prec=prec, note=note)


def silverberg_log(n, prec=DEFAULT_PREC):
    return Enclosure.exact(SILVERBERG_G * n, prec).log() * n


# -- monotonicity probes for the simplified bounds -----------------------------


def upper_ratio_sqrt(n, prec=DEFAULT_PREC):
    """u_G(n) / (sqrt(n) log n)."""
    return u_g(n, prec) / _sqrt_log(n, prec)


def lower_ratio_sqrt(n, prec=DEFAULT_PREC):
    """L_G(n) / (sqrt(n) log n)."""
    return big_l_g(n, prec) / _sqrt_log(n, prec)


def upper_ratio_linear(n, prec=DEFAULT_PREC):
    """u_G(n) / n."""
    return u_g(n, prec) / n


# -- decomposition of log G into named error pieces ----------------------------


@dataclasses.dataclass(frozen=True)
class LogDecomposition:
    n: int
    main_term: Enclosure
    residual: Enclosure
    pieces: dict


def _frac(x: Fraction) -> Fraction:
    return x - math.floor(x)


def log_decomposition(n: int, prec=DEFAULT_PREC) -> LogDecomposition:
    """Evaluate f1, f2, S1..S8 for log G(n) (each from its defining sum).

    log G(n) = n log n + n(3/2 log 2 - 1) + f1 + f2 + S1 - S2,
    S2 = S3 + S4, S4 = S5 + S6, S5 = S7 - S8.
    """
    if n < 2:
        raise DomainError("n must be >= 2")
    l2 = log2(prec)
    ln = Enclosure.exact(n, prec).log()
    zero = Enclosure.exact(0, prec)
    f1 = l2 * (Fraction(n // 2) - Fraction(n, 2))
    if is_prime(n + 1):
        f1 = f1 + Enclosure.exact(n + 1, prec).log()
    f2 = log_bigint(math.factorial(n), prec) - ln * n + n
    s1 = s3 = s5 = s6 = s7 = s8 = zero
    for q in primes_list(n):
        q = int(q)
        if q == 2:
            continue
        lq = Enclosure.exact(q, prec).log()
        c = 0
        while q ** (c + 1) <= n:
            c += 1
        geo = sum(Fraction(1, q**j) for j in range(c + 1))
        s1 = s1 + lq * (Fraction(n, q * (q - 1)) * geo)
        small = (q - 1) ** 2 <= n  # q <= sqrt(n) + 1
        if small:
            frac = sum(_frac(Fraction(n, q**j * (q - 1))) - _frac(Fraction(n, q ** (j + 1))) for j in range(c + 1))
            s3 = s3 + lq * frac
        else:
            s5 = s5 + lq * (_frac(Fraction(n, q - 1)) - _frac(Fraction(n, q)))
            s6 = s6 + lq * Fraction(n, q * q * (q - 1))
            s7 = s7 + lq * Fraction(n, q * (q - 1))
            if n // (q - 1) - n // q == 1:
                s8 = s8 + lq
    s4 = s5 + s6
    s2 = s3 + s4
    pre = ln * n + (l2 * Fraction(3, 2) - 1) * n
    total = pre + f1 + f2 + s1 - s2
    main = g_main_term(n, prec)
    pieces = {"f1": f1, "f2": f2, "S1": s1, "S2": s2, "S3": s3, "S4": s4, "S5": s5, "S6": s6, "S7": s7, "S8": s8}
    return LogDecomposition(n, main, total - main, pieces)
