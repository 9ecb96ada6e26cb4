"""Prime sieving and the prime-indexed quantities used everywhere else."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from minkphi import kernels
from minkphi.enclosure import DEFAULT_PREC, Enclosure, enclosure_sum, euler_gamma
from minkphi.errors import DomainError, SizeError
from minkphi.reports import certify_less

_MIN_SHARED = 1 << 16


class PrimeSieve:
    """Eratosthenes bitmap over ``0..limit``. Read-only after construction."""

    def __init__(self, limit: int):
        if limit < 2:
            raise DomainError(f"sieve limit must be >= 2, got {limit}")
        self.limit = int(limit)
        flags = kernels.prime_sieve(self.limit)
        flags.flags.writeable = False
        self.is_prime = flags
        primes = np.flatnonzero(flags).astype(np.int64)
        primes.flags.writeable = False
        self.primes = primes

    def __contains__(self, m):
        if m > self.limit:
            raise SizeError(f"{m} is beyond sieve limit {self.limit}")
        return m >= 0 and bool(self.is_prime[m])

    def __iter__(self):
        return (int(p) for p in self.primes)

    def __len__(self):
        return len(self.primes)

    def count(self, x):
        """pi(x) for ``x <= limit``."""
        if x > self.limit:
            raise SizeError(f"{x} is beyond sieve limit {self.limit}")
        return int(np.searchsorted(self.primes, x, side="right"))

    def nth(self, i):
        if i < 1:
            raise DomainError("prime index starts at 1")
        if i > len(self.primes):
            raise SizeError(f"only {len(self.primes)} primes up to {self.limit}")
        return int(self.primes[i - 1])

    def up_to(self, x):
        return self.primes[: self.count(min(x, self.limit))]


_shared = None


def shared_sieve(limit):
    """Process-wide sieve covering at least ``limit``; grows geometrically."""
    global _shared
    if _shared is None or _shared.limit < limit:
        current = _shared.limit if _shared is not None else 0
        _shared = PrimeSieve(max(limit, 2 * current, _MIN_SHARED))
    return _shared


def primes_up_to(limit: int) -> PrimeSieve:
    return PrimeSieve(limit)


def primes_list(x):
    """Primes <= x as an int64 array (empty for x < 2)."""
    if x < 2:
        return np.zeros(0, dtype=np.int64)
    return shared_sieve(x).up_to(x)


def is_prime(q) -> bool:
    q = int(q)
    if q < 2:
        return False
    if q <= 10**7:
        return q in shared_sieve(q)
    for p in shared_sieve(math.isqrt(q) + 1):
        if p * p > q:
            return True
        if q % p == 0:
            return False
    return True


def require_prime(q):
    if not is_prime(q):
        raise DomainError(f"{q} is not prime")


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (fine for the small moduli used here)."""
    if n < 1:
        raise DomainError("factorize expects a positive integer")
    out = {}
    for p in shared_sieve(math.isqrt(n) + 1):
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def nth_prime(i: int) -> int:
    if i < 1:
        raise DomainError("prime index starts at 1")
    # p_i < i (log i + log log i) for i >= 6
    bound = 15 if i < 6 else int(i * (math.log(i) + math.log(math.log(i)))) + 2
    return shared_sieve(bound).nth(i)


def prime_count(x: int) -> int:
    if x < 0:
        raise DomainError("prime_count expects x >= 0")
    if x < 2:
        return 0
    return shared_sieve(x).count(x)


_log_cache: dict[int, list] = {}


def prime_logs(count, prec=DEFAULT_PREC):
    """Enclosures of ``log p`` for the first ``count`` primes (cached per precision)."""
    table = _log_cache.setdefault(prec, [])
    if len(table) < count:
        sieve = shared_sieve(nth_prime(count))
        for p in sieve.primes[len(table) : count]:
            table.append(Enclosure.exact(int(p), prec).log())
    return table[:count]


def chebyshev_theta(x: int, prec=DEFAULT_PREC) -> Enclosure:
    """theta(x) = sum of log p over primes p <= x."""
    if x < 1:
        raise DomainError("chebyshev_theta expects x >= 1")
    return enclosure_sum(prime_logs(prime_count(x), prec), prec)


def primorial(k: int) -> int:
    if k < 2:
        raise DomainError("primorial expects k >= 2")
    return math.prod(int(p) for p in primes_list(k))


def prime_product_ratio(t: int) -> Fraction:
    """Exact product of p/(p-1) over the first ``t`` primes."""
    if t < 1:
        raise DomainError("prime_product_ratio expects t >= 1")
    num = den = 1
    for i in range(1, t + 1):
        p = nth_prime(i)
        num *= p
        den *= p - 1
    return Fraction(num, den)


def mertens_product(q: int) -> Fraction:
    """Exact product of p/(p-1) over primes p <= q."""
    num = den = 1
    for p in primes_list(q):
        num *= int(p)
        den *= int(p) - 1
    return Fraction(num, den)


def mertens_lower(q: int, prec=DEFAULT_PREC):
    """Check prod_{p<=q} p/(p-1) > e^gamma log q (1 - 1/(2 log^2 q))."""
    require_prime(q)
    product = mertens_product(q)

    def build(p):
        lq = Enclosure.exact(q, p).log()
        rhs = euler_gamma(p).exp() * lq * (1 - 1 / (2 * lq * lq))
        return rhs, Enclosure.exact(product, p)

    return certify_less("mertens_lower", q, build, prec=prec)


# -- explicit Chebyshev-function inequalities ----------------------------------


def theta_upper_check(x: int, prec=DEFAULT_PREC):
    """theta(x) < x (1 + 1/(2 log x)) for x > 1."""
    if x < 2:
        raise DomainError("theta upper bound is stated for x > 1")

    def build(p):
        lx = Enclosure.exact(x, p).log()
        return chebyshev_theta(x, p), x * (1 + 1 / (2 * lx))

    return certify_less("theta_upper", x, build, prec=prec)


def theta_lower_check(x: int, prec=DEFAULT_PREC):
    """theta(x) > x (1 - 1/(2 log x)) for x >= 563."""
    if x < 563:
        raise DomainError("theta lower bound is stated for x >= 563")

    def build(p):
        lx = Enclosure.exact(x, p).log()
        return x * (1 - 1 / (2 * lx)), chebyshev_theta(x, p)

    return certify_less("theta_lower", x, build, prec=prec)


def pi_upper_check(x: int, prec=DEFAULT_PREC):
    """pi(x) < x/log x (1 + 3/(2 log x)) for x > 1."""
    if x < 2:
        raise DomainError("pi upper bound is stated for x > 1")
    count = prime_count(x)

    def build(p):
        lx = Enclosure.exact(x, p).log()
        return Enclosure.exact(count, p), x / lx * (1 + 3 / (2 * lx))

    return certify_less("pi_upper", x, build, prec=prec)
