"""Phi(n) = max{m : phi(m) divides 2n}, computed two ways, and its explicit bounds.

Two independent routes produce Phi:

* :func:`phi_of` scans m downward from the certified ceiling
  ``2n prod_{i<=t} p_i/(p_i-1)`` (t = v2(n)+2) using totients derived from a
  smallest-prime-factor table;
* :func:`phi_bulk` sieves totients directly, keeps the largest preimage of
  every value, and takes the max of that table over the divisors of 2n.
"""

from __future__ import annotations

import dataclasses
import math
from fractions import Fraction

import numpy as np

from minkphi import kernels
from minkphi.enclosure import DEFAULT_PREC, Enclosure, euler_gamma, log2
from minkphi.errors import DomainError, SizeError
from minkphi.primes import factorize, mertens_product, primorial, prime_product_ratio, require_prime
from minkphi.reports import BoundReport, Status, certify_less, out_of_domain

EXCEPTIONS = frozenset({1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 16, 18, 20, 24})
LOGLOG_CONSTANT = Fraction("6.49")
PIECEWISE_SLOPE = Fraction(77, 8)
BULK_LIMIT = 500_000


def p_adic_valuation(n: int, p: int) -> int:
    if n < 1:
        raise DomainError("n must be >= 1")
    require_prime(p)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def v2(n: int) -> int:
    return (n & -n).bit_length() - 1


def euler_phi(m: int) -> int:
    if m < 1:
        raise DomainError("m must be >= 1")
    out = m
    for p in factorize(m):
        out -= out // p
    return out


def phi_search_bound(n: int) -> Fraction:
    """2n prod_{i=1}^{t} p_i/(p_i - 1) with t = v2(n) + 2; Phi(n) never exceeds it."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return 2 * n * prime_product_ratio(v2(n) + 2)


def _target_ceiling(target):
    # same bound written in terms of 2n: v2(n) + 2 = v2(2n) + 1
    return math.floor(target * prime_product_ratio(v2(target) + 1))


# -- downward scan -------------------------------------------------------------

_scan_phi = None


def _scan_table(limit):
    global _scan_phi
    if _scan_phi is None or len(_scan_phi) <= limit:
        size = max(limit, 2 * (len(_scan_phi) if _scan_phi is not None else 0), 1 << 12)
        table = kernels.totient_from_spf(kernels.smallest_factor_sieve(size))
        table.flags.writeable = False
        _scan_phi = table
    return _scan_phi


def max_dividing(target: int, ceiling: int) -> int:
    """Largest m <= ceiling with phi(m) | target (0 if none)."""
    return int(kernels.scan_max_dividing(_scan_table(ceiling), ceiling, target))


def phi_for_target(target: int) -> int:
    """max{m : phi(m) divides target}; ``target`` plays the role of 2n."""
    if target < 1:
        raise DomainError("target must be >= 1")
    return max_dividing(target, _target_ceiling(target))


def phi_of(n: int) -> int:
    """Phi(n) by downward scan from the certified ceiling."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return max_dividing(2 * n, math.floor(phi_search_bound(n)))


# -- inverse-totient table -------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class TotientTable:
    """phi(m) for m <= limit and, per value d, the largest m <= limit with phi(m) = d."""

    limit: int
    phi: np.ndarray
    inverse: np.ndarray

    @classmethod
    def build(cls, limit):
        if limit < 1:
            raise DomainError("limit must be >= 1")
        phi = kernels.totient_sieve(limit)
        inverse = kernels.inverse_max(phi)
        phi.flags.writeable = False
        inverse.flags.writeable = False
        return cls(limit, phi, inverse)

    def inverse_max(self, d):
        if 1 <= d <= self.limit and self.inverse[d]:
            return int(self.inverse[d])
        return None


def bulk_ceiling(n_max: int) -> int:
    """max over n <= n_max of ceil(phi_search_bound(n)), exactly."""
    best = 0
    v = 0
    while (1 << v) <= n_max:
        k = n_max >> v
        if k % 2 == 0:
            k -= 1
        if k >= 1:
            best = max(best, math.ceil(phi_search_bound(k << v)))
        v += 1
    return best


_bulk_cache: dict = {}


def phi_bulk(n_max: int) -> np.ndarray:
    """Array ``a`` with ``a[n] = Phi(n)`` for 1 <= n <= n_max (``a[0]`` is 0)."""
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    if n_max > BULK_LIMIT:
        raise SizeError(f"phi_bulk is limited to n_max <= {BULK_LIMIT}")
    cached = _bulk_cache.get("values")
    if cached is not None and len(cached) > n_max:
        return cached[: n_max + 1]
    table = TotientTable.build(bulk_ceiling(n_max))
    values = kernels.max_over_divisors(table.inverse, n_max)
    values.flags.writeable = False
    _bulk_cache["values"] = values
    return values


# -- bounds ------------------------------------------------------------------------


def _loglog(x, prec):
    return Enclosure.exact(x, prec).log().log()


def log_shape(t: Enclosure) -> Enclosure:
    """(1 + 1/(log t + log log t)^2) (log t + log(log t + log log t))."""
    lt = t.log()
    s = lt + lt.log()
    return (1 + 1 / (s * s)) * (lt + s.log())


def phi_upper_theorem2(n: int, prec=DEFAULT_PREC) -> Enclosure:
    """Piecewise bound for even n: 9.625n if 16 does not divide n, else the log-shape bound at t' = log2(n)+2."""
    if n % 2:
        raise DomainError("the piecewise bound is stated for even n")
    if n <= 0:
        raise DomainError("n must be positive")
    if n % 16:
        return Enclosure.exact(PIECEWISE_SLOPE * n, prec)
    t_prime = Enclosure.exact(n, prec).log() / log2(prec) + 2
    return euler_gamma(prec).exp() * (2 * n) * log_shape(t_prime)


def c_function(t: Enclosure) -> Enclosure:
    """Numerator of the derivative of :func:`log_shape`, term by term."""
    if not t.lo >= 6:
        raise DomainError("c(t) is only considered for t >= 6")
    L = t.log()
    LL = L.log()
    return (
        1
        - L
        + L**3
        + L**4
        + 3 * L * LL
        + 2 * L**2 * LL
        + 3 * L**3 * LL
        + LL**2
        + L * LL**2
        + 3 * L**2 * LL**2
        + L * LL**3
        - 2 * (1 + L) * (L + LL).log()
    )


def growth_probe(t: Enclosure) -> Enclosure:
    """(log t)(log log t) - log(t - 2) - log log 2."""
    lt = t.log()
    return lt * lt.log() - (t - 2).log() - log2(t.prec).log()


def product_bound_check(n, phi_value=None, prec=DEFAULT_PREC) -> BoundReport:
    """Phi(n) <= 2n prod_{i<=t} p_i/(p_i-1), exactly."""
    phi_value = phi_of(n) if phi_value is None else int(phi_value)
    bound = phi_search_bound(n)

    def build(p):
        return Enclosure.exact(phi_value, p), Enclosure.exact(bound, p)

    def sign():
        return (bound > phi_value) - (bound < phi_value)

    return certify_less("product_bound", n, build, prec=prec, strict=False, exact_sign=sign)


def piecewise_bound_check(n, phi_value=None, prec=DEFAULT_PREC) -> BoundReport:
    phi_value = phi_of(n) if phi_value is None else int(phi_value)

    def build(p):
        return Enclosure.exact(phi_value, p), phi_upper_theorem2(n, p)

    def linear_sign():
        bound = PIECEWISE_SLOPE * n
        return (bound > phi_value) - (bound < phi_value)

    # only the 9.625n branch is rational, so only it has an exact fallback
    sign = linear_sign if n % 16 else None
    return certify_less("piecewise_bound", n, build, prec=prec, strict=False, exact_sign=sign)


def loglog_bound_check(n, phi_value=None, prec=DEFAULT_PREC) -> BoundReport:
    """Phi(n) < 6.49 n log log n; n <= 2 is outside the inequality's domain."""
    if n <= 2:
        return out_of_domain("loglog_6.49", n, "log log n is not positive for n <= 2")
    phi_value = phi_of(n) if phi_value is None else int(phi_value)

    def build(p):
        return Enclosure.exact(phi_value, p), _loglog(n, p) * (LOGLOG_CONSTANT * n)

    return certify_less("loglog_6.49", n, build, prec=prec)


def loglog_ratio(n, phi_value=None, prec=DEFAULT_PREC) -> Enclosure:
    """Phi(n) / (n log log n)."""
    if n <= 2:
        raise DomainError("log log n is not positive for n <= 2")
    phi_value = phi_of(n) if phi_value is None else int(phi_value)
    return Enclosure.exact(Fraction(phi_value, n), prec) / _loglog(n, prec)


def power3_check(k: int) -> BoundReport:
    """Phi(3^k) = 6 * 3^k."""
    n = 3**k
    value = phi_of(n)
    status = Status.HOLDS if value == 6 * n else Status.FAILS
    e = Enclosure.exact(value)
    return BoundReport("phi_power_of_3", n, e, Enclosure.exact(6 * n), status, 0, equality=value == 6 * n)


def primorial_family_check(q: int, prec=DEFAULT_PREC) -> BoundReport:
    """With 2n = phi(q#): Phi(n) >= q#, Phi(n)/n >= 2 prod_{p<=q} p/(p-1) > 2 e^gamma log q (1 - 1/(2 log^2 q)).

    For q = 2 the target 2n = 1 is odd, so n = 1/2; Phi is then read as
    max{m : phi(m) | 1} = 2.
    """
    require_prime(q)
    qp = primorial(q)
    target = euler_phi(qp)
    if target > 2 * 10**6:
        raise SizeError(f"phi({q}#)/2 is too large for the downward scan")
    value = phi_for_target(target)
    ratio = Fraction(2 * value, target)
    product = mertens_product(q)
    exact_ok = value >= qp and ratio >= 2 * product

    def build(p):
        lq = Enclosure.exact(q, p).log()
        mertens = euler_gamma(p).exp() * lq * (1 - 1 / (2 * lq * lq)) * 2
        return mertens, Enclosure.exact(2 * product, p)

    report = certify_less("primorial_family", q, build, prec=prec)
    status = report.status if exact_ok else Status.FAILS
    note = f"Phi={value} q#={qp} 2n={target} ratio={ratio} 2prod={2 * product}"
    return dataclasses.replace(report, status=status, equality=ratio == 2 * product, note=note)


def loglog_constants(prec=DEFAULT_PREC) -> list[BoundReport]:
    """Every numeric step of the 6.49 argument, as certified comparisons."""
    out = []

    def add(claim, build, **kw):
        out.append(certify_less(claim, 0, build, prec=prec, **kw))

    def e(x, p):
        return Enclosure.exact(x, p)

    def denom(p):
        return e(20, p).log() + log2(p).log()

    def first(p):
        lt = e(22, p).log()
        s = lt + lt.log()
        return 1 + 1 / (s * s), e("1.05617", p)

    add("factor_at_22", first)
    add("log_ratio_at_22", lambda p: (e(22, p).log() / denom(p), e("1.17566", p)))
    add("log_one_plus_inv_e", lambda p: ((1 + 1 / e(1, p).exp()).log(), e("0.31327", p)))
    add("shift_over_denom", lambda p: (e("0.31327", p) / denom(p), e("0.11915", p)))
    add("loglog_ratio_at_22", lambda p: (e(22, p).log().log() / denom(p), e("0.42922", p)))

    def combined(p):
        total = e("1.17566", p) + e("0.11915", p) + e("0.42922", p)
        return euler_gamma(p).exp() * 2 * e("1.05617", p) * total, e("6.49", p)

    add("combined_constant", combined)
    crude = 2 * prime_product_ratio(21)
    add(
        "crude_linear_bound",
        lambda p: (e(crude, p), e("15.87", p)),
        strict=False,
        exact_sign=lambda: (Fraction("15.87") > crude) - (Fraction("15.87") < crude),
    )
    add("threshold_102132", lambda p: (e("15.87", p), _loglog(102132, p) * LOGLOG_CONSTANT))
    return out


def piecewise_constants(prec=DEFAULT_PREC) -> list[BoundReport]:
    out = []

    def e(x, p):
        return Enclosure.exact(x, p)

    out.append(
        certify_less("one_plus_log6_ratio", 6, lambda p: ((1 + e(6, p).log()) / e(6, p).log(), e("1.56", p)), prec=prec)
    )
    out.append(certify_less("log6_cubed", 6, lambda p: (e(5, p), e(6, p).log() ** 3), prec=prec))
    out.append(
        certify_less(
            "small_case_product",
            16,
            lambda p: (e(2 * prime_product_ratio(5), p), e(PIECEWISE_SLOPE, p)),
            prec=prec,
            strict=False,
            exact_sign=lambda: (PIECEWISE_SLOPE > 2 * prime_product_ratio(5)) - (PIECEWISE_SLOPE < 2 * prime_product_ratio(5)),
        )
    )
    return out
