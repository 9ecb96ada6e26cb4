"""Certified enclosures of K = sum_{q>2 prime} log q / (q-1)^2 and derived constants.

K is split as a partial sum over 2 < q <= Q plus a tail over q > Q. The tail is
bracketed by partial summation against theta::

    sum_{q>Q} log q/(q-1)^2 = -theta(Q)/(Q-1)^2 + int_Q^oo 2 theta(t)/(t-1)^3 dt

with ``t (1 - 1/(2 log t)) < theta(t) < t (1 + 1/(2 log t))`` (valid for
t >= 563), and ``int_Q^oo 2t/(t-1)^3 dt = 2/(Q-1) + 1/(Q-1)^2``. The integer
comparison ``int_Q^oo log t/(t-1)^2 dt`` is also a valid upper bound for the
tail and is applied as a second cap.
"""

from __future__ import annotations

import dataclasses
import functools
from fractions import Fraction

import gmpy2

from minkphi.enclosure import DEFAULT_PREC, Enclosure, contexts, log2
from minkphi.errors import DomainError
from minkphi.primes import chebyshev_theta, prime_count, prime_logs, primes_list
from minkphi.reports import certify_less

DEFAULT_CUTOFF = 10**6
PARTIAL_SUM_FLOOR = Fraction("0.1250281")


@dataclasses.dataclass(frozen=True)
class ConstantEnclosure:
    name: str
    value: Enclosure
    derivation: dict


def _prime_sum(cutoff, prec, power_q):
    """sum over 2 < q <= cutoff of log q / (q^power_q (q-1)^2)."""
    ps = primes_list(cutoff)
    logs = prime_logs(len(ps), prec)
    down, up = contexts(prec)
    lo = gmpy2.mpfr(0)
    hi = gmpy2.mpfr(0)
    for p, lg in zip(ps[1:], logs[1:]):
        p = int(p)
        den = (p - 1) ** 2 * p**power_q
        lo = down.add(lo, down.div(lg.lo, den))
        hi = up.add(hi, up.div(lg.hi, den))
    return Enclosure(lo, hi, prec)


def integral_tail_bound(a, prec=DEFAULT_PREC):
    """int_a^oo log t/(t-1)^2 dt = log a/(a-1) - log((a-1)/a)."""
    la = Enclosure.exact(a, prec).log()
    return la / (a - 1) - Enclosure.exact(Fraction(a - 1, a), prec).log()


def tail_enclosure(cutoff, prec=DEFAULT_PREC):
    """Enclosure of sum_{q > cutoff, q prime} log q/(q-1)^2."""
    if cutoff < 1000:
        raise DomainError("tail bounds need cutoff >= 1000")
    theta = chebyshev_theta(cutoff, prec)
    sq = Fraction(1, (cutoff - 1) ** 2)
    weight = Fraction(2, cutoff - 1) + sq
    half_inv_log = 1 / (2 * Enclosure.exact(cutoff, prec).log())
    boundary = -theta * sq
    lower = boundary + weight * (1 - half_inv_log)
    upper = boundary + weight * (1 + half_inv_log)
    upper_hi = min(upper.hi, integral_tail_bound(cutoff, prec).hi)
    return Enclosure(max(lower.lo, gmpy2.mpfr(0)), upper_hi, prec)


@functools.lru_cache(maxsize=None)
def k_enclosure(cutoff: int = DEFAULT_CUTOFF, prec: int = DEFAULT_PREC) -> ConstantEnclosure:
    if cutoff < 1000:
        raise DomainError("k_enclosure requires cutoff >= 1000")
    partial = _prime_sum(cutoff, prec, 0)
    tail = tail_enclosure(cutoff, prec)
    return ConstantEnclosure(
        "K",
        partial + tail,
        {
            "cutoff": cutoff,
            "primes_summed": prime_count(cutoff) - 1,
            "partial": partial,
            "tail": tail,
            "tail_method": "partial summation with theta(t) = t(1 +/- 1/(2 log t)); integral cap",
            "precision": prec,
        },
    )


def k_value(prec=DEFAULT_PREC, cutoff=DEFAULT_CUTOFF) -> Enclosure:
    return k_enclosure(cutoff, prec).value


def cube_partial_sum(cutoff=1000, prec=DEFAULT_PREC):
    """sum over 2 < q <= cutoff of log q / (q (q-1)^2)."""
    return _prime_sum(cutoff, prec, 1)


def partial_sum_check(prec=DEFAULT_PREC):
    """Certify sum_{2<q<=1000} log q/(q(q-1)^2) >= 0.1250281."""

    def build(p):
        return Enclosure.exact(PARTIAL_SUM_FLOOR, p), cube_partial_sum(1000, p)

    return certify_less("partial_sum_1000", 1000, build, prec=prec)


def main_coefficients(prec=DEFAULT_PREC):
    """(3/2 log 2 - 1 + K, 4 log 2 - 2 + 2K)."""
    k = k_value(prec)
    l2 = log2(prec)
    return l2 * Fraction(3, 2) - 1 + k, l2 * 4 - 2 + k * 2
