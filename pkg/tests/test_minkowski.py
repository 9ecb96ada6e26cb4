import math
from fractions import Fraction

import mpmath
import pytest
import sympy

from minkphi import minkowski as M
from minkphi.constants import PARTIAL_SUM_FLOOR, k_value, main_coefficients
from minkphi.enclosure import Enclosure, Ordering, compare
from minkphi.errors import DomainError
from minkphi.reports import Status


def _r_direct(n, q):
    total = n // 2 if q == 2 else 0
    j = 0
    while True:
        d = 2**j if q == 2 else q**j * (q - 1)
        if d > n:
            return total
        total += n // d
        j += 1


@pytest.mark.parametrize("n,q,want", [(2, 2, 4), (2, 3, 1), (2, 5, 0), (1, 2, 1), (6, 7, 1)])
def test_minkowski_exponent_examples(n, q, want):
    assert M.minkowski_exponent(n, q) == want


def test_exponent_rejects_composite():
    with pytest.raises(DomainError):
        M.minkowski_exponent(4, 4)


@pytest.mark.parametrize("n", list(range(1, 60)) + [97, 100, 1000])
def test_exponent_map_matches_direct_sums(n):
    ex = M.g_exponents(n).exponents
    for q in sympy.primerange(2, n + 2):
        assert ex.get(q, 0) == _r_direct(n, q)
    assert all(v >= 1 for v in ex.values())
    assert max(ex) <= n + 1


@pytest.mark.parametrize("n,value", [(1, 2), (2, 48), (3, 96), (4, 23040)])
def test_g_small_values(n, value):
    factored, g = M.g_exact(n)
    assert g == value
    assert factored.value() == g


@pytest.mark.parametrize("n,value", [(1, 48), (2, 11520), (3, 5806080)])
def test_h_small_values(n, value):
    assert M.h_exact(n) == value


def test_h_is_an_exact_quotient_up_to_1000():
    for n in range(1, 1001):
        r2 = M.g_exponents(2 * n).exponents[2]
        assert r2 >= n - 1


@pytest.mark.parametrize("n,q,want", [(0, 2, 0), (10, 2, 8), (10, 5, 2), (100, 7, 16)])
def test_legendre(n, q, want):
    assert M.legendre_valuation(n, q) == want
    if n:
        assert sympy.multiplicity(q, math.factorial(n)) == want


def test_log_factorial_enclosure():
    assert M.log_factorial_enclosure(1).contains(0)
    assert M.log_factorial_enclosure(10).contains(M.log_bigint(3628800))
    assert M.log_factorial_enclosure(1000).width < 1e-4


def test_log_g_small():
    e = M.log_g(2)
    assert e.contains(M.log_bigint(48))
    assert e.exp().contains(48)
    with mpmath.workprec(200):
        lo, hi = e.lo_fraction(), e.hi_fraction()
        assert mpmath.mpf(lo.numerator) / lo.denominator <= mpmath.log(48) <= mpmath.mpf(hi.numerator) / hi.denominator


def test_log_g_two_paths_agree_up_to_2000():
    for n in range(2, 2001):
        primary = M.log_g(n)
        assert primary.intersects(M.log_g_identity(n)), n
        assert primary.intersects(M.log_bigint(M.g_exact(n)[1])), n


def test_cross_checked_log_is_no_wider():
    assert M.log_g(1000, cross_check=True).width <= M.log_g(1000).width


@pytest.mark.parametrize("n", [2, 3, 10, 100, 1000, 4999])
def test_log_g_sandwich(n):
    lower, upper = M.log_g_sandwich_check(n)
    assert lower.status is Status.HOLDS and upper.status is Status.HOLDS
    b = M.theorem1_bounds(n)
    assert compare(b.main + b.lower, M.log_g(n)) is Ordering.LESS
    assert compare(M.log_g(n), b.main + b.upper) is Ordering.LESS


@pytest.mark.parametrize("n", [2, 3, 50, 100, 2500])
def test_log_h_sandwich(n):
    assert all(r.status is Status.HOLDS for r in M.log_h_sandwich_check(n))


@pytest.mark.parametrize("n", [2, 7, 100, 1000])
def test_h_bounds_are_g_bounds_at_2n_shifted(n):
    h = M.corollary_h_bounds(n, 128)
    g = M.theorem1_bounds(2 * n, 128)
    l2 = M.log2(128)
    # log H - main_H equals (log G(2n) - main_G(2n)) + log 2
    assert (h.lower - (g.lower + l2)).contains(0) or (h.lower - (g.lower + l2)).width < 1e-20
    assert (h.upper - (g.upper + l2)).intersects(Enclosure.exact(0))
    shift = (M.log_h(n, 128) - h.main) - (M.log_g(2 * n, 128) - g.main + l2)
    assert shift.intersects(Enclosure.exact(0))


def test_sandwich_domain():
    with pytest.raises(DomainError):
        M.theorem1_bounds(1)
    with pytest.raises(DomainError):
        M.corollary_h_bounds(1)


def test_power_bound_equality_at_2():
    report = M.g_power_check(2)
    assert report.status is Status.HOLDS and report.equality
    assert M.g_exact(2)[1] ** 2 == (12 * 4) ** 2


def test_h_power_bound_equality_at_1():
    report = M.h_power_check(1)
    assert report.status is Status.HOLDS and report.equality


@pytest.mark.parametrize("n", [1, 2, 3, 500])
def test_simplified_bounds(n):
    reports = M.nice_bounds_check(n)
    assert len(reports) == (2 if n == 1 else 4)
    assert all(r.status is Status.HOLDS for r in reports)
    if n == 500:
        assert not any(r.equality for r in reports)


@pytest.mark.parametrize("n", [1, 2, 1500])
def test_silverberg(n):
    r = M.silverberg_comparison(n)
    assert r.status is Status.HOLDS
    assert "2*sqrt(3) < 6.31" in r.note


def test_power_bound_gap_to_silverberg_per_n():
    n = 1500
    power = (Enclosure.exact(12 * n * n).log() / 2) * n
    margin = (M.silverberg_log(n) - power) / n
    assert abs(float(margin.mid) - math.log(6.31 / (2 * math.sqrt(3)))) < 1e-12
    # log G sits below the power bound, so its own gap is larger still
    assert compare(margin, (M.silverberg_log(n) - M.log_g(n)) / n) is Ordering.LESS


def test_upper_sqrt_ratio_decreases():
    grid = [2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610, 987, 1597, 2584, 4181]
    values = [M.upper_ratio_sqrt(n) for n in grid]
    for a, b in zip(values, values[1:]):
        assert compare(b, a) is Ordering.LESS
    assert compare(M.upper_ratio_sqrt(321), Enclosure.exact(Fraction(3, 2))) is Ordering.LESS


def test_upper_linear_ratio_decreases_after_8():
    grid = [8, 12, 18, 27, 40, 60, 90, 135, 168, 250, 400, 800, 1600, 3200, 5000]
    values = [M.upper_ratio_linear(n) for n in grid]
    for a, b in zip(values, values[1:]):
        assert compare(b, a) is Ordering.LESS
    assert compare(M.upper_ratio_linear(168), Enclosure.exact(Fraction("0.668"))) is Ordering.LESS


def test_lower_sqrt_ratio_above_minus_three_halves_at_321():
    assert compare(Enclosure.exact(Fraction(-3, 2)), M.lower_ratio_sqrt(321)) is Ordering.LESS


def test_main_coefficient_near_0574():
    d_g, _ = main_coefficients(128)
    assert abs(d_g - Fraction("0.574")).hi < 5e-4


@pytest.mark.parametrize("n", [2, 3, 10, 11, 100, 1000, 1001])
def test_decomposition_reassembles_log_g(n):
    dec = M.log_decomposition(n, 128)
    assert (dec.main_term + dec.residual).intersects(M.log_g(n, 128))
    p = dec.pieces
    assert (p["S2"] - p["S3"] - p["S4"]).intersects(Enclosure.exact(0))
    assert (p["S5"] - p["S7"] + p["S8"]).intersects(Enclosure.exact(0))


def test_s1_sits_above_the_tail_free_estimate_at_1000():
    # The estimate Kn - log(n+1) + 1 - 0.1250281 presumes the prime tail of K
    # is at least the integral from n+1, which it is not; S1 lands about
    # log n - 2 above it, while the full sandwich keeps a wide margin.
    n = 1000
    s1 = M.log_decomposition(n, 128).pieces["S1"]
    estimate = k_value(128) * n - Enclosure.exact(n + 1, 128).log() + 1 - PARTIAL_SUM_FLOOR
    assert compare(estimate, s1) is Ordering.LESS
    lower, upper = M.log_g_sandwich_check(n)
    assert upper.holds and (upper.rhs - upper.lhs).lo > 10
