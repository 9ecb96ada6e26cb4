"""Outward-rounded interval arithmetic.

Endpoints are MPFR floats (via gmpy2). Every lower endpoint is computed with
rounding toward -inf and every upper endpoint with rounding toward +inf, so an
:class:`Enclosure` always contains the exact real value of the expression that
produced it. MPFR's elementary functions are correctly rounded in the requested
direction, which is what makes ``log``/``exp``/``sqrt`` sound here.
"""

from __future__ import annotations

import enum
import functools
from decimal import ROUND_CEILING, ROUND_FLOOR, ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from numbers import Rational

import gmpy2
from gmpy2 import mpz

from minkphi.errors import DomainError, InvariantError, SingularityError

DEFAULT_PREC = 64
ESCALATION = (64, 128, 256)

# Euler-Mascheroni constant, 60 significant digits (OEIS A001620).
EULER_GAMMA_DIGITS = "0.577215664901532860606512090082402431042159335939923598805767"
_GAMMA_SLACK = Fraction(1, 10**60)


@functools.lru_cache(maxsize=None)
def contexts(prec):
    """Return ``(down, up)`` MPFR contexts at ``prec`` bits."""
    return (
        gmpy2.context(precision=prec, round=gmpy2.RoundDown),
        gmpy2.context(precision=prec, round=gmpy2.RoundUp),
    )


def _to_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, (str, Decimal, float)):
        return Fraction(x)
    if isinstance(x, type(mpz(0))):
        return Fraction(int(x))
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def mpfr_to_fraction(x):
    num, den = x.as_integer_ratio()
    return Fraction(int(num), int(den))


class Ordering(enum.Enum):
    LESS = "LessCertain"
    GREATER = "GreaterCertain"
    INCONCLUSIVE = "Inconclusive"


class Enclosure:
    """Closed interval ``[lo, hi]`` known to contain a real number.

    Treat instances as immutable. Arithmetic with ``int`` and ``Fraction``
    operands converts them exactly (then rounds outward).
    """

    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo, hi, prec=DEFAULT_PREC):
        if not lo <= hi:
            raise InvariantError(f"malformed enclosure [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi
        self.prec = prec

    # -- construction -----------------------------------------------------

    @classmethod
    def exact(cls, x, prec=DEFAULT_PREC):
        """Tightest enclosure of a rational number."""
        x = _to_fraction(x)
        down, up = contexts(prec)
        num, den = mpz(x.numerator), mpz(x.denominator)
        return cls(down.div(num, den), up.div(num, den), prec)

    @classmethod
    def span(cls, a, b, prec=DEFAULT_PREC):
        """Enclosure of the rational interval ``[a, b]``."""
        a, b = _to_fraction(a), _to_fraction(b)
        if a > b:
            raise DomainError("span endpoints out of order")
        down, up = contexts(prec)
        return cls(
            down.div(mpz(a.numerator), mpz(a.denominator)),
            up.div(mpz(b.numerator), mpz(b.denominator)),
            prec,
        )

    def with_prec(self, prec):
        """Re-round the endpoints outward to ``prec`` bits."""
        down, up = contexts(prec)
        return Enclosure(down.add(self.lo, 0), up.add(self.hi, 0), prec)

    # -- inspection -------------------------------------------------------

    @property
    def width(self):
        return contexts(self.prec)[1].sub(self.hi, self.lo)

    @property
    def mid(self):
        return contexts(self.prec)[0].div(contexts(self.prec)[0].add(self.lo, self.hi), 2)

    def lo_fraction(self):
        return mpfr_to_fraction(self.lo)

    def hi_fraction(self):
        return mpfr_to_fraction(self.hi)

    def contains(self, x):
        """True if the exact rational ``x`` (or every point of an enclosure) lies inside."""
        if isinstance(x, Enclosure):
            return self.lo <= x.lo and x.hi <= self.hi
        x = _to_fraction(x)
        return self.lo_fraction() <= x <= self.hi_fraction()

    __contains__ = contains

    def intersects(self, other):
        return self.lo <= other.hi and other.lo <= self.hi

    def intersection(self, other):
        if not self.intersects(other):
            raise InvariantError("enclosures are disjoint")
        return Enclosure(max(self.lo, other.lo), min(self.hi, other.hi), max(self.prec, other.prec))

    def hull(self, other):
        return Enclosure(min(self.lo, other.lo), max(self.hi, other.hi), max(self.prec, other.prec))

    def __repr__(self):
        return f"Enclosure({self.format(20)}, prec={self.prec})"

    def format(self, digits=12):
        return f"[{format_down(self.lo, digits)}, {format_up(self.hi, digits)}]"

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Enclosure):
            return other
        return Enclosure.exact(other, self.prec)

    def __neg__(self):
        # bare unary minus would round to gmpy2's global precision
        down, up = contexts(self.prec)
        return Enclosure(down.minus(self.hi), up.minus(self.lo), self.prec)

    def __pos__(self):
        return self

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Enclosure(gmpy2.mpfr(0), max(contexts(self.prec)[1].minus(self.lo), self.hi), self.prec)

    def __add__(self, other):
        other = self._coerce(other)
        prec = max(self.prec, other.prec)
        down, up = contexts(prec)
        return Enclosure(down.add(self.lo, other.lo), up.add(self.hi, other.hi), prec)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        prec = max(self.prec, other.prec)
        down, up = contexts(prec)
        return Enclosure(down.sub(self.lo, other.hi), up.sub(self.hi, other.lo), prec)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        prec = max(self.prec, other.prec)
        down, up = contexts(prec)
        a0, a1, b0, b1 = self.lo, self.hi, other.lo, other.hi
        if a0 >= 0 and b0 >= 0:
            return Enclosure(down.mul(a0, b0), up.mul(a1, b1), prec)
        lo = min(down.mul(a0, b0), down.mul(a0, b1), down.mul(a1, b0), down.mul(a1, b1))
        hi = max(up.mul(a0, b0), up.mul(a0, b1), up.mul(a1, b0), up.mul(a1, b1))
        return Enclosure(lo, hi, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.lo <= 0 <= other.hi:
            raise SingularityError(f"division by {other!r}")
        prec = max(self.prec, other.prec)
        down, up = contexts(prec)
        a0, a1, b0, b1 = self.lo, self.hi, other.lo, other.hi
        if a0 >= 0 and b0 > 0:
            return Enclosure(down.div(a0, b1), up.div(a1, b0), prec)
        lo = min(down.div(a0, b0), down.div(a0, b1), down.div(a1, b0), down.div(a1, b1))
        hi = max(up.div(a0, b0), up.div(a0, b1), up.div(a1, b0), up.div(a1, b1))
        return Enclosure(lo, hi, prec)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("only integer powers are supported")
        return pow_int(self, k)

    # -- elementary functions ---------------------------------------------

    def log(self):
        if not self.lo > 0:
            raise DomainError(f"log of non-positive enclosure {self!r}")
        down, up = contexts(self.prec)
        return Enclosure(down.log(self.lo), up.log(self.hi), self.prec)

    def exp(self):
        down, up = contexts(self.prec)
        return Enclosure(down.exp(self.lo), up.exp(self.hi), self.prec)

    def sqrt(self):
        if not self.lo >= 0:
            raise DomainError(f"sqrt of enclosure with negative part {self!r}")
        down, up = contexts(self.prec)
        return Enclosure(down.sqrt(self.lo), up.sqrt(self.hi), self.prec)


def make(x, prec=DEFAULT_PREC):
    return Enclosure.exact(x, prec)


def log(a):
    return a.log()


def exp(a):
    return a.exp()


def sqrt(a):
    return a.sqrt()


def pow_int(a, k):
    if k < 0:
        return 1 / pow_int(a, -k)
    if k == 0:
        return Enclosure.exact(1, a.prec)
    down, up = contexts(a.prec)
    if a.lo >= 0:
        return Enclosure(down.pow(a.lo, k), up.pow(a.hi, k), a.prec)
    if k % 2 == 1:
        return Enclosure(down.pow(a.lo, k), up.pow(a.hi, k), a.prec)
    if a.hi <= 0:
        return Enclosure(down.pow(a.hi, k), up.pow(a.lo, k), a.prec)
    return Enclosure(gmpy2.mpfr(0), max(up.pow(a.lo, k), up.pow(a.hi, k)), a.prec)


def compare(a, b):
    """Certified order of two enclosures."""
    if a.hi < b.lo:
        return Ordering.LESS
    if a.lo > b.hi:
        return Ordering.GREATER
    return Ordering.INCONCLUSIVE


def enclosure_sum(items, prec=DEFAULT_PREC):
    """Sum of enclosures with one directed rounding per endpoint per term."""
    down, up = contexts(prec)
    lo = gmpy2.mpfr(0)
    hi = gmpy2.mpfr(0)
    for e in items:
        lo = down.add(lo, e.lo)
        hi = up.add(hi, e.hi)
    return Enclosure(lo, hi, prec)


def int_dot(weights, values, prec=DEFAULT_PREC):
    """``sum(w * v)`` for non-negative integer weights and enclosures ``values``."""
    down, up = contexts(prec)
    lo = gmpy2.mpfr(0)
    hi = gmpy2.mpfr(0)
    for w, v in zip(weights, values):
        if w < 0:
            raise DomainError("int_dot expects non-negative weights")
        w = int(w)
        lo = down.add(lo, down.mul(v.lo, w))
        hi = up.add(hi, up.mul(v.hi, w))
    return Enclosure(lo, hi, prec)


# -- constants --------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def pi(prec=DEFAULT_PREC):
    down, up = contexts(prec)
    with gmpy2.context(down):
        lo = gmpy2.const_pi()
    with gmpy2.context(up):
        hi = gmpy2.const_pi()
    return Enclosure(lo, hi, prec)


@functools.lru_cache(maxsize=None)
def log2(prec=DEFAULT_PREC):
    return Enclosure.exact(2, prec).log()


@functools.lru_cache(maxsize=None)
def euler_gamma(prec=DEFAULT_PREC):
    g = Fraction(EULER_GAMMA_DIGITS)
    return Enclosure.span(g - _GAMMA_SLACK, g + _GAMMA_SLACK, prec)


@functools.lru_cache(maxsize=None)
def log_sqrt_2pi(prec=DEFAULT_PREC):
    return (pi(prec) * 2).log() / 2


# -- decimal output ---------------------------------------------------------


def _decimal(x, digits, rounding):
    x = _to_fraction(x) if isinstance(x, (Fraction, int, str)) else mpfr_to_fraction(x)
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = rounding
        return ctx.divide(Decimal(x.numerator), Decimal(x.denominator))


def _plain(d):
    # scientific only when plain notation would hide the last digit's place
    return format(d, "f") if d.as_tuple().exponent <= 0 else str(d)


def format_down(x, digits=12):
    """Decimal string <= x with at most ``digits`` significant digits."""
    return _plain(_decimal(x, digits, ROUND_FLOOR))


def format_up(x, digits=12):
    """Decimal string >= x with at most ``digits`` significant digits."""
    return _plain(_decimal(x, digits, ROUND_CEILING))


def _unit(d):
    return Fraction(10) ** d.as_tuple().exponent


def format_point(e, digits=12):
    """Single decimal ``d`` such that ``d`` plus or minus one unit in its last place covers ``e``.

    Digits are dropped until the enclosure fits, so wide enclosures print
    shorter. :func:`parse_point` inverts this.
    """
    lo, hi = e.lo_fraction(), e.hi_fraction()
    if lo == hi == 0:
        return "0"
    mid = (lo + hi) / 2
    for k in range(digits, 0, -1):
        d = _decimal(mid, k, ROUND_HALF_EVEN)
        unit = _unit(d)
        if Fraction(d) - unit <= lo and hi <= Fraction(d) + unit:
            return _plain(d)
    raise InvariantError(f"enclosure {e!r} too wide to print as a point")


def parse_point(s, prec=DEFAULT_PREC):
    """Enclosure denoted by a decimal written with :func:`format_point`."""
    d = Decimal(s)
    unit = _unit(d)
    return Enclosure.span(Fraction(d) - unit, Fraction(d) + unit, prec)
