"""Outcome records for certified inequality checks, with precision escalation."""

from __future__ import annotations

import dataclasses
import enum
from typing import Callable, Optional

from minkphi.enclosure import DEFAULT_PREC, ESCALATION, Enclosure, Ordering, compare


class Status(str, enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"
    OUT_OF_DOMAIN = "out_of_domain"


@dataclasses.dataclass(frozen=True)
class BoundReport:
    """One inequality ``lhs < rhs`` (or ``<=``) evaluated at one point."""

    claim: str
    n: int
    lhs: Optional[Enclosure]
    rhs: Optional[Enclosure]
    status: Status
    precision_used: int
    campaign: str = ""
    equality: bool = False
    note: str = ""

    @property
    def holds(self):
        return self.status is Status.HOLDS

    def tagged(self, campaign):
        return dataclasses.replace(self, campaign=campaign)


def out_of_domain(claim, n, note=""):
    return BoundReport(claim, n, None, None, Status.OUT_OF_DOMAIN, 0, note=note)


def certify_less(
    claim: str,
    n: int,
    build: Callable[[int], tuple[Enclosure, Enclosure]],
    *,
    prec: int = DEFAULT_PREC,
    strict: bool = True,
    exact_sign: Optional[Callable[[], int]] = None,
    note: str = "",
) -> BoundReport:
    """Certify ``lhs < rhs`` (``strict``) or ``lhs <= rhs``.

    ``build(prec)`` returns the two sides. The comparison is retried at each
    precision in :data:`ESCALATION` not below ``prec``. ``exact_sign``, when
    given, returns the sign of ``rhs - lhs`` computed exactly and is consulted
    only if every precision is inconclusive (this is how equality cases such
    as ``G(2) = (4*sqrt(3))**2`` get decided).
    """
    ladder = [p for p in ESCALATION if p >= prec] or [prec]
    lhs = rhs = None
    for p in ladder:
        lhs, rhs = build(p)
        order = compare(lhs, rhs)
        if order is Ordering.LESS:
            return BoundReport(claim, n, lhs, rhs, Status.HOLDS, p, note=note)
        if order is Ordering.GREATER:
            return BoundReport(claim, n, lhs, rhs, Status.FAILS, p, note=note)
    if exact_sign is not None:
        sign = exact_sign()
        if sign > 0 or (sign == 0 and not strict):
            return BoundReport(claim, n, lhs, rhs, Status.HOLDS, p, equality=sign == 0, note=note)
        return BoundReport(claim, n, lhs, rhs, Status.FAILS, p, equality=sign == 0, note=note)
    return BoundReport(claim, n, lhs, rhs, Status.INCONCLUSIVE, p, note=note)
