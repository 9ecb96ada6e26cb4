"""Named verification campaigns producing ordered streams of BoundReports.

Every campaign maps an integer range to reports; per-n worst status feeds the
summary counts. Output is deterministic for fixed options: timing is kept out
of the serialized report and parallel chunks are merged in range order.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable

from minkphi import minkowski, oracle, totient
from minkphi.constants import DEFAULT_CUTOFF, k_enclosure, partial_sum_check
from minkphi.enclosure import DEFAULT_PREC, Enclosure, format_down, format_up, mpfr_to_fraction
from minkphi.errors import DomainError, SizeError
from minkphi.primes import is_prime
from minkphi.reports import BoundReport, Status, certify_less, out_of_domain

CSV_COLUMNS = ("campaign", "n", "claim", "status", "lhs_lo", "lhs_hi", "rhs_lo", "rhs_hi", "precision", "equality")
K_WINDOW = (Fraction("0.533821"), Fraction("0.533822"))
GRID_RATIO = Fraction(13, 12)
_SEVERITY = {Status.FAILS: 3, Status.INCONCLUSIVE: 2, Status.HOLDS: 1, Status.OUT_OF_DOMAIN: 0}


@dataclasses.dataclass(frozen=True)
class Campaign:
    name: str
    description: str
    default: tuple[int, int]
    lowest: int
    highest: int
    evaluate: Callable  # (n, options) -> list[BoundReport]
    expected_failures: frozenset = frozenset()


# -- per-n evaluators (module level so worker processes can pickle them) -------


def _prec(options):
    return options.get("precision", DEFAULT_PREC)


def _theorem1(n, options):
    return minkowski.log_g_sandwich_check(n, _prec(options))


def _corollary_h(n, options):
    return minkowski.log_h_sandwich_check(n, _prec(options))


def _nice(n, options):
    prec = _prec(options)
    out = []
    if n >= 2:
        out += [minkowski.log_g_deviation_check(n, prec), minkowski.log_h_deviation_check(n, prec)]
    if n <= options.get("power_cap", 2000):
        out += [minkowski.g_power_check(n, prec), minkowski.h_power_check(n, prec)]
    return out or [out_of_domain("power_bounds", n, "beyond the power-bound cap")]


def _silverberg(n, options):
    return [minkowski.silverberg_comparison(n, _prec(options))]


def _phi_value(n, options):
    return int(totient.phi_bulk(options["_stop"])[n])


def _product_bound(n, options):
    return [totient.product_bound_check(n, _phi_value(n, options), _prec(options))]


def _thm2(n, options):
    if n % 2:
        return [out_of_domain("piecewise_bound", n, "stated for even n")]
    return [totient.piecewise_bound_check(n, _phi_value(n, options), _prec(options))]


def _loglog(n, options):
    if n <= 2:
        return [totient.loglog_bound_check(n)]
    return [totient.loglog_bound_check(n, _phi_value(n, options), _prec(options))]


def _powers3(k, options):
    return [totient.power3_check(k)]


def _primorial(q, options):
    if not is_prime(q):
        return [out_of_domain("primorial_family", q, "q is not prime")]
    return [totient.primorial_family_check(q, _prec(options))]


def _equal_report(claim, n, got, want, note=""):
    status = Status.HOLDS if got == want else Status.FAILS
    return BoundReport(claim, n, Enclosure.exact(got), Enclosure.exact(want), status, 0, equality=True, note=note)


def _oracle_gl(n, options):
    n_max = options.get("nmax", 500)
    scan = oracle.gcd_scan(oracle.gl_order, n, n_max)
    note = f"gcd stable since N={scan.last_change}"
    return [_equal_report("gcd_gl_orders", n, scan.value, minkowski.g_exact(n)[1], note)]


def _oracle_gsp(g, options):
    n_max = options.get("nmax", 300)
    scan = oracle.gcd_scan(oracle.gsp_order, g, n_max)
    note = f"gcd stable since N={scan.last_change}; {oracle.GSP_CONVENTION}"
    return [_equal_report("gcd_gsp_orders", g, scan.value, minkowski.h_exact(g), note)]


def grid_cell(k: int, base, top, prec=DEFAULT_PREC) -> Enclosure:
    """Cell k of the geometric grid base * (13/12)^k, clipped at ``top``."""
    lo = Fraction(base) * GRID_RATIO**k
    hi = min(lo * GRID_RATIO, Fraction(top))
    return Enclosure.span(lo, hi, prec)


def grid_size(base, top) -> int:
    k = 0
    while Fraction(base) * GRID_RATIO ** (k + 1) < top:
        k += 1
    return k + 1


def _positive(claim, k, value_fn, cell_fn, options):
    def build(p):
        return Enclosure.exact(0, p), value_fn(cell_fn(p))

    return certify_less(claim, k, build, prec=_prec(options))


def _c_positivity(k, options):
    top = options.get("top", 10**6)
    return [_positive("c_positive", k, totient.c_function, lambda p: grid_cell(k, 6, top, p), options)]


def _growth(k, options):
    top = options.get("top", 10**6)
    return [_positive("growth_probe", k, totient.growth_probe, lambda p: grid_cell(k, 22, top, p), options)]


def _k_constant(n, options):
    cutoff = options.get("cutoff", DEFAULT_CUTOFF)
    prec = max(_prec(options), 128)
    k = k_enclosure(cutoff, prec).value
    lo, hi = K_WINDOW
    out = [
        certify_less("k_above_0.533821", cutoff, lambda p: (Enclosure.exact(lo, p), k), prec=prec),
        certify_less("k_below_0.533822", cutoff, lambda p: (k, Enclosure.exact(hi, p)), prec=prec),
        certify_less(
            "k_width_below_1e-6", cutoff, lambda p: (Enclosure.exact(mpfr_to_fraction(k.width), p), Enclosure.exact(Fraction(1, 10**6), p)), prec=prec
        ),
        partial_sum_check(prec),
    ]
    return [dataclasses.replace(r, n=n, note=r.note or f"cutoff={cutoff}") for r in out]


def _proof_constants(n, options):
    reports = totient.loglog_constants(_prec(options)) + totient.piecewise_constants(_prec(options))
    return [dataclasses.replace(r, n=i + 1) for i, r in enumerate(reports)][n - 1 : n]


CAMPAIGNS = {
    c.name: c
    for c in [
        Campaign("theorem1", "log G(n) sandwiched between main + l_G and main + u_G", (2, 5000), 2, 20000, _theorem1),
        Campaign("corollary_h", "log H(n) sandwiched between main_H + l_H and main_H + u_H", (2, 5000), 2, 10000, _corollary_h),
        Campaign("nice_bounds", "deviation bounds for log G, log H and the power bounds on G, H", (1, 5000), 1, 10000, _nice),
        Campaign("silverberg", "log G(n) < n log(6.31 n)", (1, 5000), 1, 20000, _silverberg),
        Campaign("phi_prop1", "Phi(n) <= 2n prod_{i<=t} p_i/(p_i-1)", (1, 100000), 1, totient.BULK_LIMIT, _product_bound),
        Campaign("phi_thm2", "Phi(n) below the piecewise bound for even n", (2, 100000), 1, totient.BULK_LIMIT, _thm2),
        Campaign(
            "phi_loglog",
            "Phi(n) < 6.49 n log log n outside the exception set",
            (3, 102131),
            1,
            totient.BULK_LIMIT,
            _loglog,
            frozenset(totient.EXCEPTIONS - {1, 2}),
        ),
        Campaign("phi_powers3", "Phi(3^k) = 6 * 3^k (range is over k)", (1, 7), 1, 12, _powers3),
        Campaign("primorial", "Phi(phi(q#)/2) >= q# and the Mertens growth (range is over q)", (2, 13), 2, 19, _primorial),
        Campaign("oracle_gcd", "gcd of |GL_n(Z/N)| over 3 <= N <= nmax equals G(n)", (1, 6), 1, 12, _oracle_gl),
        Campaign("oracle_gsp", "gcd of |GSp_2g(Z/N)| over 3 <= N <= nmax equals H(g)", (1, 4), 1, 8, _oracle_gsp),
        Campaign("c_positivity", "c(t) > 0 on geometric cells covering [6, top] (range is over cells)", (0, grid_size(6, 10**6) - 1), 0, 2000, _c_positivity),
        Campaign("growth_probe", "(log t)(log log t) - log(t-2) - log log 2 > 0 on cells covering [22, top]", (0, grid_size(22, 10**6) - 1), 0, 2000, _growth),
        Campaign("k_constant", "K inside (0.533821, 0.533822) with width < 1e-6 (n is ignored)", (1, 1), 1, 1, _k_constant),
        Campaign("proof_constants", "numeric constants behind the 6.49 and 9.625 bounds (range is over items)", (1, 11), 1, 11, _proof_constants),
    ]
}


@dataclasses.dataclass
class CampaignSummary:
    campaign: str
    start: int
    stop: int
    options: dict
    reports: list
    counts: dict
    failures: list  # reports that fail and were not designed to
    expected_failures: list  # n in the designed exception set that did fail
    missing_expected: list  # n in the designed exception set that did not fail
    inconclusive: list
    wall_time: float = 0.0

    @property
    def ok(self):
        return not self.failures and not self.missing_expected and not self.inconclusive

    @property
    def exit_code(self):
        if self.failures or self.missing_expected:
            return 1
        if self.inconclusive:
            return 2
        return 0

    def to_json(self, digits=12, records=True) -> str:
        data = {
            "campaign": self.campaign,
            "range": [self.start, self.stop],
            "options": {k: v for k, v in sorted(self.options.items()) if not k.startswith("_")},
            "counts": self.counts,
            "ok": self.ok,
            "failures": [report_record(r, digits) for r in self.failures],
            "inconclusive": [report_record(r, digits) for r in self.inconclusive],
            "expected_failures": self.expected_failures,
            "missing_expected": self.missing_expected,
        }
        if records:
            data["records"] = [report_record(r, digits) for r in self.reports]
        return json.dumps(data, indent=1, sort_keys=True) + "\n"

    def to_csv(self, digits=12) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for r in self.reports:
            writer.writerow(report_record(r, digits))
        return buf.getvalue()


def _bounds(e, digits):
    if e is None:
        return "", ""
    return format_down(e.lo, digits), format_up(e.hi, digits)


def report_record(r: BoundReport, digits=12) -> dict:
    lhs_lo, lhs_hi = _bounds(r.lhs, digits)
    rhs_lo, rhs_hi = _bounds(r.rhs, digits)
    return {
        "campaign": r.campaign,
        "n": r.n,
        "claim": r.claim,
        "status": r.status.value,
        "lhs_lo": lhs_lo,
        "lhs_hi": lhs_hi,
        "rhs_lo": rhs_lo,
        "rhs_hi": rhs_hi,
        "precision": r.precision_used,
        "equality": int(r.equality),
    }


def get_campaign(name) -> Campaign:
    try:
        return CAMPAIGNS[name]
    except KeyError:
        raise DomainError(f"unknown campaign {name!r}; choose from {', '.join(sorted(CAMPAIGNS))}") from None


def _evaluate_chunk(name, start, stop, options):
    campaign = CAMPAIGNS[name]
    out = []
    for n in range(start, stop + 1):
        if n < campaign.lowest:
            reports = [out_of_domain(name, n, "below the campaign's domain")]
        else:
            reports = campaign.evaluate(n, options)
        out.extend(r.tagged(name) for r in reports)
    return out


def _chunks(start, stop, parts):
    size = -(-(stop - start + 1) // parts)
    return [(a, min(a + size - 1, stop)) for a in range(start, stop + 1, size)]


def run_campaign(name, start=None, stop=None, *, workers=1, **options) -> CampaignSummary:
    """Run campaign ``name`` over ``start..stop`` (inclusive; defaults per campaign)."""
    campaign = get_campaign(name)
    start = campaign.default[0] if start is None else int(start)
    stop = campaign.default[1] if stop is None else int(stop)
    if stop < start:
        raise SizeError("empty range")
    if stop > campaign.highest:
        raise SizeError(f"{name} is limited to n <= {campaign.highest}")
    options = dict(options)
    options["_stop"] = max(stop, 1)
    began = time.perf_counter()
    if workers > 1 and stop > start:
        pieces = _chunks(start, stop, workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_evaluate_chunk, name, a, b, options) for a, b in pieces]
            reports = [r for f in futures for r in f.result()]
    else:
        reports = _evaluate_chunk(name, start, stop, options)
    elapsed = time.perf_counter() - began
    return summarize(campaign, start, stop, options, reports, elapsed)


def summarize(campaign, start, stop, options, reports, elapsed=0.0) -> CampaignSummary:
    worst: dict = {}
    for r in reports:
        if r.n not in worst or _SEVERITY[r.status] > _SEVERITY[worst[r.n]]:
            worst[r.n] = r.status
    counts = {s.value: 0 for s in Status}
    for status in worst.values():
        counts[status.value] += 1
    expected = campaign.expected_failures
    failing_n = sorted(n for n, s in worst.items() if s is Status.FAILS)
    designed = [n for n in failing_n if n in expected]
    missing = sorted(n for n in expected if start <= n <= stop and worst.get(n) is not Status.FAILS)
    failures = [r for r in reports if r.status is Status.FAILS and r.n not in expected]
    inconclusive = [r for r in reports if r.status is Status.INCONCLUSIVE]
    return CampaignSummary(
        campaign.name, start, stop, options, reports, counts, failures, designed, missing, inconclusive, elapsed
    )
