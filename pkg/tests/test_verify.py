import csv
import io
import json

import pytest

from minkphi import verify as V
from minkphi.errors import DomainError, SizeError
from minkphi.reports import Status


def test_sandwich_campaign_on_2_to_999():
    s = V.run_campaign("theorem1", 2, 999)
    assert s.counts["holds"] == 998 and s.counts["fails"] == 0
    assert s.ok and s.exit_code == 0


def test_counts_sum_to_range_size():
    for name, (a, b) in [("nice_bounds", (1, 40)), ("phi_thm2", (1, 50)), ("primorial", (2, 13)), ("k_constant", (1, 1))]:
        s = V.run_campaign(name, a, b)
        assert sum(s.counts.values()) == b - a + 1, name


def test_power_bound_equality_flagged_at_2():
    s = V.run_campaign("nice_bounds", 1, 167)
    assert s.ok
    flagged = {(r.n, r.claim) for r in s.reports if r.equality}
    assert (2, "G_power") in flagged
    assert all(n <= 2 for n, _ in flagged)


def test_loglog_designed_failures():
    s = V.run_campaign("phi_loglog", 3, 102131)
    assert s.expected_failures == [3, 4, 5, 6, 8, 9, 10, 12, 16, 18, 20, 24]
    assert not s.failures and not s.missing_expected
    assert s.exit_code == 0


def test_loglog_small_range_includes_out_of_domain():
    s = V.run_campaign("phi_loglog", 1, 30)
    assert s.counts["out_of_domain"] == 2 and s.counts["fails"] == 12


def test_missing_designed_failure_is_an_error():
    campaign = V.CAMPAIGNS["phi_loglog"]
    reports = [r.tagged("phi_loglog") for n in range(3, 10) for r in V._loglog(n, {"_stop": 30})]
    reports = [r if r.n != 5 else r.__class__(**{**r.__dict__, "status": Status.HOLDS}) for r in reports]
    s = V.summarize(campaign, 3, 9, {}, reports)
    assert s.missing_expected == [5] and s.exit_code == 1


def test_unknown_campaign():
    with pytest.raises(DomainError):
        V.run_campaign("nope")


def test_infeasible_range():
    with pytest.raises(SizeError):
        V.run_campaign("phi_loglog", 3, 10**7)
    with pytest.raises(SizeError):
        V.run_campaign("theorem1", 10, 5)


@pytest.mark.parametrize("name", ["oracle_gcd", "oracle_gsp", "phi_powers3", "primorial", "proof_constants", "k_constant"])
def test_small_campaigns_pass(name):
    assert V.run_campaign(name).ok


def test_grid_campaigns_cover_their_interval():
    for name, base in [("c_positivity", 6), ("growth_probe", 22)]:
        s = V.run_campaign(name)
        assert s.ok
        first = V.grid_cell(s.start, base, 10**6)
        last = V.grid_cell(s.stop, base, 10**6)
        assert first.lo <= base and last.hi >= 10**6


def test_oracle_single_point():
    s = V.run_campaign("oracle_gcd", 2, 2, nmax=200)
    (r,) = s.reports
    assert r.holds and r.lhs.lo == 48


def test_deterministic_output():
    a = V.run_campaign("theorem1", 2, 120).to_csv()
    b = V.run_campaign("theorem1", 2, 120).to_csv()
    assert a == b
    assert V.run_campaign("silverberg", 1, 50).to_json() == V.run_campaign("silverberg", 1, 50).to_json()


def test_parallel_merge_matches_serial():
    serial = V.run_campaign("phi_prop1", 1, 400)
    parallel = V.run_campaign("phi_prop1", 1, 400, workers=3)
    assert serial.to_csv() == parallel.to_csv()


def test_csv_schema():
    text = V.run_campaign("theorem1", 2, 5).to_csv()
    rows = list(csv.DictReader(io.StringIO(text)))
    assert tuple(rows[0].keys()) == V.CSV_COLUMNS
    assert len(rows) == 8
    assert all("," not in r["lhs_lo"] for r in rows)
    assert float(rows[0]["lhs_lo"]) <= float(rows[0]["lhs_hi"])


def test_json_summary_has_no_timing():
    data = json.loads(V.run_campaign("phi_powers3").to_json())
    assert data["ok"] and data["range"] == [1, 7]
    assert "wall_time" not in data
    assert len(data["records"]) == 7


def test_precision_option_is_respected():
    s = V.run_campaign("silverberg", 1, 5, precision=128)
    assert all(r.precision_used == 128 for r in s.reports)
