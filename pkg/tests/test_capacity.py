import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coexbudget.capacity import (
    SWEEP_FIELDS,
    effective_bandwidth,
    generate_sweep,
    sweep_records,
    sweep_to_csv,
    sweep_to_json,
    threshold_at_rate,
    threshold_closed_form_dbmw,
)
from coexbudget.standards import MBWA, Link, Side, UntabulatedError

HS_OFFSET_DB = 10 * math.log10(4 / 3)


def test_effective_bandwidth():
    assert effective_bandwidth(2, 2.0) == pytest.approx(1e6)
    assert effective_bandwidth(16, 1.5) / 1e6 == pytest.approx(10.667, abs=1e-3)
    # 625k-MC downlink rate on its carrier implies 2.3888 bps/Hz
    assert effective_bandwidth(MBWA.rate_625k_dl_mbps, 2.3888) == pytest.approx(625e3, rel=1e-12)


@pytest.mark.parametrize("r, eta", [(0, 1.0), (1, 0), (-1, 1.0)])
def test_effective_bandwidth_domain(r, eta):
    with pytest.raises(ValueError):
        effective_bandwidth(r, eta)


@pytest.mark.parametrize(
    "rate, speed, link, expected",
    [
        (2, 3, Link.DL, -113.112),
        (36, 3, Link.UL, -97.55),
        (2, 120, Link.DL, -111.86),
    ],
)
def test_threshold_at_rate(ms, rate, speed, link, expected):
    assert threshold_at_rate(rate, speed, link, ms).dbmw == pytest.approx(expected, abs=0.01)


def test_threshold_untabulated_mobility(ms):
    with pytest.raises(UntabulatedError):
        threshold_at_rate(2, 250, "DL", ms)


@given(st.floats(0.01, 1000), st.sampled_from([3, 120]), st.sampled_from(list(Link)))
def test_threshold_equals_closed_form(rate, speed, link):
    from coexbudget.standards import default_profile, lookup_eta

    ms = default_profile("ms")
    direct = threshold_closed_form_dbmw(rate, lookup_eta(speed, link), ms)
    assert threshold_at_rate(rate, speed, link, ms).dbmw == pytest.approx(direct, abs=1e-9)


def test_sweep_shape_and_order(ms):
    pts = generate_sweep(3, ms)
    assert len(pts) == 32
    keys = [(p.b_fdd_mhz, p.link, p.side) for p in pts]
    assert keys[:4] == [(2.5, Link.DL, Side.LOW), (2.5, Link.DL, Side.HIGH), (2.5, Link.UL, Side.LOW), (2.5, Link.UL, Side.HIGH)]
    assert [k[0] for k in keys[::4]] == [2.5, 5, 7.5, 10, 12.5, 15, 17.5, 20]
    assert len(set(keys)) == 32


def test_sweep_point_invariants(ms):
    for p in generate_sweep(120, ms):
        assert p.b_eff_mhz == p.r_peak_mbps / p.eta_bps_hz
        assert p.b_tdd_mhz == 2 * p.b_fdd_mhz
        assert p.i_agg_max.dbmw == pytest.approx(-113.112 + 10 * math.log10(p.b_eff_mhz), abs=0.01)


def test_pedestrian_dl_high_first_column(ms):
    p = next(p for p in generate_sweep(3, ms) if (p.b_fdd_mhz, p.link, p.side) == (2.5, Link.DL, Side.HIGH))
    assert p.r_peak_mbps == 9
    assert p.i_agg_max.dbmw == pytest.approx(-106.58, abs=0.01)


def test_uniform_mobility_offset(ms):
    for ped, hs in zip(generate_sweep(3, ms), generate_sweep(120, ms)):
        assert hs.i_agg_max.dbmw - ped.i_agg_max.dbmw == pytest.approx(HS_OFFSET_DB, abs=1e-9)
        assert hs.i_agg_max.watts / ped.i_agg_max.watts == pytest.approx(4 / 3, rel=1e-12)


def test_sweep_monotone_in_rate(ms):
    for speed in (3, 120):
        pts = generate_sweep(speed, ms)
        for link in Link:
            for side in Side:
                series = [p for p in pts if p.link == link and p.side == side]
                for a, b in zip(series, series[1:]):
                    assert b.r_peak_mbps > a.r_peak_mbps
                    assert b.i_agg_max.dbmw > a.i_agg_max.dbmw


def test_csv_and_json_agree(ms):
    pts = generate_sweep(3, ms)
    lines = sweep_to_csv(pts).splitlines()
    assert lines[0] == "mobility_kmh,link,side,b_fdd_mhz,b_tdd_mhz,r_peak_mbps,eta_bps_hz,b_eff_mhz,i_agg_max_dbmw"
    assert len(lines) == 33
    records = json.loads(sweep_to_json(pts))
    assert records == sweep_records(pts)
    for line, rec in zip(lines[1:], records):
        cells = line.split(",")
        assert list(rec) == list(SWEEP_FIELDS)
        for name, cell in zip(SWEEP_FIELDS, cells):
            if name in ("link", "side"):
                assert rec[name] == cell
            else:
                assert rec[name] == float(cell)
    assert lines[2].split(",")[-1] == "-106.5788"
