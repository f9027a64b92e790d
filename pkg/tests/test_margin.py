import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coexbudget.margin import (
    FSPL_CONSTANT_DB,
    OffenderSource,
    Verdict,
    aggregate_and_margin,
    free_space_path_loss,
    in_band_offender_power,
    parse_offenders,
)
from coexbudget.rfmath import PowerLevel


def test_fspl_values():
    assert free_space_path_loss(1, 2.4e9) == pytest.approx(40.05, abs=0.01)
    assert free_space_path_loss(10, 2.4e9) == pytest.approx(60.05, abs=0.01)
    assert free_space_path_loss(1, 1) == FSPL_CONSTANT_DB == -147.552


def test_fspl_constant_is_rounded_four_pi_over_c():
    assert 20 * math.log10(4 * math.pi / 299_792_458) == pytest.approx(FSPL_CONSTANT_DB, abs=5e-4)


@pytest.mark.parametrize("d, f", [(0, 1e9), (1, 0), (-1, 1e9)])
def test_fspl_domain(d, f):
    with pytest.raises(ValueError):
        free_space_path_loss(d, f)


def test_in_band_power():
    src = OffenderSource(distance_m=1.0, frequency_hz=3.5e9)
    base = in_band_offender_power(src, 1e6).dbmw
    # FSPL(1 m, 3.5 GHz) = 43.3294 dB
    assert base == pytest.approx(-84.62, abs=0.01)
    assert in_band_offender_power(src, 1.25e6).dbmw - base == pytest.approx(0.969, abs=1e-3)
    far = OffenderSource(distance_m=2.0, frequency_hz=3.5e9)
    assert in_band_offender_power(far, 1e6).dbmw - base == pytest.approx(-6.02, abs=0.01)


def test_zero_path_loss_gives_eirp():
    d = 10 ** (-(20 * math.log10(3.5e9) + FSPL_CONSTANT_DB) / 20)
    src = OffenderSource(distance_m=d, frequency_hz=3.5e9)
    assert free_space_path_loss(d, 3.5e9) == pytest.approx(0.0, abs=1e-9)
    assert in_band_offender_power(src, 2e6).dbmw == pytest.approx(-41.3 + 10 * math.log10(2), abs=1e-9)


@pytest.mark.parametrize("n", [1, 2, 10, 100])
def test_identical_sources(n):
    src = OffenderSource(distance_m=3.0, frequency_hz=4e9)
    single = in_band_offender_power(src, 1e6).dbmw
    r = aggregate_and_margin([src] * n, PowerLevel.from_dbmw(-113.112), 1e6)
    assert r.aggregate.dbmw == pytest.approx(single + 10 * math.log10(n), abs=1e-9)


def _source_at(level_dbmw, bw=1e6):
    src = OffenderSource(distance_m=1.0, frequency_hz=3.5e9)
    shift = level_dbmw - in_band_offender_power(src, bw).dbmw
    return OffenderSource(distance_m=1.0, frequency_hz=3.5e9, eirp_dbm_per_mhz=-41.3 + shift)


def test_exactly_at_threshold_is_compliant():
    threshold = PowerLevel.from_dbmw(-113.112)
    r = aggregate_and_margin([_source_at(-113.112)], threshold, 1e6)
    assert r.margin_db == pytest.approx(0.0, abs=1e-9)
    src = OffenderSource(1.0, 3.5e9)
    boundary = aggregate_and_margin([src], in_band_offender_power(src, 1e6), 1e6)
    assert boundary.margin_db == 0.0
    assert boundary.verdict is Verdict.COMPLIANT


def test_two_half_power_sources():
    half = -113.112 - 10 * math.log10(2)
    r = aggregate_and_margin([_source_at(half)] * 2, PowerLevel.from_dbmw(-113.112), 1e6)
    assert r.margin_db == pytest.approx(0.0, abs=1e-9)


def test_single_offender_exceeds():
    r = aggregate_and_margin([OffenderSource(1.0, 3.5e9)], PowerLevel.from_dbmw(-113.112), 1e6)
    assert r.verdict is Verdict.EXCEEDED
    # -113.112 - (-84.6294); the rounded -84.62 gives -28.49
    assert r.margin_db == pytest.approx(-28.49, abs=0.01)
    assert r.margin_db == pytest.approx(-28.4826, abs=1e-4)


def test_empty_sources_rejected():
    with pytest.raises(ValueError):
        aggregate_and_margin([], PowerLevel(1e-15), 1e6)


sources = st.lists(
    st.builds(OffenderSource, st.floats(0.1, 100), st.floats(3.1e9, 10.6e9), st.floats(-60, -30)),
    min_size=1,
    max_size=20,
)


@given(sources, st.randoms())
def test_order_independent(srcs, rnd):
    t = PowerLevel.from_dbmw(-110)
    shuffled = list(srcs)
    rnd.shuffle(shuffled)
    assert aggregate_and_margin(srcs, t, 1e6).aggregate == aggregate_and_margin(shuffled, t, 1e6).aggregate


@given(sources, st.floats(0.1, 10))
def test_adding_source_decreases_margin(srcs, d):
    t = PowerLevel.from_dbmw(-110)
    before = aggregate_and_margin(srcs, t, 1e6).margin_db
    after = aggregate_and_margin([*srcs, OffenderSource(d, 4e9)], t, 1e6).margin_db
    assert after < before


def test_parse_offenders():
    srcs = parse_offenders([{"distance_m": 2, "frequency_ghz": 4.0}, {"distance_m": 1, "frequency_ghz": 3.5, "eirp_dbm_per_mhz": -50}])
    assert srcs[0].eirp_dbm_per_mhz == -41.3
    assert srcs[0].frequency_hz == 4e9
    assert srcs[1].eirp_dbm_per_mhz == -50


@pytest.mark.parametrize(
    "doc, fragment",
    [
        ([], "empty"),
        ({}, "array"),
        ([{"distance_m": 1, "frequency_ghz": 4}, {"distance_m": 1}], "entry 1"),
        ([{"distance_m": "x", "frequency_ghz": 4}], "entry 0"),
        ([{"distance_m": -1, "frequency_ghz": 4}], "entry 0"),
        ([{"distance_m": 1, "frequency_ghz": 4, "gain": 3}], "entry 0"),
        ([3], "entry 0"),
    ],
)
def test_parse_offenders_errors(doc, fragment):
    with pytest.raises(ValueError, match=fragment):
        parse_offenders(doc)
