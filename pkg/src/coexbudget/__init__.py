"""Interference budget toolkit for UWB offenders against an IEEE 802.20 (MBWA) victim."""

from coexbudget.rfmath import PowerLevel, db_to_linear, linear_to_db, watts_to_dbmw
from coexbudget.standards import (
    Link,
    MobilityClass,
    Registry,
    Side,
    StationKind,
    StationProfile,
    default_profile,
    default_registry,
    load_overrides,
)
from coexbudget.noise import NoiseBreakdown, amplifier_temperature, noise_power, sinr_out, snr_out
from coexbudget.budget import (
    BudgetResult,
    degradation,
    degradation_roundtrip,
    max_aggregate_interference,
    ms_reduced_model,
)
from coexbudget.capacity import SweepPoint, effective_bandwidth, generate_sweep, threshold_at_rate
from coexbudget.cabin import CabinGeometry, optimal_master_xy, worst_case_distance
from coexbudget.margin import (
    MarginReport,
    OffenderSource,
    Verdict,
    aggregate_and_margin,
    free_space_path_loss,
    in_band_offender_power,
)

__version__ = "0.1.0"
