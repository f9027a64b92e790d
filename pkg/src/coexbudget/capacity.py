"""Rate / spectral-efficiency coupling and the threshold-vs-rate sweeps.

A peak rate ``R`` delivered at minimum spectral efficiency ``eta`` occupies
``R / eta`` of bandwidth, and the interference threshold follows that
effective bandwidth rather than the nominal channel width.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

from coexbudget.budget import max_aggregate_interference
from coexbudget.noise import noise_power
from coexbudget.rfmath import PowerLevel, check_positive
from coexbudget.standards import FDD_COLUMNS_MHZ, Link, Registry, Side, StationProfile, default_registry

SWEEP_FIELDS = (
    "mobility_kmh",
    "link",
    "side",
    "b_fdd_mhz",
    "b_tdd_mhz",
    "r_peak_mbps",
    "eta_bps_hz",
    "b_eff_mhz",
    "i_agg_max_dbmw",
)


@dataclass(frozen=True)
class SweepPoint:
    mobility_kmh: float
    link: Link
    side: Side
    b_fdd_mhz: float
    r_peak_mbps: float
    eta_bps_hz: float
    b_eff_mhz: float
    i_agg_max: PowerLevel

    @property
    def b_tdd_mhz(self) -> float:
        return 2.0 * self.b_fdd_mhz

    def row(self) -> dict[str, str]:
        """Rendered values, 4 decimal places, keyed by ``SWEEP_FIELDS``."""
        return {
            "mobility_kmh": f"{self.mobility_kmh:.4f}",
            "link": self.link.value,
            "side": self.side.value,
            "b_fdd_mhz": f"{self.b_fdd_mhz:.4f}",
            "b_tdd_mhz": f"{self.b_tdd_mhz:.4f}",
            "r_peak_mbps": f"{self.r_peak_mbps:.4f}",
            "eta_bps_hz": f"{self.eta_bps_hz:.4f}",
            "b_eff_mhz": f"{self.b_eff_mhz:.4f}",
            "i_agg_max_dbmw": f"{self.i_agg_max.dbmw:.4f}",
        }


def effective_bandwidth(r_b_mbps: float, eta_bps_hz: float) -> float:
    """Bandwidth [Hz] needed to carry ``r_b_mbps`` at ``eta_bps_hz``."""
    r_b = check_positive(r_b_mbps, "rate")
    eta = check_positive(eta_bps_hz, "spectral efficiency")
    return r_b * 1e6 / eta


def threshold_at_rate(
    r_b_mbps: float,
    mobility_kmh: float,
    link: Link | str,
    profile: StationProfile,
    registry: Registry | None = None,
) -> PowerLevel:
    eta = (registry or default_registry()).lookup_eta(mobility_kmh, link)
    return max_aggregate_interference(profile, effective_bandwidth(r_b_mbps, eta)).i_agg_max


def threshold_closed_form_dbmw(r_b_mbps: float, eta_bps_hz: float, profile: StationProfile) -> float:
    """Per-MHz threshold of ``profile`` shifted by ``10 log10(R/eta)``, in dBmW."""
    per_mhz = noise_power(profile, 1e6).watts * (10.0 ** (profile.d_max_db / 10.0) - 1.0)
    return 10.0 * math.log10(per_mhz) + 30.0 + 10.0 * math.log10(r_b_mbps / eta_bps_hz)


def generate_sweep(
    mobility_kmh: float,
    profile: StationProfile,
    registry: Registry | None = None,
) -> list[SweepPoint]:
    """Thresholds for every peak-rate cell, ordered by FDD bandwidth, link, side."""
    registry = registry or default_registry()
    points = []
    for b_fdd in FDD_COLUMNS_MHZ:
        for link in Link:
            eta = registry.lookup_eta(mobility_kmh, link)
            for side in Side:
                rate = registry.lookup_peak_rate(b_fdd, link, side)
                b_eff_mhz = check_positive(rate, "rate") / check_positive(eta, "spectral efficiency")
                points.append(
                    SweepPoint(
                        mobility_kmh=float(mobility_kmh),
                        link=link,
                        side=side,
                        b_fdd_mhz=float(b_fdd),
                        r_peak_mbps=rate,
                        eta_bps_hz=eta,
                        b_eff_mhz=b_eff_mhz,
                        i_agg_max=max_aggregate_interference(profile, b_eff_mhz * 1e6).i_agg_max,
                    )
                )
    return points


def sweep_to_csv(points: list[SweepPoint]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SWEEP_FIELDS, lineterminator="\n")
    writer.writeheader()
    for p in points:
        writer.writerow(p.row())
    return buf.getvalue()


def sweep_records(points: list[SweepPoint]) -> list[dict[str, object]]:
    """JSON-ready records carrying the same 4-decimal values as the CSV."""
    records = []
    for p in points:
        row = p.row()
        records.append({k: (v if k in ("link", "side") else float(v)) for k, v in row.items()})
    return records


def sweep_to_json(points: list[SweepPoint]) -> str:
    return json.dumps(sweep_records(points), indent=2) + "\n"
