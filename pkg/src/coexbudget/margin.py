"""Offender aggregation against an interference threshold.

An extension beyond the threshold derivation itself: each UWB offender is a
flat-PSD emitter at the regulatory EIRP density, attenuated by free-space path
loss, collected over the victim bandwidth with a 0 dBi receive antenna and no
wall or body losses.  Contributions add in watts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterable, Mapping, Sequence

from coexbudget.rfmath import PowerLevel, check_finite, check_positive
from coexbudget.standards import UWB

#: 20*log10(4*pi/c), rounded.
FSPL_CONSTANT_DB = -147.552


class Verdict(str, Enum):
    COMPLIANT = "Compliant"
    EXCEEDED = "Exceeded"


@dataclass(frozen=True)
class OffenderSource:
    distance_m: float
    frequency_hz: float
    eirp_dbm_per_mhz: float = UWB.max_eirp_dbm_per_mhz

    def __post_init__(self) -> None:
        object.__setattr__(self, "distance_m", check_positive(self.distance_m, "distance"))
        object.__setattr__(self, "frequency_hz", check_positive(self.frequency_hz, "frequency"))
        object.__setattr__(self, "eirp_dbm_per_mhz", check_finite(self.eirp_dbm_per_mhz, "EIRP density"))

    @property
    def in_uwb_band(self) -> bool:
        return UWB.freq_min_ghz * 1e9 <= self.frequency_hz <= UWB.freq_max_ghz * 1e9


@dataclass(frozen=True)
class MarginReport:
    threshold: PowerLevel
    aggregate: PowerLevel
    contributions: tuple[PowerLevel, ...]

    @property
    def margin_db(self) -> float:
        return self.threshold.dbmw - self.aggregate.dbmw

    @property
    def verdict(self) -> Verdict:
        return Verdict.COMPLIANT if self.margin_db >= 0 else Verdict.EXCEEDED


def free_space_path_loss(distance_m: float, frequency_hz: float) -> float:
    """Free-space loss in dB: ``20 log10(d) + 20 log10(f) - 147.552``."""
    distance_m = check_positive(distance_m, "distance")
    frequency_hz = check_positive(frequency_hz, "frequency")
    return 20.0 * math.log10(distance_m) + 20.0 * math.log10(frequency_hz) + FSPL_CONSTANT_DB


def in_band_offender_power(src: OffenderSource, victim_bw_hz: float) -> PowerLevel:
    victim_bw_hz = check_positive(victim_bw_hz, "victim bandwidth")
    dbmw = (
        src.eirp_dbm_per_mhz
        + 10.0 * math.log10(victim_bw_hz / 1e6)
        - free_space_path_loss(src.distance_m, src.frequency_hz)
    )
    return PowerLevel.from_dbmw(dbmw)


def aggregate_and_margin(
    sources: Sequence[OffenderSource],
    threshold: PowerLevel,
    victim_bw_hz: float,
) -> MarginReport:
    if not sources:
        raise ValueError("at least one offender is required")
    contributions = tuple(in_band_offender_power(s, victim_bw_hz) for s in sources)
    total = math.fsum(c.watts for c in contributions)
    return MarginReport(threshold=threshold, aggregate=PowerLevel(total), contributions=contributions)


def parse_offenders(doc: Any) -> list[OffenderSource]:
    """Parse ``[{eirp_dbm_per_mhz?, distance_m, frequency_ghz}, ...]``.

    Errors name the offending entry index.
    """
    if not isinstance(doc, list):
        raise ValueError("offender list must be a JSON array")
    if not doc:
        raise ValueError("offender list is empty")
    allowed = {"eirp_dbm_per_mhz", "distance_m", "frequency_ghz"}
    sources = []
    for i, entry in enumerate(doc):
        if not isinstance(entry, Mapping):
            raise ValueError(f"offender entry {i}: expected a JSON object")
        unknown = set(entry) - allowed
        if unknown:
            raise ValueError(f"offender entry {i}: unknown key {sorted(unknown)[0]!r}")
        try:
            values = {k: _number(entry[k]) for k in ("distance_m", "frequency_ghz")}
            eirp = _number(entry.get("eirp_dbm_per_mhz", UWB.max_eirp_dbm_per_mhz))
            sources.append(OffenderSource(values["distance_m"], values["frequency_ghz"] * 1e9, eirp))
        except KeyError as exc:
            raise ValueError(f"offender entry {i}: missing {exc.args[0]!r}") from None
        except (TypeError, ValueError) as exc:
            raise ValueError(f"offender entry {i}: {exc}") from None
    return sources


def _number(value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise TypeError(f"expected a number, got {value!r}")
    return float(value)


def total_power(levels: Iterable[PowerLevel]) -> PowerLevel:
    return PowerLevel(math.fsum(p.watts for p in levels))
