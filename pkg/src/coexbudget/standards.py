"""Parameter registry for the MBWA victim and the UWB offender.

Holds the receiver profiles, the mobility classes, the minimum spectral
efficiencies and the per-user peak-rate table, plus the JSON override loader.

The peak-rate table is not stored cell by cell.  Every cell is
``ratio(link, side) * B_tdd`` where the ratio is the per-user rate quoted at
2.5 MHz divided by 2.5 MHz; ``PRINTED_PEAK_RATES_MBPS`` keeps the printed table
only so the rule can be checked against it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from pathlib import Path
from types import MappingProxyType
from typing import Any, Mapping

from coexbudget.rfmath import check_finite


class ParameterError(ValueError):
    """Raised for an invalid parameter override document."""


class UntabulatedError(ValueError):
    """Raised when a lookup falls outside the tabulated domain."""


class StationKind(str, Enum):
    MOBILE = "mobile_station"
    BASE = "base_station"

    @classmethod
    def parse(cls, text: str) -> "StationKind":
        aliases = {"ms": cls.MOBILE, "mobile": cls.MOBILE, "bs": cls.BASE, "base": cls.BASE}
        key = text.strip().lower()
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown station kind {text!r}; expected ms or bs") from None


class Link(str, Enum):
    DL = "DL"
    UL = "UL"


class Side(str, Enum):
    LOW = "Low"
    HIGH = "High"


class MobilityClass(Enum):
    """Telecommunication mobility classes and their top speed in km/hr."""

    STATIONARY = ("Stationary", 0.0)
    PEDESTRIAN = ("Pedestrian", 10.0)
    VEHICULAR = ("Vehicular", 100.0)
    HIGH_SPEED_VEHICULAR = ("High-speed Vehicular", 500.0)
    AERONAUTICAL = ("Aeronautical", 1500.0)
    SATELLITE = ("Satellite", 27000.0)

    def __init__(self, label: str, max_speed_kmh: float) -> None:
        self.label = label
        self.max_speed_kmh = max_speed_kmh

    @classmethod
    def for_speed(cls, speed_kmh: float) -> "MobilityClass":
        """Smallest class whose top speed covers ``speed_kmh``."""
        speed_kmh = check_finite(speed_kmh, "speed")
        if speed_kmh < 0:
            raise ValueError("speed must be non-negative")
        for member in cls:
            if speed_kmh <= member.max_speed_kmh:
                return member
        raise ValueError(f"speed {speed_kmh} km/hr exceeds every mobility class")


#: Sweep labels bound to the two spectral-efficiency anchors.
MOBILITY_LABELS: Mapping[str, float] = MappingProxyType({"pedestrian": 3.0, "highspeed": 120.0})


@dataclass(frozen=True)
class StationProfile:
    kind: StationKind
    d_max_db: float
    t_rx_k: float
    nf_db: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", StationKind(self.kind))
        for name in ("d_max_db", "t_rx_k", "nf_db"):
            object.__setattr__(self, name, check_finite(getattr(self, name), name))
        if self.d_max_db < 0:
            raise ValueError("d_max_db must be non-negative")
        if self.nf_db < 0:
            raise ValueError("nf_db must be non-negative")
        if self.t_rx_k <= 0:
            raise ValueError("t_rx_k must be positive")


DEFAULT_PROFILES: Mapping[StationKind, StationProfile] = MappingProxyType(
    {
        StationKind.BASE: StationProfile(StationKind.BASE, d_max_db=0.5, t_rx_k=290.0, nf_db=5.0),
        StationKind.MOBILE: StationProfile(StationKind.MOBILE, d_max_db=0.5, t_rx_k=290.0, nf_db=10.0),
    }
)

#: Minimum spectral efficiency [bps/Hz] keyed by (speed km/hr, link).
DEFAULT_ETA: Mapping[tuple[float, Link], float] = MappingProxyType(
    {
        (3.0, Link.DL): 2.0,
        (3.0, Link.UL): 1.0,
        (120.0, Link.DL): 1.5,
        (120.0, Link.UL): 0.75,
    }
)

#: FDD channel bandwidths [MHz]; the paired TDD bandwidth is twice each.
FDD_COLUMNS_MHZ: tuple[Fraction, ...] = tuple(
    Fraction(s) for s in ("2.5", "5", "7.5", "10", "12.5", "15", "17.5", "20")
)

#: Peak rate per MHz of TDD bandwidth [Mbps/MHz].
DEFAULT_RATE_RATIOS: Mapping[tuple[Link, Side], Fraction] = MappingProxyType(
    {
        (Link.DL, Side.LOW): Fraction("0.4"),
        (Link.DL, Side.HIGH): Fraction("1.8"),
        (Link.UL, Side.LOW): Fraction("0.12"),
        (Link.UL, Side.HIGH): Fraction("0.9"),
    }
)

#: Peak data rate per user [Mbps] exactly as printed, one entry per FDD column.
PRINTED_PEAK_RATES_MBPS: Mapping[tuple[Link, Side], tuple[str, ...]] = MappingProxyType(
    {
        (Link.DL, Side.LOW): ("2", "4", "6", "8", "10", "12", "14", "16"),
        (Link.DL, Side.HIGH): ("9", "18", "27", "36", "45", "54", "63", "72"),
        (Link.UL, Side.LOW): ("0.6", "1.2", "1.8", "2.4", "3", "3.6", "4.2", "4.8"),
        (Link.UL, Side.HIGH): ("4.5", "9", "13.5", "18", "22.5", "27", "31.5", "36"),
    }
)


@dataclass(frozen=True)
class UwbParameters:
    """Numeric UWB (ECMA-368 MB-OFDM) parameters consumed by the margin model."""

    max_eirp_dbm_per_mhz: float = -41.3
    max_eirp_w_per_mhz: float = 7.413e-8
    channel_bw_mhz: float = 528.0
    freq_min_ghz: float = 3.1
    freq_max_ghz: float = 10.6
    peak_rate_mbps: tuple[float, float] = (110.0, 480.0)
    range_m: tuple[float, float] = (10.0, 3.0)


@dataclass(frozen=True)
class MbwaParameters:
    """Numeric MBWA (IEEE 802.20) parameters."""

    eirp_dl_dbm: float = 57.0
    eirp_dl_w: float = 501.2
    eirp_ul_dbm: float = 27.0
    eirp_ul_w: float = 0.5
    freq_min_ghz: float = 0.5
    freq_max_ghz: float = 3.5
    fdd_bw_mhz: tuple[float, float] = (2.5, 20.0)
    tdd_bw_mhz: tuple[float, float] = (5.0, 40.0)
    carrier_625k_bw_mhz: float = 0.625
    rate_625k_dl_mbps: float = 1.493
    rate_625k_ul_mbps: float = 0.5712
    # per-user rate range quoted at 2.5 MHz
    user_rate_dl_mbps: tuple[float, float] = (1.0, 4.5)
    user_rate_ul_mbps: tuple[float, float] = (0.3, 2.25)
    max_speed_kmh: float = 250.0


UWB = UwbParameters()
MBWA = MbwaParameters()


def decimal_text(value: Fraction | float) -> str:
    """Shortest plain decimal rendering: ``Fraction(27, 2) -> '13.5'``."""
    value = Fraction(value).limit_denominator(10**12) if isinstance(value, float) else value
    if value.denominator == 1:
        return str(value.numerator)
    text = f"{float(value):.12f}".rstrip("0")
    return text.rstrip(".")


def _as_fraction(value: Fraction | float | str) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float) and not math.isfinite(value):
        raise ValueError("bandwidth must be finite")
    return Fraction(str(value))


@dataclass(frozen=True)
class Registry:
    """Immutable parameter set.  ``with_overrides`` returns a new registry."""

    profiles: Mapping[StationKind, StationProfile] = field(default_factory=lambda: DEFAULT_PROFILES)
    eta: Mapping[tuple[float, Link], float] = field(default_factory=lambda: DEFAULT_ETA)
    rate_ratios: Mapping[tuple[Link, Side], Fraction] = field(default_factory=lambda: DEFAULT_RATE_RATIOS)

    def __post_init__(self) -> None:
        object.__setattr__(self, "profiles", MappingProxyType(dict(self.profiles)))
        object.__setattr__(self, "eta", MappingProxyType(dict(self.eta)))
        object.__setattr__(self, "rate_ratios", MappingProxyType(dict(self.rate_ratios)))

    def profile(self, kind: StationKind | str) -> StationProfile:
        if isinstance(kind, str) and not isinstance(kind, StationKind):
            kind = StationKind.parse(kind)
        return self.profiles[kind]

    def lookup_eta(self, speed_kmh: float, link: Link | str) -> float:
        link = Link(link)
        speed = float(speed_kmh)
        try:
            return self.eta[(speed, link)]
        except KeyError:
            speeds = sorted({s for s, _ in self.eta})
            raise UntabulatedError(
                f"untabulated mobility: {speed_kmh} km/hr (tabulated speeds: "
                + ", ".join(f"{s:g}" for s in speeds)
                + ")"
            ) from None

    def speeds(self) -> list[float]:
        return sorted({s for s, _ in self.eta})

    def peak_rate_fraction(self, b_fdd_mhz: Fraction | float | str, link: Link | str, side: Side | str) -> Fraction:
        b_fdd = _as_fraction(b_fdd_mhz)
        if b_fdd not in FDD_COLUMNS_MHZ:
            raise UntabulatedError(
                f"untabulated bandwidth: {decimal_text(b_fdd)} MHz FDD (tabulated: "
                + ", ".join(decimal_text(c) for c in FDD_COLUMNS_MHZ)
                + ")"
            )
        return self.rate_ratios[(Link(link), Side(side))] * 2 * b_fdd

    def lookup_peak_rate(self, b_fdd_mhz: float, link: Link | str, side: Side | str) -> float:
        """Per-user peak rate [Mbps] for an FDD column."""
        return float(self.peak_rate_fraction(b_fdd_mhz, link, side))

    def peak_rate_table(self) -> dict[tuple[Link, Side], tuple[Fraction, ...]]:
        return {
            (link, side): tuple(self.peak_rate_fraction(b, link, side) for b in FDD_COLUMNS_MHZ)
            for link in Link
            for side in Side
        }

    def with_overrides(self, doc: Mapping[str, Any]) -> "Registry":
        return apply_overrides(self, doc)

    def dump(self) -> dict[str, Any]:
        """JSON-ready view of every registry value."""
        return {
            "profiles": {
                kind.value: {
                    "d_max_db": p.d_max_db,
                    "t_rx_k": p.t_rx_k,
                    "nf_db": p.nf_db,
                }
                for kind, p in sorted(self.profiles.items(), key=lambda kv: kv[0].value)
            },
            "eta_table": {
                f"{speed:g}": {link.value: self.eta[(speed, link)] for link in Link if (speed, link) in self.eta}
                for speed in self.speeds()
            },
            "peak_rate_ratios": {
                link.value: {side.value: decimal_text(self.rate_ratios[(link, side)]) for side in Side}
                for link in Link
            },
            "peak_rate_table_mbps": {
                "b_fdd_mhz": [decimal_text(b) for b in FDD_COLUMNS_MHZ],
                "b_tdd_mhz": [decimal_text(2 * b) for b in FDD_COLUMNS_MHZ],
                **{
                    f"{link.value}_{side.value}": [decimal_text(v) for v in values]
                    for (link, side), values in self.peak_rate_table().items()
                },
            },
        }


_PROFILE_KEYS = {"d_max_db", "t_rx_k", "nf_db"}
_TOP_KEYS = {"mobile_station", "base_station", "eta_table", "peak_rate_ratios"}


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParameterError(f"{where}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ParameterError(f"{where}: must be finite")
    return float(value)


def _object(value: Any, where: str) -> Mapping[str, Any]:
    if not isinstance(value, Mapping):
        raise ParameterError(f"{where}: expected a JSON object")
    return value


def apply_overrides(base: Registry, doc: Mapping[str, Any]) -> Registry:
    """Validate an override document and return a new registry."""
    doc = _object(doc, "overrides")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ParameterError(f"unknown key {sorted(unknown)[0]!r} in overrides")

    profiles = dict(base.profiles)
    for kind in StationKind:
        if kind.value not in doc:
            continue
        section = _object(doc[kind.value], kind.value)
        unknown = set(section) - _PROFILE_KEYS
        if unknown:
            raise ParameterError(f"unknown key {kind.value}.{sorted(unknown)[0]}")
        changes = {k: _number(v, f"{kind.value}.{k}") for k, v in section.items()}
        try:
            profiles[kind] = replace(profiles[kind], **changes)
        except ValueError as exc:
            raise ParameterError(f"{kind.value}: {exc}") from None

    eta = dict(base.eta)
    if "eta_table" in doc:
        table = _object(doc["eta_table"], "eta_table")
        for speed_key, row in table.items():
            try:
                speed = float(speed_key)
            except ValueError:
                raise ParameterError(f"eta_table.{speed_key}: speed key must be numeric") from None
            if not math.isfinite(speed) or speed < 0:
                raise ParameterError(f"eta_table.{speed_key}: speed must be a non-negative number")
            for link_key, value in _object(row, f"eta_table.{speed_key}").items():
                if link_key not in Link._value2member_map_:
                    raise ParameterError(f"unknown key eta_table.{speed_key}.{link_key}")
                value = _number(value, f"eta_table.{speed_key}.{link_key}")
                if value <= 0:
                    raise ParameterError(f"eta_table.{speed_key}.{link_key}: must be positive")
                eta[(speed, Link(link_key))] = value

    ratios = dict(base.rate_ratios)
    if "peak_rate_ratios" in doc:
        table = _object(doc["peak_rate_ratios"], "peak_rate_ratios")
        for link_key, row in table.items():
            if link_key not in Link._value2member_map_:
                raise ParameterError(f"unknown key peak_rate_ratios.{link_key}")
            for side_key, value in _object(row, f"peak_rate_ratios.{link_key}").items():
                if side_key not in Side._value2member_map_:
                    raise ParameterError(f"unknown key peak_rate_ratios.{link_key}.{side_key}")
                value = _number(value, f"peak_rate_ratios.{link_key}.{side_key}")
                if value <= 0:
                    raise ParameterError(f"peak_rate_ratios.{link_key}.{side_key}: must be positive")
                ratios[(Link(link_key), Side(side_key))] = Fraction(repr(value))

    return Registry(profiles=profiles, eta=eta, rate_ratios=ratios)


def load_overrides(path: str | Path, base: Registry | None = None) -> Registry:
    """Read a JSON override file and apply it on top of ``base``."""
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParameterError(f"{path}: invalid JSON ({exc})") from None
    return apply_overrides(base or default_registry(), doc)


_DEFAULT = Registry()


def default_registry() -> Registry:
    return _DEFAULT


def default_profile(kind: StationKind | str, registry: Registry | None = None) -> StationProfile:
    return (registry or _DEFAULT).profile(kind)


def lookup_eta(speed_kmh: float, link: Link | str, registry: Registry | None = None) -> float:
    return (registry or _DEFAULT).lookup_eta(speed_kmh, link)


def lookup_peak_rate(b_fdd_mhz: float, link: Link | str, side: Side | str, registry: Registry | None = None) -> float:
    return (registry or _DEFAULT).lookup_peak_rate(b_fdd_mhz, link, side)
