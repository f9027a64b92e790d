"""dB / linear arithmetic shared by every budget calculation.

Computation happens in watts, hertz and kelvin; dB values only appear at the
edges.  ``PowerLevel`` stores watts and derives dBmW, so the two views cannot
drift apart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

#: Boltzmann constant, exact SI value [J/K].
BOLTZMANN = 1.380649e-23

#: Standard reference temperature used by the noise-figure definition [K].
T_REF = 290.0


def check_finite(value: float, name: str = "value") -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be a finite number, got {value!r}")
    return value


def check_positive(value: float, name: str) -> float:
    value = check_finite(value, name)
    if value <= 0:
        raise ValueError(f"{name} must be positive")
    return value


def check_non_negative(value: float, name: str) -> float:
    value = check_finite(value, name)
    if value < 0:
        raise ValueError(f"{name} must be non-negative")
    return value


def db_to_linear(x_db: float) -> float:
    """Convert a power ratio in dB to a linear ratio, ``10**(x/10)``."""
    x_db = check_finite(x_db, "dB value")
    return 10.0 ** (x_db / 10.0)


def linear_to_db(ratio: float) -> float:
    """Convert a linear power ratio to dB, ``10*log10(r)``.

    >>> linear_to_db(100.0)
    20.0
    """
    ratio = check_finite(ratio, "ratio")
    if ratio <= 0:
        raise ValueError(f"ratio must be positive to express in dB, got {ratio!r}")
    return 10.0 * math.log10(ratio)


@dataclass(frozen=True)
class PowerLevel:
    """A non-negative power.  Zero watts maps to ``-inf`` dBmW."""

    watts: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "watts", check_non_negative(self.watts, "power"))

    @classmethod
    def from_dbmw(cls, dbmw: float) -> "PowerLevel":
        dbmw = float(dbmw)
        if dbmw == -math.inf:
            return cls(0.0)
        check_finite(dbmw, "dBmW value")
        return cls(10.0 ** ((dbmw - 30.0) / 10.0))

    @property
    def dbmw(self) -> float:
        if self.watts == 0.0:
            return -math.inf
        return 10.0 * math.log10(self.watts) + 30.0

    @property
    def is_zero(self) -> bool:
        return self.watts == 0.0

    def __add__(self, other: "PowerLevel") -> "PowerLevel":
        if not isinstance(other, PowerLevel):
            return NotImplemented
        return PowerLevel(self.watts + other.watts)

    def scaled(self, factor: float) -> "PowerLevel":
        return PowerLevel(self.watts * check_non_negative(factor, "scale factor"))


def watts_to_dbmw(p_watts: float) -> PowerLevel:
    """Wrap a power in watts; negative power is a domain error."""
    return PowerLevel(p_watts)


def dbmw_to_watts(dbmw: float) -> float:
    return PowerLevel.from_dbmw(dbmw).watts
