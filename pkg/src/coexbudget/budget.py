"""Maximum tolerable aggregate interference for an allowed SNR degradation.

Degradation is ``d = SNR / SINR = (I + N) / N``, so the largest interference a
receiver tolerates at degradation ``d`` is ``N * (10**(d/10) - 1)``.  The
engine always works from the noise floor; ``ms_reduced_model`` is the rounded
per-MHz constant kept for display and cross-checks only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from coexbudget.noise import NoiseBreakdown, noise_power, sinr_out, snr_out
from coexbudget.rfmath import PowerLevel, check_finite, check_non_negative, check_positive
from coexbudget.standards import StationProfile

#: Rounded mobile-station threshold at 1 MHz [dBmW].
MS_REDUCED_CONSTANT_DBMW = -113.112

#: Fixed-carrier bandwidth of the 625 kHz multicarrier mode [Hz].
CARRIER_625K_HZ = 625e3


@dataclass(frozen=True)
class BudgetResult:
    profile: StationProfile
    b_ch_hz: float
    noise: NoiseBreakdown
    d_db: float
    i_agg_max: PowerLevel

    @property
    def fraction_of_noise(self) -> float:
        """``I_max / N``; independent of bandwidth."""
        return 10.0 ** (self.d_db / 10.0) - 1.0


def degradation(snr: float, sinr: float) -> float:
    """Degradation in dB from output SNR and SINR (both linear)."""
    snr = check_positive(snr, "snr")
    sinr = check_positive(sinr, "sinr")
    if sinr > snr:
        raise ValueError("sinr exceeds snr: interference cannot improve the output SNR")
    return 10.0 * math.log10(snr / sinr)


def interference_limit(noise: PowerLevel, d_db: float) -> PowerLevel:
    d_db = check_non_negative(d_db, "degradation")
    return noise.scaled(10.0 ** (d_db / 10.0) - 1.0)


def max_aggregate_interference(profile: StationProfile, b_ch_hz: float) -> BudgetResult:
    noise = noise_power(profile, b_ch_hz)
    return BudgetResult(
        profile=profile,
        b_ch_hz=noise.b_ch_hz,
        noise=noise,
        d_db=profile.d_max_db,
        i_agg_max=interference_limit(noise.noise, profile.d_max_db),
    )


def ms_reduced_model(b_ch_mhz: float) -> PowerLevel:
    """Mobile-station threshold from the rounded closed form, ``-113.112 + 10 log10(B/MHz)``."""
    b_ch_mhz = check_positive(b_ch_mhz, "bandwidth")
    return PowerLevel.from_dbmw(MS_REDUCED_CONSTANT_DBMW + 10.0 * math.log10(b_ch_mhz))


def degradation_roundtrip(profile: StationProfile, b_ch_hz: float, p_rx: PowerLevel) -> float:
    """Re-derive the degradation from SNR and SINR with the interference at its limit.

    The received power cancels, so the result should equal ``profile.d_max_db``.
    """
    if p_rx.is_zero:
        raise ValueError("received power must be positive")
    budget = max_aggregate_interference(profile, b_ch_hz)
    snr = snr_out(p_rx, profile, b_ch_hz)
    sinr = sinr_out(p_rx, budget.i_agg_max, profile, b_ch_hz)
    return degradation(snr, sinr)


def with_degradation(profile: StationProfile, d_max_db: float) -> StationProfile:
    return replace(profile, d_max_db=check_finite(d_max_db, "d_max_db"))
