"""Receiver noise floor and output SNR / SINR of the victim receiver.

The receiver is reduced to an antenna temperature plus one amplifier noise
figure; demodulator and decoder losses are taken as zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from coexbudget.rfmath import BOLTZMANN, T_REF, PowerLevel, check_non_negative, check_positive
from coexbudget.standards import StationProfile

#: 10*log10(k) + 30, the dBmW form of Boltzmann's constant (about -198.6).
BOLTZMANN_DBMW = 10.0 * math.log10(BOLTZMANN) + 30.0


@dataclass(frozen=True)
class NoiseBreakdown:
    t_rx_k: float
    t_amp_k: float
    b_ch_hz: float
    noise: PowerLevel

    @property
    def t_total_k(self) -> float:
        return self.t_rx_k + self.t_amp_k

    @property
    def watts(self) -> float:
        return self.noise.watts

    @property
    def dbmw(self) -> float:
        return self.noise.dbmw


def amplifier_temperature(nf_db: float) -> float:
    """Equivalent amplifier noise temperature ``290*(10**(NF/10) - 1)`` [K]."""
    nf_db = check_non_negative(nf_db, "noise figure")
    return T_REF * (10.0 ** (nf_db / 10.0) - 1.0)


def noise_power(profile: StationProfile, b_ch_hz: float) -> NoiseBreakdown:
    b_ch_hz = check_positive(b_ch_hz, "bandwidth")
    t_amp = amplifier_temperature(profile.nf_db)
    watts = BOLTZMANN * b_ch_hz * (profile.t_rx_k + t_amp)
    return NoiseBreakdown(t_rx_k=profile.t_rx_k, t_amp_k=t_amp, b_ch_hz=b_ch_hz, noise=PowerLevel(watts))


def noise_power_dbmw_closed_form(profile: StationProfile, b_ch_hz: float) -> float:
    """The same noise power evaluated directly in the log domain."""
    b_ch_hz = check_positive(b_ch_hz, "bandwidth")
    t_total = profile.t_rx_k + T_REF * (10.0 ** (profile.nf_db / 10.0) - 1.0)
    return BOLTZMANN_DBMW + 10.0 * math.log10(b_ch_hz * t_total)


def snr_out(p_rx: PowerLevel, profile: StationProfile, b_ch_hz: float) -> float:
    return p_rx.watts / noise_power(profile, b_ch_hz).watts


def sinr_out(p_rx: PowerLevel, i_agg: PowerLevel, profile: StationProfile, b_ch_hz: float) -> float:
    return p_rx.watts / (i_agg.watts + noise_power(profile, b_ch_hz).watts)
