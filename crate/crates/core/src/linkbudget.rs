//! Shannon-capacity link budget: throughput target and path loss in, required
//! EIRP and array size out, plus the forward map back to achieved rate.
//!
//! Arrays are idealized: N elements give `10 log10(N)` dB of gain with no
//! coupling, scan loss or beamforming error. Transmit power per chain is fixed
//! and any EIRP deficit is closed by adding elements.

use std::f64::consts::{LN_10, LN_2};

use crate::error::{Error, Result};

/// Thermal noise density at 290 K.
pub const NOISE_DENSITY_DBM_PER_HZ: f64 = -174.0;

/// Largest spectral efficiency accepted by [`required_snr_db`].
pub const MAX_SPECTRAL_EFFICIENCY: f64 = 1024.0;

/// RF parameters of one end-to-end radio link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioConfig {
    pub bandwidth_hz: f64,
    /// Conducted power of one RF chain, dBm.
    pub tx_power_per_chain_dbm: f64,
    /// Gain of a single array element, dBi.
    pub element_gain_dbi: f64,
    /// Gain of the receiving antenna at the far end, dBi.
    pub rx_gain_dbi: f64,
    pub noise_figure_db: f64,
    pub implementation_loss_db: f64,
}

impl RadioConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.bandwidth_hz > 0.0) || !self.bandwidth_hz.is_finite() {
            return Err(Error::invalid(
                "bandwidth_hz",
                format!("must be finite and > 0, got {}", self.bandwidth_hz),
            ));
        }
        for (name, v) in [
            ("tx_power_per_chain_dbm", self.tx_power_per_chain_dbm),
            ("element_gain_dbi", self.element_gain_dbi),
            ("rx_gain_dbi", self.rx_gain_dbi),
        ] {
            if !v.is_finite() {
                return Err(Error::invalid(name, format!("must be finite, got {v}")));
            }
        }
        for (name, v) in [
            ("noise_figure_db", self.noise_figure_db),
            ("implementation_loss_db", self.implementation_loss_db),
        ] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::invalid(name, format!("must be finite and >= 0, got {v}")));
            }
        }
        Ok(())
    }

    /// EIRP of an `n`-element array with every chain at full power.
    pub fn array_eirp_dbm(&self, n_elements: u64) -> f64 {
        self.tx_power_per_chain_dbm + self.element_gain_dbi + array_gain_of(n_elements)
    }
}

/// Aggregate rate that must be carried over the link being budgeted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThroughputTarget {
    pub rate_bps: f64,
}

impl ThroughputTarget {
    pub fn new(rate_bps: f64) -> Self {
        Self { rate_bps }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rate_bps > 0.0) || !self.rate_bps.is_finite() {
            return Err(Error::invalid(
                "rate_bps",
                format!("must be finite and > 0, got {}", self.rate_bps),
            ));
        }
        Ok(())
    }
}

/// Idealized gain of an `n`-element array.
pub fn array_gain_of(n_elements: u64) -> f64 {
    10.0 * (n_elements as f64).log10()
}

pub fn noise_power_dbm(config: &RadioConfig) -> Result<f64> {
    config.validate()?;
    Ok(NOISE_DENSITY_DBM_PER_HZ + 10.0 * config.bandwidth_hz.log10() + config.noise_figure_db)
}

/// SNR at which Shannon capacity over `bandwidth_hz` equals the target,
/// `10 log10(2^(R/B) - 1)`.
pub fn required_snr_db(target: &ThroughputTarget, bandwidth_hz: f64) -> Result<f64> {
    target.validate()?;
    if !(bandwidth_hz > 0.0) || !bandwidth_hz.is_finite() {
        return Err(Error::invalid(
            "bandwidth_hz",
            format!("must be finite and > 0, got {bandwidth_hz}"),
        ));
    }
    let efficiency = target.rate_bps / bandwidth_hz;
    if efficiency > MAX_SPECTRAL_EFFICIENCY {
        return Err(Error::SpectralEfficiencyOverflow(efficiency));
    }
    // 2^x - 1 = 2^x (1 - 2^-x); the split keeps both ends of x accurate.
    let log10_2 = LN_2 / LN_10;
    Ok(10.0 * (efficiency * log10_2 + (-(-efficiency * LN_2).exp_m1()).log10()))
}

/// EIRP the transmitter must radiate for the receiver to reach the target rate.
pub fn required_eirp_dbm(
    target: &ThroughputTarget,
    path_loss_db: f64,
    config: &RadioConfig,
) -> Result<f64> {
    if !path_loss_db.is_finite() {
        return Err(Error::invalid("path_loss_db", format!("must be finite, got {path_loss_db}")));
    }
    let noise = noise_power_dbm(config)?;
    let snr = required_snr_db(target, config.bandwidth_hz)?;
    Ok(noise + snr + config.implementation_loss_db + path_loss_db - config.rx_gain_dbi)
}

/// Array gain to add on top of one element to reach `eirp_target_dbm`.
/// Zero when a single element already suffices.
pub fn required_array_gain_db(eirp_target_dbm: f64, config: &RadioConfig) -> f64 {
    (eirp_target_dbm - config.tx_power_per_chain_dbm - config.element_gain_dbi).max(0.0)
}

/// Smallest element count whose idealized array gain is at least `gain_db`.
pub fn elements_for_gain(gain_db: f64) -> Result<u64> {
    if !(gain_db >= 0.0) {
        return Err(Error::NegativeGain(gain_db));
    }
    let linear = 10f64.powf(gain_db / 10.0).ceil();
    if !linear.is_finite() || linear >= u64::MAX as f64 / 2.0 {
        return Err(Error::GainTooLarge(gain_db));
    }
    // The closed form can land one off when 10^(g/10) sits on an integer, so
    // settle against the same test callers use: 10 log10(n) >= g.
    let mut n = (linear as u64).max(1);
    while n > 1 && array_gain_of(n - 1) >= gain_db {
        n -= 1;
    }
    while array_gain_of(n) < gain_db {
        n += 1;
    }
    Ok(n)
}

/// Shannon rate reached with `eirp_dbm` radiated over `path_loss_db`.
pub fn achieved_rate_bps(eirp_dbm: f64, path_loss_db: f64, config: &RadioConfig) -> Result<f64> {
    let noise = noise_power_dbm(config)?;
    let snr_db =
        eirp_dbm - path_loss_db + config.rx_gain_dbi - config.implementation_loss_db - noise;
    // ln(1 + 10^(snr/10)) without overflowing at very high SNR.
    let y = snr_db / 10.0 * LN_10;
    let ln_1p_snr = if y > 0.0 {
        y + (-y).exp().ln_1p()
    } else {
        y.exp().ln_1p()
    };
    Ok(config.bandwidth_hz * ln_1p_snr / LN_2)
}
