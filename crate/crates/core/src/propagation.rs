//! Line-of-sight range and over-sea path loss at mmWave frequencies.
//!
//! The loss model is free-space (Friis) plus a gaseous term from dry air and
//! water vapour, each given as a specific attenuation in dB/km. Earth
//! curvature and sea-surface reflection are not modelled.

use crate::error::{Error, Result};

/// Friis constant for frequency in GHz and distance in km.
pub const FSPL_CONSTANT_DB: f64 = 92.45;

/// Default carrier, a common mmWave cellular band.
pub const DEFAULT_FREQUENCY_GHZ: f64 = 28.0;

/// Placeholder dry-air attenuation, representative near 28 GHz at sea level.
pub const DEFAULT_GAMMA_DRY_DB_PER_KM: f64 = 0.06;

/// Placeholder water-vapour attenuation, representative near 28 GHz at sea level.
pub const DEFAULT_GAMMA_WET_DB_PER_KM: f64 = 0.10;

/// Position of the UAV relative to the ground node it talks to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGeometry {
    pub uav_altitude_m: f64,
    pub horizontal_distance_km: f64,
}

impl LinkGeometry {
    pub fn new(uav_altitude_m: f64, horizontal_distance_km: f64) -> Self {
        Self {
            uav_altitude_m,
            horizontal_distance_km,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.uav_altitude_m >= 0.0) || !self.uav_altitude_m.is_finite() {
            return Err(Error::invalid(
                "uav_altitude_m",
                format!("must be finite and >= 0, got {}", self.uav_altitude_m),
            ));
        }
        if !(self.horizontal_distance_km >= 0.0) || !self.horizontal_distance_km.is_finite() {
            return Err(Error::NegativeDistance(self.horizontal_distance_km));
        }
        Ok(())
    }

    /// Straight-line UAV to ground-node range in km.
    pub fn slant_range_km(&self) -> Result<f64> {
        slant_range(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtmosphereSpec {
    pub gamma_dry_db_per_km: f64,
    pub gamma_wet_db_per_km: f64,
}

impl Default for AtmosphereSpec {
    fn default() -> Self {
        Self {
            gamma_dry_db_per_km: DEFAULT_GAMMA_DRY_DB_PER_KM,
            gamma_wet_db_per_km: DEFAULT_GAMMA_WET_DB_PER_KM,
        }
    }
}

impl AtmosphereSpec {
    /// Vacuum-like atmosphere: path loss reduces to FSPL.
    pub const CLEAR: AtmosphereSpec = AtmosphereSpec {
        gamma_dry_db_per_km: 0.0,
        gamma_wet_db_per_km: 0.0,
    };

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("gamma_dry_db_per_km", self.gamma_dry_db_per_km),
            ("gamma_wet_db_per_km", self.gamma_wet_db_per_km),
        ] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::invalid(name, format!("must be finite and >= 0, got {v}")));
            }
        }
        Ok(())
    }

    pub fn specific_attenuation_db_per_km(&self) -> f64 {
        self.gamma_dry_db_per_km + self.gamma_wet_db_per_km
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarrierSpec {
    pub frequency_ghz: f64,
}

impl Default for CarrierSpec {
    fn default() -> Self {
        Self {
            frequency_ghz: DEFAULT_FREQUENCY_GHZ,
        }
    }
}

impl CarrierSpec {
    pub fn new(frequency_ghz: f64) -> Self {
        Self { frequency_ghz }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.frequency_ghz > 0.0) || !self.frequency_ghz.is_finite() {
            return Err(Error::invalid(
                "frequency_ghz",
                format!("must be finite and > 0, got {}", self.frequency_ghz),
            ));
        }
        Ok(())
    }
}

/// 3D line-of-sight range in km. Fails on a zero-length link.
pub fn slant_range(geometry: &LinkGeometry) -> Result<f64> {
    geometry.validate()?;
    let altitude_km = geometry.uav_altitude_m / 1000.0;
    let range = altitude_km.hypot(geometry.horizontal_distance_km);
    if range > 0.0 {
        Ok(range)
    } else {
        Err(Error::ZeroLengthLink)
    }
}

/// Free-space path loss, `92.45 + 20 log10(f_GHz) + 20 log10(d_km)`.
pub fn fspl_db(carrier: &CarrierSpec, distance_km: f64) -> Result<f64> {
    carrier.validate()?;
    if !(distance_km > 0.0) {
        return Err(Error::NonPositiveDistance(distance_km));
    }
    Ok(FSPL_CONSTANT_DB + 20.0 * carrier.frequency_ghz.log10() + 20.0 * distance_km.log10())
}

/// Dry-air plus water-vapour absorption over `distance_km`.
pub fn gaseous_attenuation_db(atmosphere: &AtmosphereSpec, distance_km: f64) -> Result<f64> {
    atmosphere.validate()?;
    if !(distance_km >= 0.0) {
        return Err(Error::NegativeDistance(distance_km));
    }
    Ok(atmosphere.specific_attenuation_db_per_km() * distance_km)
}

/// FSPL plus gaseous attenuation, both evaluated over the slant range.
pub fn total_path_loss_db(
    carrier: &CarrierSpec,
    atmosphere: &AtmosphereSpec,
    geometry: &LinkGeometry,
) -> Result<f64> {
    let range = slant_range(geometry)?;
    Ok(fspl_db(carrier, range)? + gaseous_attenuation_db(atmosphere, range)?)
}
