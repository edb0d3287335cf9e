//! Transport-link dimensioning.
//!
//! A flying RRH ships digitized IQ samples to the shore BBU, so its fronthaul
//! load is a constant set by the sampled bandwidth and does not depend on how
//! much user traffic flows. A flying BS forwards packetized user traffic over
//! its backhaul, so its load scales with that traffic.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::power::ArchitectureKind;

/// Digitized-IQ fronthaul parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FronthaulSpec {
    /// Bits per I or per Q sample.
    pub sample_width_bits: u32,
    /// Sampling rate over the Nyquist rate of the carried bandwidth.
    pub oversampling: f64,
    pub antenna_ports: u32,
    /// Fractional control word and line coding overhead.
    pub overhead_factor: f64,
}

impl Default for FronthaulSpec {
    fn default() -> Self {
        Self {
            sample_width_bits: 15,
            oversampling: 1.0,
            antenna_ports: 1,
            overhead_factor: 0.0,
        }
    }
}

impl FronthaulSpec {
    pub fn validate(&self) -> Result<()> {
        if self.sample_width_bits < 1 {
            return Err(Error::invalid("sample_width_bits", "must be >= 1"));
        }
        if !(self.oversampling >= 1.0) || !self.oversampling.is_finite() {
            return Err(Error::invalid(
                "oversampling",
                format!("must be finite and >= 1, got {}", self.oversampling),
            ));
        }
        if self.antenna_ports < 1 {
            return Err(Error::invalid("antenna_ports", "must be >= 1"));
        }
        if !(self.overhead_factor >= 0.0) || !self.overhead_factor.is_finite() {
            return Err(Error::invalid(
                "overhead_factor",
                format!("must be finite and >= 0, got {}", self.overhead_factor),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TransportKind {
    Fronthaul,
    Backhaul,
}

impl TransportKind {
    pub fn name(self) -> &'static str {
        match self {
            TransportKind::Fronthaul => "fronthaul",
            TransportKind::Backhaul => "backhaul",
        }
    }
}

/// Rate the UAV to shore link has to carry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransportRequirement {
    pub required_rate_bps: f64,
    pub kind: TransportKind,
}

/// Constant bit rate of the digitized-IQ fronthaul,
/// `2 B oversampling ports width (1 + overhead)`.
pub fn fronthaul_rate_bps(bandwidth_hz: f64, spec: &FronthaulSpec) -> Result<f64> {
    spec.validate()?;
    if !(bandwidth_hz > 0.0) || !bandwidth_hz.is_finite() {
        return Err(Error::invalid(
            "bandwidth_hz",
            format!("must be finite and > 0, got {bandwidth_hz}"),
        ));
    }
    Ok(2.0
        * bandwidth_hz
        * spec.oversampling
        * f64::from(spec.antenna_ports)
        * f64::from(spec.sample_width_bits)
        * (1.0 + spec.overhead_factor))
}

pub fn backhaul_rate_bps(user_traffic_bps: f64, protocol_overhead: f64) -> Result<f64> {
    if !(user_traffic_bps >= 0.0) || !user_traffic_bps.is_finite() {
        return Err(Error::invalid(
            "user_traffic_bps",
            format!("must be finite and >= 0, got {user_traffic_bps}"),
        ));
    }
    if !(protocol_overhead >= 0.0) || !protocol_overhead.is_finite() {
        return Err(Error::invalid(
            "protocol_overhead",
            format!("must be finite and >= 0, got {protocol_overhead}"),
        ));
    }
    Ok(user_traffic_bps * (1.0 + protocol_overhead))
}

/// Fronthaul load for an RRH, backhaul load for a BS.
///
/// `bandwidth_hz` is the access bandwidth the RRH digitizes. A zero requirement
/// (BS with no traffic) is rejected since the link would carry nothing.
pub fn transport_requirement(
    arch: ArchitectureKind,
    user_traffic_bps: f64,
    bandwidth_hz: f64,
    spec: &FronthaulSpec,
    protocol_overhead: f64,
) -> Result<TransportRequirement> {
    let requirement = match arch {
        ArchitectureKind::FlyRRH => TransportRequirement {
            required_rate_bps: fronthaul_rate_bps(bandwidth_hz, spec)?,
            kind: TransportKind::Fronthaul,
        },
        ArchitectureKind::FlyBS => TransportRequirement {
            required_rate_bps: backhaul_rate_bps(user_traffic_bps, protocol_overhead)?,
            kind: TransportKind::Backhaul,
        },
    };
    if requirement.required_rate_bps > 0.0 {
        Ok(requirement)
    } else {
        Err(Error::invalid(
            "user_traffic_bps",
            "transport requirement must be > 0",
        ))
    }
}

/// Rate a link must reach to clear `requirement` with `margin_db` to spare.
pub fn margined_rate_bps(requirement: &TransportRequirement, margin_db: f64) -> f64 {
    requirement.required_rate_bps * 10f64.powf(margin_db / 10.0)
}

/// True iff `capacity_bps` covers the requirement inflated by `margin_db`.
/// The boundary is inclusive.
pub fn link_feasible(capacity_bps: f64, requirement: &TransportRequirement, margin_db: f64) -> bool {
    capacity_bps >= margined_rate_bps(requirement, margin_db)
}

/// Missing capacity when [`link_feasible`] fails, zero otherwise.
pub fn capacity_shortfall_bps(
    capacity_bps: f64,
    requirement: &TransportRequirement,
    margin_db: f64,
) -> f64 {
    (margined_rate_bps(requirement, margin_db) - capacity_bps).max(0.0)
}
