//! Consumed electrical power of the communication payload.
//!
//! A flying base station dissipates transmission power plus baseband
//! computation power; a flying RRH only dissipates transmission power because
//! processing happens at the shore BBU. Both architectures are passively
//! cooled, so there is no cooling term. Propulsion and hover power are out of
//! scope.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ArchitectureKind {
    #[serde(rename = "fly-bs")]
    FlyBS,
    #[serde(rename = "fly-rrh")]
    FlyRRH,
}

impl ArchitectureKind {
    /// Both architectures, in the order their names sort.
    pub const ALL: [ArchitectureKind; 2] = [ArchitectureKind::FlyBS, ArchitectureKind::FlyRRH];

    pub fn name(self) -> &'static str {
        match self {
            ArchitectureKind::FlyBS => "fly-bs",
            ArchitectureKind::FlyRRH => "fly-rrh",
        }
    }

    /// Whether baseband processing runs on board.
    pub fn processes_on_board(self) -> bool {
        matches!(self, ArchitectureKind::FlyBS)
    }
}

impl fmt::Display for ArchitectureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ArchitectureKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "fly-bs" => Ok(ArchitectureKind::FlyBS),
            "fly-rrh" => Ok(ArchitectureKind::FlyRRH),
            other => Err(format!("unknown architecture `{other}` (expected fly-bs or fly-rrh)")),
        }
    }
}

/// Power decomposition coefficients for one architecture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerModel {
    /// Always-on overhead, W.
    pub fixed_power_w: f64,
    /// Draw of each active RF chain excluding the PA output, W.
    pub per_chain_power_w: f64,
    /// Drain efficiency of the power amplifiers, in (0, 1].
    pub pa_efficiency: f64,
    /// Baseband processing per Gbps of user traffic, W. Only charged on board.
    pub compute_power_w_per_gbps: f64,
}

impl PowerModel {
    /// Reference small-cell profile for a flying BS. Placeholder values, not
    /// measurements.
    pub const REFERENCE_FLY_BS: PowerModel = PowerModel {
        fixed_power_w: 6.0,
        per_chain_power_w: 1.0,
        pa_efficiency: 0.25,
        compute_power_w_per_gbps: 14.0,
    };

    /// Reference profile for a flying RRH. Placeholder values, not measurements.
    pub const REFERENCE_FLY_RRH: PowerModel = PowerModel {
        fixed_power_w: 4.0,
        per_chain_power_w: 1.0,
        pa_efficiency: 0.25,
        compute_power_w_per_gbps: 14.0,
    };

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("fixed_power_w", self.fixed_power_w),
            ("per_chain_power_w", self.per_chain_power_w),
            ("compute_power_w_per_gbps", self.compute_power_w_per_gbps),
        ] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::invalid(name, format!("must be finite and >= 0, got {v}")));
            }
        }
        if !(self.pa_efficiency > 0.0 && self.pa_efficiency <= 1.0) {
            return Err(Error::invalid(
                "pa_efficiency",
                format!("must lie in (0, 1], got {}", self.pa_efficiency),
            ));
        }
        Ok(())
    }
}

/// Consumed power split by term. `compute_w` is zero for a flying RRH.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerBreakdown {
    pub fixed_w: f64,
    pub rf_chains_w: f64,
    pub power_amplifier_w: f64,
    pub compute_w: f64,
}

impl PowerBreakdown {
    pub fn total_w(&self) -> f64 {
        self.transmission_w() + self.compute_w
    }

    /// Everything except baseband computation.
    pub fn transmission_w(&self) -> f64 {
        self.fixed_w + self.rf_chains_w + self.power_amplifier_w
    }
}

/// Supply power drawn by the PAs to radiate `total_tx_power_dbm` in total.
pub fn pa_power_w(total_tx_power_dbm: f64, model: &PowerModel) -> f64 {
    10f64.powf((total_tx_power_dbm - 30.0) / 10.0) / model.pa_efficiency
}

pub fn power_breakdown(
    arch: ArchitectureKind,
    model: &PowerModel,
    n_elements: u64,
    total_tx_power_dbm: f64,
    traffic_bps: f64,
) -> Result<PowerBreakdown> {
    model.validate()?;
    if n_elements < 1 {
        return Err(Error::TooFewElements(n_elements));
    }
    if !(traffic_bps >= 0.0) || !traffic_bps.is_finite() {
        return Err(Error::invalid(
            "traffic_bps",
            format!("must be finite and >= 0, got {traffic_bps}"),
        ));
    }
    let compute_w = if arch.processes_on_board() {
        model.compute_power_w_per_gbps * (traffic_bps / 1e9)
    } else {
        0.0
    };
    Ok(PowerBreakdown {
        fixed_w: model.fixed_power_w,
        rf_chains_w: n_elements as f64 * model.per_chain_power_w,
        power_amplifier_w: pa_power_w(total_tx_power_dbm, model),
        compute_w,
    })
}

/// Total consumed payload power in W.
pub fn consumed_power_w(
    arch: ArchitectureKind,
    model: &PowerModel,
    n_elements: u64,
    total_tx_power_dbm: f64,
    traffic_bps: f64,
) -> Result<f64> {
    power_breakdown(arch, model, n_elements, total_tx_power_dbm, traffic_bps).map(|b| b.total_w())
}
