//! Straight-line recomputation of sweep rows from the textbook formulas.
//!
//! Nothing here calls into the library's computation paths; only the
//! `Scenario` data type is shared. Element counts come from a linear search
//! rather than the closed form, and capacity from the direct Shannon
//! expression.

#![allow(dead_code)]

use sealink::{ArchitectureKind, Scenario};

#[derive(Debug, Clone, PartialEq)]
pub struct OracleRow {
    pub distance_km: f64,
    pub arch: ArchitectureKind,
    pub path_loss_db: f64,
    pub transport_rate_bps: f64,
    pub required_eirp_dbm: f64,
    pub array_gain_db: f64,
    pub required_elements: u64,
    pub n_elements: u64,
    pub consumed_power_w: f64,
    pub feasible: bool,
}

pub fn recompute(s: &Scenario, arch: ArchitectureKind, distance_km: f64) -> OracleRow {
    let altitude_km = s.uav_altitude_m / 1000.0;
    let slant = (altitude_km * altitude_km + distance_km * distance_km).sqrt();
    let gamma = s.atmosphere.gamma_dry_db_per_km + s.atmosphere.gamma_wet_db_per_km;
    let path_loss_db =
        92.45 + 20.0 * s.carrier.frequency_ghz.log10() + 20.0 * slant.log10() + gamma * slant;

    let fh = &s.fronthaul;
    let transport_rate_bps = match arch {
        ArchitectureKind::FlyBS => s.access_target.rate_bps * (1.0 + s.protocol_overhead),
        ArchitectureKind::FlyRRH => {
            2.0 * s.access_radio.bandwidth_hz
                * fh.oversampling
                * fh.antenna_ports as f64
                * fh.sample_width_bits as f64
                * (1.0 + fh.overhead_factor)
        }
    };
    let design_rate = transport_rate_bps * 10f64.powf(s.feasibility_margin_db / 10.0);

    let r = &s.transport_radio;
    let noise_dbm = -174.0 + 10.0 * r.bandwidth_hz.log10() + r.noise_figure_db;
    let snr_db = 10.0 * (2f64.powf(design_rate / r.bandwidth_hz) - 1.0).log10();
    let required_eirp_dbm =
        noise_dbm + snr_db + r.implementation_loss_db + path_loss_db - r.rx_gain_dbi;
    let gain = required_eirp_dbm - r.tx_power_per_chain_dbm - r.element_gain_dbi;
    let array_gain_db = if gain > 0.0 { gain } else { 0.0 };

    let mut required_elements = 1u64;
    while 10.0 * (required_elements as f64).log10() < array_gain_db
        && required_elements <= s.max_elements
    {
        required_elements += 1;
    }
    let n_elements = required_elements.min(s.max_elements);

    let total_tx_dbm = r.tx_power_per_chain_dbm + 10.0 * (n_elements as f64).log10();
    let model = match arch {
        ArchitectureKind::FlyBS => &s.power_models.fly_bs,
        ArchitectureKind::FlyRRH => &s.power_models.fly_rrh,
    };
    let mut consumed_power_w = model.fixed_power_w
        + n_elements as f64 * model.per_chain_power_w
        + 10f64.powf((total_tx_dbm - 30.0) / 10.0) / model.pa_efficiency;
    if arch == ArchitectureKind::FlyBS {
        consumed_power_w += model.compute_power_w_per_gbps * s.access_target.rate_bps / 1e9;
    }

    let eirp = r.tx_power_per_chain_dbm + r.element_gain_dbi + 10.0 * (n_elements as f64).log10();
    let snr = 10f64.powf(
        (eirp - path_loss_db + r.rx_gain_dbi - r.implementation_loss_db - noise_dbm) / 10.0,
    );
    let capacity = r.bandwidth_hz * (1.0 + snr).log2();
    let feasible = required_elements <= s.max_elements && capacity * (1.0 + 1e-9) >= design_rate;

    OracleRow {
        distance_km,
        arch,
        path_loss_db,
        transport_rate_bps,
        required_eirp_dbm,
        array_gain_db,
        required_elements,
        n_elements,
        consumed_power_w,
        feasible,
    }
}

/// Grid points by repeated addition, checked against the stop bound.
pub fn grid(s: &Scenario) -> Vec<f64> {
    let r = &s.distance_range;
    let mut out = Vec::new();
    let mut k = 0u32;
    loop {
        let d = r.start_km + f64::from(k) * r.step_km;
        if d > r.stop_km + 1e-9 {
            break;
        }
        out.push(d);
        k += 1;
    }
    out
}

/// Every row of the sweep, in (distance, architecture) order.
pub fn sweep(s: &Scenario) -> Vec<(OracleRow, OracleRow)> {
    grid(s)
        .into_iter()
        .map(|d| {
            (
                recompute(s, ArchitectureKind::FlyBS, d),
                recompute(s, ArchitectureKind::FlyRRH, d),
            )
        })
        .collect()
}

/// Exhaustive scan of consecutive row pairs for a strict sign change of
/// `P_BS - P_RRH`.
pub fn first_crossover(rows: &[(OracleRow, OracleRow)]) -> Option<f64> {
    let sign = |(bs, rrh): &(OracleRow, OracleRow)| {
        (bs.consumed_power_w - rrh.consumed_power_w).partial_cmp(&0.0).unwrap() as i32
    };
    for i in 1..rows.len() {
        let (a, b) = (sign(&rows[i - 1]), sign(&rows[i]));
        if a != 0 && b != 0 && a != b {
            return Some(rows[i].0.distance_km);
        }
    }
    None
}

pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

/// Path of a file shipped in this crate.
pub fn shipped(rel: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join(rel)
}
