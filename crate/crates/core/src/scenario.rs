//! Distance sweeps comparing a flying BS against a flying RRH.
//!
//! Each sweep point budgets the UAV to shore transport link: path loss over
//! the slant range, transport requirement of the architecture, EIRP for that
//! requirement (inflated by the feasibility margin), the element count closing
//! the EIRP gap at fixed per-chain power, and finally the consumed payload
//! power. The UAV to users access link is budgeted once at a fixed distance
//! and only reported.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fronthaul::{self, FronthaulSpec, TransportKind};
use crate::linkbudget::{self, RadioConfig, ThroughputTarget};
use crate::power::{self, ArchitectureKind, PowerBreakdown, PowerModel};
use crate::propagation::{self, AtmosphereSpec, CarrierSpec, LinkGeometry};

/// Slack on the last grid point so `stop` survives accumulated rounding.
pub const GRID_TOLERANCE_KM: f64 = 1e-9;

/// Relative slack when comparing achieved capacity against the requirement.
/// The EIRP to rate roundtrip is exact only to a few ulps, so an array sized
/// to the exact requirement must not be flagged infeasible by rounding.
pub const CAPACITY_REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceRange {
    pub start_km: f64,
    pub stop_km: f64,
    pub step_km: f64,
}

impl DistanceRange {
    pub fn new(start_km: f64, stop_km: f64, step_km: f64) -> Self {
        Self {
            start_km,
            stop_km,
            step_km,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.start_km > 0.0) || !self.start_km.is_finite() {
            return Err(Error::invalid("start_km", format!("must be > 0, got {}", self.start_km)));
        }
        if !(self.step_km > 0.0) || !self.step_km.is_finite() {
            return Err(Error::invalid("step_km", format!("must be > 0, got {}", self.step_km)));
        }
        if !self.stop_km.is_finite() {
            return Err(Error::invalid("stop_km", "must be finite"));
        }
        if self.stop_km < self.start_km {
            return Err(Error::EmptySweep);
        }
        Ok(())
    }

    /// Grid `start + k * step` for every k whose point stays within `stop`.
    pub fn points(&self) -> Result<Vec<f64>> {
        self.validate()?;
        let limit = self.stop_km + GRID_TOLERANCE_KM;
        let points: Vec<f64> = (0u64..)
            .map(|k| self.start_km + k as f64 * self.step_km)
            .take_while(|&d| d <= limit)
            .collect();
        if points.is_empty() {
            return Err(Error::EmptySweep);
        }
        Ok(points)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerModels {
    pub fly_bs: PowerModel,
    pub fly_rrh: PowerModel,
}

impl PowerModels {
    pub fn get(&self, arch: ArchitectureKind) -> &PowerModel {
        match arch {
            ArchitectureKind::FlyBS => &self.fly_bs,
            ArchitectureKind::FlyRRH => &self.fly_rrh,
        }
    }
}

impl Default for PowerModels {
    fn default() -> Self {
        Self {
            fly_bs: PowerModel::REFERENCE_FLY_BS,
            fly_rrh: PowerModel::REFERENCE_FLY_RRH,
        }
    }
}

/// A complete experiment definition.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub carrier: CarrierSpec,
    pub atmosphere: AtmosphereSpec,
    pub uav_altitude_m: f64,
    /// Horizontal UAV to users distance used for the access-link budget.
    pub access_distance_km: f64,
    pub distance_range: DistanceRange,
    /// Aggregate user traffic the UAV has to serve.
    pub access_target: ThroughputTarget,
    /// UAV to shore link.
    pub transport_radio: RadioConfig,
    /// UAV to users link.
    pub access_radio: RadioConfig,
    pub fronthaul: FronthaulSpec,
    /// Packetization overhead on the BS backhaul.
    pub protocol_overhead: f64,
    pub power_models: PowerModels,
    pub max_elements: u64,
    pub feasibility_margin_db: f64,
}

impl Scenario {
    /// Reference scenario shipped with the tool. Every coefficient here is a
    /// documented placeholder, not a measured value.
    pub fn reference() -> Self {
        Self {
            carrier: CarrierSpec::default(),
            atmosphere: AtmosphereSpec::default(),
            uav_altitude_m: 100.0,
            access_distance_km: 0.5,
            distance_range: DistanceRange::new(1.0, 50.0, 1.0),
            access_target: ThroughputTarget::new(1e9),
            transport_radio: RadioConfig {
                bandwidth_hz: 2e9,
                tx_power_per_chain_dbm: 10.0,
                element_gain_dbi: 5.0,
                rx_gain_dbi: 40.0,
                noise_figure_db: 5.0,
                implementation_loss_db: 2.0,
            },
            access_radio: RadioConfig {
                bandwidth_hz: 200e6,
                tx_power_per_chain_dbm: 20.0,
                element_gain_dbi: 5.0,
                rx_gain_dbi: 10.0,
                noise_figure_db: 9.0,
                implementation_loss_db: 2.0,
            },
            fronthaul: FronthaulSpec::default(),
            protocol_overhead: 0.1,
            power_models: PowerModels::default(),
            max_elements: 256,
            feasibility_margin_db: 3.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.carrier.validate()?;
        self.atmosphere.validate()?;
        LinkGeometry::new(self.uav_altitude_m, 0.0).validate()?;
        if !(self.access_distance_km >= 0.0) || !self.access_distance_km.is_finite() {
            return Err(Error::NegativeDistance(self.access_distance_km));
        }
        self.distance_range.validate()?;
        self.access_target.validate()?;
        self.transport_radio.validate()?;
        self.access_radio.validate()?;
        self.fronthaul.validate()?;
        if !(self.protocol_overhead >= 0.0) || !self.protocol_overhead.is_finite() {
            return Err(Error::invalid("protocol_overhead", "must be finite and >= 0"));
        }
        self.power_models.fly_bs.validate()?;
        self.power_models.fly_rrh.validate()?;
        if self.max_elements < 1 {
            return Err(Error::invalid("max_elements", "must be >= 1"));
        }
        if !(self.feasibility_margin_db >= 0.0) || !self.feasibility_margin_db.is_finite() {
            return Err(Error::invalid("feasibility_margin_db", "must be finite and >= 0"));
        }
        Ok(())
    }
}

/// Budget of one architecture at one distance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArchPoint {
    pub arch: ArchitectureKind,
    pub distance_km: f64,
    pub slant_range_km: f64,
    pub path_loss_db: f64,
    pub transport_kind: TransportKind,
    pub required_transport_rate_bps: f64,
    /// Requirement inflated by the feasibility margin; the array is sized for it.
    pub design_rate_bps: f64,
    pub required_eirp_dbm: f64,
    pub required_array_gain_db: f64,
    /// Elements needed to close the EIRP gap, before clamping.
    pub required_elements: u64,
    /// Elements deployed, clamped at `max_elements`.
    pub n_elements: u64,
    pub total_tx_power_dbm: f64,
    pub achieved_eirp_dbm: f64,
    pub achieved_capacity_bps: f64,
    pub capacity_shortfall_bps: f64,
    pub power: PowerBreakdown,
    pub consumed_power_w: f64,
    pub feasible: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub distance_km: f64,
    pub fly_bs: ArchPoint,
    pub fly_rrh: ArchPoint,
}

impl SweepRow {
    pub fn point(&self, arch: ArchitectureKind) -> &ArchPoint {
        match arch {
            ArchitectureKind::FlyBS => &self.fly_bs,
            ArchitectureKind::FlyRRH => &self.fly_rrh,
        }
    }
}

/// Access-link budget, sized for the user traffic target. The feasibility
/// margin only applies to the transport link.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AccessBudget {
    pub distance_km: f64,
    pub path_loss_db: f64,
    pub design_rate_bps: f64,
    pub required_eirp_dbm: f64,
    pub required_array_gain_db: f64,
    pub required_elements: u64,
}

fn elements_saturating(gain_db: f64) -> Result<u64> {
    match linkbudget::elements_for_gain(gain_db) {
        Err(Error::GainTooLarge(_)) => Ok(u64::MAX),
        other => other,
    }
}

/// Budgets the transport link of `arch` with the UAV `distance_km` from shore.
pub fn budget_point(
    scenario: &Scenario,
    arch: ArchitectureKind,
    distance_km: f64,
) -> Result<ArchPoint> {
    scenario.validate()?;
    if !(distance_km > 0.0) || !distance_km.is_finite() {
        return Err(Error::NonPositiveDistance(distance_km));
    }
    let geometry = LinkGeometry::new(scenario.uav_altitude_m, distance_km);
    let slant_range_km = propagation::slant_range(&geometry)?;
    let path_loss_db =
        propagation::total_path_loss_db(&scenario.carrier, &scenario.atmosphere, &geometry)?;

    let requirement = fronthaul::transport_requirement(
        arch,
        scenario.access_target.rate_bps,
        scenario.access_radio.bandwidth_hz,
        &scenario.fronthaul,
        scenario.protocol_overhead,
    )?;
    let margin = scenario.feasibility_margin_db;
    let design_rate_bps = fronthaul::margined_rate_bps(&requirement, margin);

    let radio = &scenario.transport_radio;
    let required_eirp_dbm = linkbudget::required_eirp_dbm(
        &ThroughputTarget::new(design_rate_bps),
        path_loss_db,
        radio,
    )?;
    let required_array_gain_db = linkbudget::required_array_gain_db(required_eirp_dbm, radio);
    let required_elements = elements_saturating(required_array_gain_db)?;
    let n_elements = required_elements.min(scenario.max_elements);

    let total_tx_power_dbm = radio.tx_power_per_chain_dbm + linkbudget::array_gain_of(n_elements);
    let achieved_eirp_dbm = radio.array_eirp_dbm(n_elements);
    let achieved_capacity_bps = linkbudget::achieved_rate_bps(achieved_eirp_dbm, path_loss_db, radio)?;
    let effective_capacity = achieved_capacity_bps * (1.0 + CAPACITY_REL_TOL);
    let feasible = required_elements <= scenario.max_elements
        && fronthaul::link_feasible(effective_capacity, &requirement, margin);
    let capacity_shortfall_bps = if feasible {
        0.0
    } else {
        fronthaul::capacity_shortfall_bps(achieved_capacity_bps, &requirement, margin)
    };

    let power = power::power_breakdown(
        arch,
        scenario.power_models.get(arch),
        n_elements,
        total_tx_power_dbm,
        scenario.access_target.rate_bps,
    )?;

    Ok(ArchPoint {
        arch,
        distance_km,
        slant_range_km,
        path_loss_db,
        transport_kind: requirement.kind,
        required_transport_rate_bps: requirement.required_rate_bps,
        design_rate_bps,
        required_eirp_dbm,
        required_array_gain_db,
        required_elements,
        n_elements,
        total_tx_power_dbm,
        achieved_eirp_dbm,
        achieved_capacity_bps,
        capacity_shortfall_bps,
        consumed_power_w: power.total_w(),
        power,
        feasible,
    })
}

pub fn access_budget(scenario: &Scenario) -> Result<AccessBudget> {
    scenario.validate()?;
    let geometry = LinkGeometry::new(scenario.uav_altitude_m, scenario.access_distance_km);
    let path_loss_db =
        propagation::total_path_loss_db(&scenario.carrier, &scenario.atmosphere, &geometry)?;
    let design_rate_bps = scenario.access_target.rate_bps;
    let radio = &scenario.access_radio;
    let required_eirp_dbm = linkbudget::required_eirp_dbm(
        &ThroughputTarget::new(design_rate_bps),
        path_loss_db,
        radio,
    )?;
    let required_array_gain_db = linkbudget::required_array_gain_db(required_eirp_dbm, radio);
    Ok(AccessBudget {
        distance_km: scenario.access_distance_km,
        path_loss_db,
        design_rate_bps,
        required_eirp_dbm,
        required_array_gain_db,
        required_elements: elements_saturating(required_array_gain_db)?,
    })
}

/// One row per grid distance, in increasing distance order. Rows are
/// evaluated in parallel; the output does not depend on scheduling.
pub fn run_sweep(scenario: &Scenario) -> Result<Vec<SweepRow>> {
    scenario.validate()?;
    let distances = scenario.distance_range.points()?;
    distances
        .into_par_iter()
        .map(|d| {
            Ok(SweepRow {
                distance_km: d,
                fly_bs: budget_point(scenario, ArchitectureKind::FlyBS, d)?,
                fly_rrh: budget_point(scenario, ArchitectureKind::FlyRRH, d)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InfeasibleAt {
    pub distance_km: f64,
    pub capacity_shortfall_bps: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossoverReport {
    pub fly_bs_first_infeasible: Option<InfeasibleAt>,
    pub fly_rrh_first_infeasible: Option<InfeasibleAt>,
    /// First row where `P_BS - P_RRH` has the opposite strict sign from the
    /// previous row.
    pub power_crossover_km: Option<f64>,
}

impl CrossoverReport {
    pub fn first_infeasible(&self, arch: ArchitectureKind) -> Option<InfeasibleAt> {
        match arch {
            ArchitectureKind::FlyBS => self.fly_bs_first_infeasible,
            ArchitectureKind::FlyRRH => self.fly_rrh_first_infeasible,
        }
    }
}

/// Summarizes a sweep: where each architecture stops closing its link and
/// where the cheaper architecture changes. Expects rows sorted by distance.
pub fn crossover_analysis(rows: &[SweepRow]) -> CrossoverReport {
    let first_infeasible = |arch| {
        rows.iter()
            .map(|r| r.point(arch))
            .find(|p| !p.feasible)
            .map(|p| InfeasibleAt {
                distance_km: p.distance_km,
                capacity_shortfall_bps: p.capacity_shortfall_bps,
            })
    };
    let sign = |r: &SweepRow| {
        let diff = r.fly_bs.consumed_power_w - r.fly_rrh.consumed_power_w;
        if diff > 0.0 {
            1
        } else if diff < 0.0 {
            -1
        } else {
            0
        }
    };
    let power_crossover_km = rows.windows(2).find_map(|pair| {
        let (a, b) = (sign(&pair[0]), sign(&pair[1]));
        (a * b < 0).then_some(pair[1].distance_km)
    });
    CrossoverReport {
        fly_bs_first_infeasible: first_infeasible(ArchitectureKind::FlyBS),
        fly_rrh_first_infeasible: first_infeasible(ArchitectureKind::FlyRRH),
        power_crossover_km,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ArchitectureKind::*;

    fn clear_sea() -> Scenario {
        Scenario {
            atmosphere: AtmosphereSpec::CLEAR,
            uav_altitude_m: 0.0,
            ..Scenario::reference()
        }
    }

    #[test]
    fn reference_is_valid() {
        Scenario::reference().validate().unwrap();
    }

    #[test]
    fn grid_examples() {
        assert_eq!(DistanceRange::new(3.0, 3.0, 1.0).points().unwrap(), vec![3.0]);
        assert_eq!(
            DistanceRange::new(1.0, 2.0, 0.5).points().unwrap(),
            vec![1.0, 1.5, 2.0]
        );
        let g = DistanceRange::new(0.1, 0.3, 0.1).points().unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(DistanceRange::new(1.0, 2.9, 1.0).points().unwrap(), vec![1.0, 2.0]);
        assert_eq!(DistanceRange::new(2.0, 1.0, 1.0).points(), Err(Error::EmptySweep));
        assert!(DistanceRange::new(0.0, 1.0, 1.0).points().is_err());
        assert!(DistanceRange::new(1.0, 2.0, 0.0).points().is_err());
    }

    #[test]
    fn empty_sweep_is_an_error() {
        let mut s = Scenario::reference();
        s.distance_range = DistanceRange::new(5.0, 4.0, 1.0);
        assert_eq!(run_sweep(&s), Err(Error::EmptySweep));
    }

    #[test]
    fn degenerate_array_at_short_range() {
        let s = Scenario::reference();
        let p = budget_point(&s, FlyBS, 1.0).unwrap();
        assert_eq!(p.required_array_gain_db, 0.0);
        assert_eq!(p.n_elements, 1);
        let m = s.power_models.fly_bs;
        let expected = m.fixed_power_w
            + m.per_chain_power_w
            + power::pa_power_w(s.transport_radio.tx_power_per_chain_dbm, &m)
            + m.compute_power_w_per_gbps * s.access_target.rate_bps / 1e9;
        assert!((p.consumed_power_w - expected).abs() < 1e-12);
        assert!(p.feasible);
    }

    #[test]
    fn doubling_distance_adds_6_db_of_eirp() {
        let mut s = clear_sea();
        s.max_elements = u64::MAX;
        for d in [2.0, 5.0, 10.0, 20.0] {
            let near = budget_point(&s, FlyRRH, d).unwrap();
            let far = budget_point(&s, FlyRRH, 2.0 * d).unwrap();
            assert!((far.required_eirp_dbm - near.required_eirp_dbm - 6.0206).abs() < 1e-4);
            if near.required_array_gain_db > 0.0 {
                assert_eq!(
                    far.n_elements,
                    linkbudget::elements_for_gain(near.required_array_gain_db + 20.0 * 2f64.log10())
                        .unwrap()
                );
                let ratio = far.n_elements as f64 / near.n_elements as f64;
                assert!(ratio > 3.0 && ratio < 5.5, "{ratio}");
            }
        }
    }

    #[test]
    fn rrh_requirement_is_the_fronthaul_rate() {
        let s = Scenario::reference();
        let fh = fronthaul::fronthaul_rate_bps(s.access_radio.bandwidth_hz, &s.fronthaul).unwrap();
        for row in run_sweep(&s).unwrap() {
            assert_eq!(row.fly_rrh.required_transport_rate_bps, fh);
            assert_eq!(row.fly_rrh.transport_kind, TransportKind::Fronthaul);
            assert_eq!(row.fly_bs.transport_kind, TransportKind::Backhaul);
        }
    }

    #[test]
    fn rows_respect_invariants() {
        let s = Scenario::reference();
        let rows = run_sweep(&s).unwrap();
        assert_eq!(rows.len(), 50);
        for pair in rows.windows(2) {
            assert!(pair[1].distance_km > pair[0].distance_km);
            for arch in ArchitectureKind::ALL {
                assert!(pair[1].point(arch).consumed_power_w >= pair[0].point(arch).consumed_power_w);
            }
        }
        for row in &rows {
            for arch in ArchitectureKind::ALL {
                let p = row.point(arch);
                assert!(p.n_elements >= 1 && p.n_elements <= s.max_elements);
                assert!(p.consumed_power_w >= 0.0);
                if p.feasible {
                    assert!(p.achieved_capacity_bps * (1.0 + CAPACITY_REL_TOL) >= p.required_transport_rate_bps);
                    assert_eq!(p.capacity_shortfall_bps, 0.0);
                } else {
                    assert!(p.capacity_shortfall_bps > 0.0);
                }
            }
        }
    }

    #[test]
    fn infeasible_rows_clamp_to_max_elements() {
        let s = Scenario::reference();
        let p = budget_point(&s, FlyRRH, 50.0).unwrap();
        assert!(!p.feasible);
        assert!(p.required_elements > s.max_elements);
        assert_eq!(p.n_elements, s.max_elements);
    }

    #[test]
    fn sweep_is_deterministic() {
        let s = Scenario::reference();
        assert_eq!(run_sweep(&s).unwrap(), run_sweep(&s).unwrap());
    }

    #[test]
    fn symmetric_configuration_has_no_crossover() {
        let mut s = Scenario::reference();
        s.power_models.fly_bs.compute_power_w_per_gbps = 0.0;
        s.power_models.fly_rrh = s.power_models.fly_bs;
        let fh = fronthaul::fronthaul_rate_bps(s.access_radio.bandwidth_hz, &s.fronthaul).unwrap();
        s.protocol_overhead = fh / s.access_target.rate_bps - 1.0;
        let rows = run_sweep(&s).unwrap();
        for row in &rows {
            assert_eq!(row.fly_bs.required_transport_rate_bps, row.fly_rrh.required_transport_rate_bps);
            assert_eq!(row.fly_bs.consumed_power_w, row.fly_rrh.consumed_power_w);
        }
        let report = crossover_analysis(&rows);
        assert_eq!(report.power_crossover_km, None);
    }

    #[test]
    fn all_feasible_reports_no_infeasibility() {
        let mut s = Scenario::reference();
        s.max_elements = u64::MAX;
        let report = crossover_analysis(&run_sweep(&s).unwrap());
        assert_eq!(report.fly_bs_first_infeasible, None);
        assert_eq!(report.fly_rrh_first_infeasible, None);
    }

    #[test]
    fn reference_shows_crossover_and_limits() {
        let s = Scenario::reference();
        let rows = run_sweep(&s).unwrap();
        let report = crossover_analysis(&rows);
        let rrh_limit = report.fly_rrh_first_infeasible.unwrap();
        let bs_limit = report.fly_bs_first_infeasible.unwrap();
        assert!(rrh_limit.distance_km < bs_limit.distance_km);
        assert!(rrh_limit.capacity_shortfall_bps > 0.0);
        assert!(report.power_crossover_km.is_some());
    }

    #[test]
    fn crossover_ignores_ties() {
        let s = Scenario::reference();
        let mut rows = run_sweep(&s).unwrap();
        rows.truncate(3);
        for (row, (bs, rrh)) in rows.iter_mut().zip([(2.0, 1.0), (1.0, 1.0), (1.0, 2.0)]) {
            row.fly_bs.consumed_power_w = bs;
            row.fly_rrh.consumed_power_w = rrh;
        }
        assert_eq!(crossover_analysis(&rows).power_crossover_km, None);
        rows[1].fly_bs.consumed_power_w = 0.5;
        assert_eq!(crossover_analysis(&rows).power_crossover_km, Some(rows[1].distance_km));
        assert_eq!(crossover_analysis(&[]).power_crossover_km, None);
    }

    #[test]
    fn budget_rejects_nonpositive_distance() {
        let s = Scenario::reference();
        assert_eq!(budget_point(&s, FlyBS, 0.0), Err(Error::NonPositiveDistance(0.0)));
    }

    #[test]
    fn access_budget_reports() {
        let s = Scenario::reference();
        let a = access_budget(&s).unwrap();
        assert_eq!(a.distance_km, 0.5);
        let g = LinkGeometry::new(s.uav_altitude_m, 0.5);
        let pl = propagation::total_path_loss_db(&s.carrier, &s.atmosphere, &g).unwrap();
        assert_eq!(a.path_loss_db, pl);
        assert_eq!(a.design_rate_bps, s.access_target.rate_bps);
        assert_eq!(
            a.required_elements,
            linkbudget::elements_for_gain(a.required_array_gain_db).unwrap()
        );
    }
}
