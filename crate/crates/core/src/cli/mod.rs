//! Command implementations behind the `sealink` binary.
//!
//! Exit codes: 0 success, 2 usage, 3 invalid configuration or input data,
//! 4 I/O, 5 internal.

pub mod config;
pub mod plot;
pub mod table;

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::power::ArchitectureKind;
use crate::scenario::{self, AccessBudget, ArchPoint, CrossoverReport, Scenario};
use config::LoadError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;
pub const EXIT_IO: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    /// One line per problem.
    #[error("{}", .0.join("\n"))]
    Config(Vec<String>),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Io(_) => EXIT_IO,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<LoadError> for CliError {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Io(msg) => CliError::Io(msg),
            LoadError::Syntax(msg) => CliError::Config(vec![msg]),
            LoadError::Invalid(diags) => CliError::Config(diags.iter().map(|d| d.to_string()).collect()),
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Config(vec![format!("cannot evaluate scenario: {e}")])
    }
}

pub fn cmd_validate(path: &Path) -> Result<String, CliError> {
    config::load_scenario(path)?;
    Ok("OK".to_string())
}

#[derive(Serialize)]
struct BudgetBlock<'a> {
    #[serde(flatten)]
    point: &'a ArchPoint,
    access: &'a AccessBudget,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Human-readable report of one point followed by a one-line JSON block with
/// the same fields.
pub fn budget_report(point: &ArchPoint, access: &AccessBudget) -> Result<String, CliError> {
    let mut out = String::new();
    let f = |x: f64| table::format_sig(x, table::SIGNIFICANT_DIGITS);
    let _ = writeln!(out, "architecture          {}", point.arch);
    let _ = writeln!(out, "distance from shore   {} km", f(point.distance_km));
    let _ = writeln!(out, "slant range           {} km", f(point.slant_range_km));
    let _ = writeln!(out, "path loss             {:.2} dB", point.path_loss_db);
    let _ = writeln!(
        out,
        "transport ({:<9})   {} bit/s (sized for {} bit/s)",
        point.transport_kind.name(),
        f(point.required_transport_rate_bps),
        f(point.design_rate_bps)
    );
    let _ = writeln!(out, "required EIRP         {:.2} dBm", point.required_eirp_dbm);
    let _ = writeln!(out, "array gain            {:.2} dB", point.required_array_gain_db);
    let _ = writeln!(
        out,
        "elements              {} (needed {})",
        point.n_elements, point.required_elements
    );
    let _ = writeln!(out, "total tx power        {:.2} dBm", point.total_tx_power_dbm);
    let _ = writeln!(out, "achieved capacity     {} bit/s", f(point.achieved_capacity_bps));
    let _ = writeln!(out, "consumed power        {:.2} W", point.consumed_power_w);
    let _ = writeln!(out, "  fixed               {:.2} W", point.power.fixed_w);
    let _ = writeln!(out, "  rf chains           {:.2} W", point.power.rf_chains_w);
    let _ = writeln!(out, "  power amplifiers    {:.2} W", point.power.power_amplifier_w);
    if point.arch.processes_on_board() {
        let _ = writeln!(out, "  computation         {:.2} W", point.power.compute_w);
    } else {
        let _ = writeln!(out, "  computation         0.00 W (baseband at shore BBU)");
    }
    let _ = writeln!(out, "feasible              {}", yes_no(point.feasible));
    if !point.feasible {
        let _ = writeln!(
            out,
            "capacity shortfall    {} bit/s",
            f(point.capacity_shortfall_bps)
        );
    }
    let _ = writeln!(
        out,
        "access link           {:.2} dB loss at {} km, EIRP {:.2} dBm, {} elements",
        access.path_loss_db,
        f(access.distance_km),
        access.required_eirp_dbm,
        access.required_elements
    );
    let block = serde_json::to_string(&BudgetBlock { point, access })
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let _ = writeln!(out, "{block}");
    Ok(out)
}

pub fn cmd_budget(path: &Path, arch: ArchitectureKind, distance_km: f64) -> Result<String, CliError> {
    if !(distance_km > 0.0) || !distance_km.is_finite() {
        return Err(CliError::Usage(format!(
            "--distance-km must be a positive number, got {distance_km}"
        )));
    }
    let scenario = config::load_scenario(path)?;
    budget_for(&scenario, arch, distance_km)
}

pub fn budget_for(
    scenario: &Scenario,
    arch: ArchitectureKind,
    distance_km: f64,
) -> Result<String, CliError> {
    let point = scenario::budget_point(scenario, arch, distance_km)?;
    let access = scenario::access_budget(scenario)?;
    budget_report(&point, &access)
}

fn describe(report: &CrossoverReport) -> String {
    let mut out = String::new();
    for arch in ArchitectureKind::ALL {
        match report.first_infeasible(arch) {
            Some(at) => {
                let _ = writeln!(
                    out,
                    "{arch}: first infeasible at {} km (short by {} bit/s)",
                    table::format_sig(at.distance_km, 6),
                    table::format_sig(at.capacity_shortfall_bps, 6)
                );
            }
            None => {
                let _ = writeln!(out, "{arch}: feasible over the whole sweep");
            }
        }
    }
    match report.power_crossover_km {
        Some(d) => {
            let _ = writeln!(out, "power crossover at {} km", table::format_sig(d, 6));
        }
        None => {
            let _ = writeln!(out, "no power crossover");
        }
    }
    out
}

/// Runs the sweep and writes the CSV. Returns a short summary for the terminal.
pub fn cmd_sweep(path: &Path, out_csv: &Path) -> Result<String, CliError> {
    let scenario = config::load_scenario(path)?;
    let rows = scenario::run_sweep(&scenario)?;
    let records = table::records(&rows);
    let text = table::to_csv_string(&records);
    std::fs::write(out_csv, text)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", out_csv.display())))?;
    let mut summary = format!(
        "wrote {} rows ({} distances) to {}\n",
        records.len(),
        rows.len(),
        out_csv.display()
    );
    summary.push_str(&describe(&scenario::crossover_analysis(&rows)));
    Ok(summary)
}

/// Renders a sweep CSV to SVG. Nothing is written unless rendering succeeds.
pub fn cmd_plot(csv_path: &Path, out_svg: &Path) -> Result<(), CliError> {
    let text = std::fs::read_to_string(csv_path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", csv_path.display())))?;
    let records = table::parse_csv(&text)
        .map_err(|e| CliError::Config(vec![format!("{}: {e}", csv_path.display())]))?;
    let svg = plot::render_svg(&records)
        .map_err(|e| CliError::Config(vec![format!("{}: {e}", csv_path.display())]))?;
    std::fs::write(out_svg, svg)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", out_svg.display())))
}
