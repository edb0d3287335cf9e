//! Sweep CSV: one row per (distance, architecture), units in the header.

use std::fmt;
use std::io::Write;

use crate::power::ArchitectureKind;
use crate::scenario::SweepRow;

pub const HEADER: [&str; 9] = [
    "distance_km",
    "arch",
    "path_loss_db",
    "transport_rate_bps",
    "required_eirp_dbm",
    "array_gain_db",
    "n_elements",
    "consumed_power_w",
    "feasible",
];

pub const SIGNIFICANT_DIGITS: usize = 6;

#[derive(Debug, Clone, PartialEq)]
pub struct CsvRecord {
    pub distance_km: f64,
    pub arch: ArchitectureKind,
    pub path_loss_db: f64,
    pub transport_rate_bps: f64,
    pub required_eirp_dbm: f64,
    pub array_gain_db: f64,
    pub n_elements: u64,
    pub consumed_power_w: f64,
    pub feasible: bool,
}

/// First offending line of a malformed CSV.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvError {
    pub line: u64,
    pub message: String,
}

impl fmt::Display for CsvError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for CsvError {}

/// `%g`-style formatting with `digits` significant digits.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Flattens sweep rows, sorted by distance then architecture name.
pub fn records(rows: &[SweepRow]) -> Vec<CsvRecord> {
    let mut out: Vec<CsvRecord> = rows
        .iter()
        .flat_map(|row| {
            ArchitectureKind::ALL.into_iter().map(move |arch| {
                let p = row.point(arch);
                CsvRecord {
                    distance_km: row.distance_km,
                    arch,
                    path_loss_db: p.path_loss_db,
                    transport_rate_bps: p.required_transport_rate_bps,
                    required_eirp_dbm: p.required_eirp_dbm,
                    array_gain_db: p.required_array_gain_db,
                    n_elements: p.n_elements,
                    consumed_power_w: p.consumed_power_w,
                    feasible: p.feasible,
                }
            })
        })
        .collect();
    out.sort_by(|a, b| {
        a.distance_km
            .total_cmp(&b.distance_km)
            .then_with(|| a.arch.name().cmp(b.arch.name()))
    });
    out
}

pub fn write_csv<W: Write>(out: W, records: &[CsvRecord]) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(HEADER)?;
    let f = |x: f64| format_sig(x, SIGNIFICANT_DIGITS);
    for r in records {
        w.write_record([
            f(r.distance_km),
            r.arch.name().to_string(),
            f(r.path_loss_db),
            f(r.transport_rate_bps),
            f(r.required_eirp_dbm),
            f(r.array_gain_db),
            r.n_elements.to_string(),
            f(r.consumed_power_w),
            r.feasible.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string(records: &[CsvRecord]) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, records).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}

/// Parses a CSV in exactly the format [`write_csv`] produces.
pub fn parse_csv(text: &str) -> Result<Vec<CsvRecord>, CsvError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut records = Vec::new();
    let mut saw_header = false;
    for result in reader.records() {
        let rec = result.map_err(|e| CsvError {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        if !saw_header {
            if rec.iter().ne(HEADER.iter().copied()) {
                return Err(CsvError {
                    line,
                    message: format!("expected header `{}`", HEADER.join(",")),
                });
            }
            saw_header = true;
            continue;
        }
        records.push(parse_record(&rec, line)?);
    }
    if !saw_header {
        return Err(CsvError {
            line: 1,
            message: "missing header".into(),
        });
    }
    Ok(records)
}

fn parse_record(rec: &csv::StringRecord, line: u64) -> Result<CsvRecord, CsvError> {
    let bad = |message: String| CsvError { line, message };
    if rec.len() != HEADER.len() {
        return Err(bad(format!("expected {} fields, found {}", HEADER.len(), rec.len())));
    }
    let num = |i: usize| -> Result<f64, CsvError> {
        rec[i]
            .parse::<f64>()
            .map_err(|_| bad(format!("{}: not a number: `{}`", HEADER[i], &rec[i])))
    };
    Ok(CsvRecord {
        distance_km: num(0)?,
        arch: rec[1]
            .parse()
            .map_err(|e: String| bad(format!("arch: {e}")))?,
        path_loss_db: num(2)?,
        transport_rate_bps: num(3)?,
        required_eirp_dbm: num(4)?,
        array_gain_db: num(5)?,
        n_elements: rec[6]
            .parse()
            .map_err(|_| bad(format!("n_elements: not an integer: `{}`", &rec[6])))?,
        consumed_power_w: num(7)?,
        feasible: match &rec[8] {
            "true" => true,
            "false" => false,
            other => return Err(bad(format!("feasible: expected true or false, got `{other}`"))),
        },
    })
}
