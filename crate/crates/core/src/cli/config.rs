//! Scenario files.
//!
//! A scenario file is a JSON document with a mandatory `schema_version`.
//! Every key carries its unit in its name. Unknown keys are rejected, and all
//! violations in a file are reported together, one diagnostic per key.

use std::fmt;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::fronthaul::FronthaulSpec;
use crate::linkbudget::{RadioConfig, ThroughputTarget};
use crate::power::PowerModel;
use crate::propagation::{AtmosphereSpec, CarrierSpec};
use crate::scenario::{DistanceRange, PowerModels, Scenario};

pub const SCHEMA_VERSION: u64 = 1;

const TOP_KEYS: &[&str] = &[
    "schema_version",
    "carrier",
    "atmosphere",
    "geometry",
    "sweep",
    "access_target_bps",
    "access_radio",
    "transport_radio",
    "fronthaul",
    "protocol_overhead",
    "power_models",
    "max_elements",
    "feasibility_margin_db",
];
const CARRIER_KEYS: &[&str] = &["frequency_ghz"];
const ATMOSPHERE_KEYS: &[&str] = &["gamma_dry_db_per_km", "gamma_wet_db_per_km"];
const GEOMETRY_KEYS: &[&str] = &["uav_altitude_m", "access_distance_km"];
const SWEEP_KEYS: &[&str] = &["start_km", "stop_km", "step_km"];
const RADIO_KEYS: &[&str] = &[
    "bandwidth_hz",
    "tx_power_per_chain_dbm",
    "element_gain_dbi",
    "rx_gain_dbi",
    "noise_figure_db",
    "implementation_loss_db",
];
const FRONTHAUL_KEYS: &[&str] = &[
    "sample_width_bits",
    "oversampling",
    "antenna_ports",
    "overhead_factor",
];
const POWER_MODELS_KEYS: &[&str] = &["fly_bs", "fly_rrh"];
const POWER_KEYS: &[&str] = &[
    "fixed_power_w",
    "per_chain_power_w",
    "pa_efficiency",
    "compute_power_w_per_gbps",
];

/// One problem with one key of a scenario file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub key: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.key, self.message)
    }
}

#[derive(Debug)]
pub enum LoadError {
    Io(String),
    Syntax(String),
    Invalid(Vec<Diagnostic>),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Io(msg) | LoadError::Syntax(msg) => f.write_str(msg),
            LoadError::Invalid(diags) => {
                for (i, d) in diags.iter().enumerate() {
                    if i > 0 {
                        writeln!(f)?;
                    }
                    write!(f, "{d}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Copy)]
enum Bound {
    Finite,
    NonNegative,
    Positive,
    AtLeastOne,
    Efficiency,
}

impl Bound {
    fn check(self, v: f64) -> Option<&'static str> {
        let ok = v.is_finite()
            && match self {
                Bound::Finite => true,
                Bound::NonNegative => v >= 0.0,
                Bound::Positive => v > 0.0,
                Bound::AtLeastOne => v >= 1.0,
                Bound::Efficiency => v > 0.0 && v <= 1.0,
            };
        if ok {
            return None;
        }
        Some(match self {
            Bound::Finite => "must be a finite number",
            Bound::NonNegative => "must be >= 0",
            Bound::Positive => "must be > 0",
            Bound::AtLeastOne => "must be >= 1",
            Bound::Efficiency => "must lie in (0, 1]",
        })
    }
}

#[derive(Default)]
struct Reader {
    diags: Vec<Diagnostic>,
}

impl Reader {
    fn report(&mut self, key: impl Into<String>, message: impl Into<String>) {
        self.diags.push(Diagnostic {
            key: key.into(),
            message: message.into(),
        });
    }

    fn check_keys(&mut self, obj: &Map<String, Value>, path: &str, allowed: &[&str]) {
        for key in obj.keys() {
            if !allowed.contains(&key.as_str()) {
                self.report(join(path, key), "unknown key");
            }
        }
    }

    fn section<'a>(
        &mut self,
        obj: &'a Map<String, Value>,
        path: &str,
        key: &str,
        allowed: &[&str],
    ) -> Option<&'a Map<String, Value>> {
        let full = join(path, key);
        match obj.get(key) {
            None => {
                self.report(full, "missing required key");
                None
            }
            Some(Value::Object(inner)) => {
                self.check_keys(inner, &full, allowed);
                Some(inner)
            }
            Some(_) => {
                self.report(full, "expected an object");
                None
            }
        }
    }

    fn number(
        &mut self,
        obj: Option<&Map<String, Value>>,
        path: &str,
        key: &str,
        bound: Bound,
    ) -> f64 {
        // a missing parent section has already been reported
        let Some(obj) = obj else {
            return f64::NAN;
        };
        let full = join(path, key);
        match obj.get(key) {
            None => {
                self.report(full, "missing required key");
                f64::NAN
            }
            Some(Value::Number(n)) => {
                let v = n.as_f64().unwrap_or(f64::NAN);
                if let Some(rule) = bound.check(v) {
                    self.report(full, format!("{rule} (got {v})"));
                }
                v
            }
            Some(_) => {
                self.report(full, "expected a number");
                f64::NAN
            }
        }
    }

    fn count(&mut self, obj: Option<&Map<String, Value>>, path: &str, key: &str) -> u64 {
        let Some(obj) = obj else {
            return 1;
        };
        let full = join(path, key);
        match obj.get(key) {
            None => {
                self.report(full, "missing required key");
                1
            }
            Some(Value::Number(n)) => match n.as_u64() {
                Some(0) => {
                    self.report(full, "must be >= 1 (got 0)");
                    1
                }
                Some(v) => v,
                None => {
                    self.report(full, format!("must be a positive integer (got {n})"));
                    1
                }
            },
            Some(_) => {
                self.report(full, "expected an integer");
                1
            }
        }
    }

    fn radio(&mut self, root: &Map<String, Value>, key: &str) -> RadioConfig {
        let obj = self.section(root, "", key, RADIO_KEYS);
        RadioConfig {
            bandwidth_hz: self.number(obj, key, "bandwidth_hz", Bound::Positive),
            tx_power_per_chain_dbm: self.number(obj, key, "tx_power_per_chain_dbm", Bound::Finite),
            element_gain_dbi: self.number(obj, key, "element_gain_dbi", Bound::Finite),
            rx_gain_dbi: self.number(obj, key, "rx_gain_dbi", Bound::Finite),
            noise_figure_db: self.number(obj, key, "noise_figure_db", Bound::NonNegative),
            implementation_loss_db: self.number(
                obj,
                key,
                "implementation_loss_db",
                Bound::NonNegative,
            ),
        }
    }

    fn power_model(&mut self, parent: Option<&Map<String, Value>>, key: &str) -> PowerModel {
        let path = join("power_models", key);
        let obj = parent.and_then(|p| self.section(p, "power_models", key, POWER_KEYS));
        PowerModel {
            fixed_power_w: self.number(obj, &path, "fixed_power_w", Bound::NonNegative),
            per_chain_power_w: self.number(obj, &path, "per_chain_power_w", Bound::NonNegative),
            pa_efficiency: self.number(obj, &path, "pa_efficiency", Bound::Efficiency),
            compute_power_w_per_gbps: self.number(
                obj,
                &path,
                "compute_power_w_per_gbps",
                Bound::NonNegative,
            ),
        }
    }
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

/// Parses and validates a scenario document.
pub fn parse_scenario(text: &str) -> Result<Scenario, LoadError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| {
        LoadError::Syntax(format!(
            "malformed scenario at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })?;
    let Value::Object(root) = doc else {
        return Err(LoadError::Syntax("scenario must be a JSON object".into()));
    };

    let mut r = Reader::default();
    r.check_keys(&root, "", TOP_KEYS);

    match root.get("schema_version") {
        None => r.report("schema_version", "missing required key"),
        Some(v) if v.as_u64() == Some(SCHEMA_VERSION) => {}
        Some(v) => r.report(
            "schema_version",
            format!("unsupported version {v} (expected {SCHEMA_VERSION})"),
        ),
    }

    let top = Some(&root);
    let carrier = r.section(&root, "", "carrier", CARRIER_KEYS);
    let atmosphere = r.section(&root, "", "atmosphere", ATMOSPHERE_KEYS);
    let geometry = r.section(&root, "", "geometry", GEOMETRY_KEYS);
    let sweep = r.section(&root, "", "sweep", SWEEP_KEYS);
    let fronthaul = r.section(&root, "", "fronthaul", FRONTHAUL_KEYS);
    let power_models = r.section(&root, "", "power_models", POWER_MODELS_KEYS);

    let scenario = Scenario {
        carrier: CarrierSpec::new(r.number(carrier, "carrier", "frequency_ghz", Bound::Positive)),
        atmosphere: AtmosphereSpec {
            gamma_dry_db_per_km: r.number(
                atmosphere,
                "atmosphere",
                "gamma_dry_db_per_km",
                Bound::NonNegative,
            ),
            gamma_wet_db_per_km: r.number(
                atmosphere,
                "atmosphere",
                "gamma_wet_db_per_km",
                Bound::NonNegative,
            ),
        },
        uav_altitude_m: r.number(geometry, "geometry", "uav_altitude_m", Bound::NonNegative),
        access_distance_km: r.number(
            geometry,
            "geometry",
            "access_distance_km",
            Bound::NonNegative,
        ),
        distance_range: DistanceRange::new(
            r.number(sweep, "sweep", "start_km", Bound::Positive),
            r.number(sweep, "sweep", "stop_km", Bound::Positive),
            r.number(sweep, "sweep", "step_km", Bound::Positive),
        ),
        access_target: ThroughputTarget::new(r.number(top, "", "access_target_bps", Bound::Positive)),
        transport_radio: r.radio(&root, "transport_radio"),
        access_radio: r.radio(&root, "access_radio"),
        fronthaul: FronthaulSpec {
            sample_width_bits: u32::try_from(r.count(fronthaul, "fronthaul", "sample_width_bits"))
                .unwrap_or(u32::MAX),
            oversampling: r.number(fronthaul, "fronthaul", "oversampling", Bound::AtLeastOne),
            antenna_ports: u32::try_from(r.count(fronthaul, "fronthaul", "antenna_ports"))
                .unwrap_or(u32::MAX),
            overhead_factor: r.number(fronthaul, "fronthaul", "overhead_factor", Bound::NonNegative),
        },
        protocol_overhead: r.number(top, "", "protocol_overhead", Bound::NonNegative),
        power_models: PowerModels {
            fly_bs: r.power_model(power_models, "fly_bs"),
            fly_rrh: r.power_model(power_models, "fly_rrh"),
        },
        max_elements: r.count(top, "", "max_elements"),
        feasibility_margin_db: r.number(top, "", "feasibility_margin_db", Bound::NonNegative),
    };

    let range = scenario.distance_range;
    if range.start_km.is_finite() && range.stop_km.is_finite() && range.stop_km < range.start_km {
        r.report("sweep.stop_km", "must be >= sweep.start_km (empty sweep)");
    }

    if !r.diags.is_empty() {
        return Err(LoadError::Invalid(r.diags));
    }
    // Every rule above mirrors a domain invariant; this catches any that drift.
    scenario.validate().map_err(|e| {
        LoadError::Invalid(vec![Diagnostic {
            key: "scenario".into(),
            message: e.to_string(),
        }])
    })?;
    Ok(scenario)
}

pub fn load_scenario(path: &Path) -> Result<Scenario, LoadError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| LoadError::Io(format!("cannot read {}: {e}", path.display())))?;
    parse_scenario(&text)
}

fn radio_json(radio: &RadioConfig) -> Value {
    json!({
        "bandwidth_hz": radio.bandwidth_hz,
        "tx_power_per_chain_dbm": radio.tx_power_per_chain_dbm,
        "element_gain_dbi": radio.element_gain_dbi,
        "rx_gain_dbi": radio.rx_gain_dbi,
        "noise_figure_db": radio.noise_figure_db,
        "implementation_loss_db": radio.implementation_loss_db,
    })
}

fn power_json(model: &PowerModel) -> Value {
    json!({
        "fixed_power_w": model.fixed_power_w,
        "per_chain_power_w": model.per_chain_power_w,
        "pa_efficiency": model.pa_efficiency,
        "compute_power_w_per_gbps": model.compute_power_w_per_gbps,
    })
}

/// Scenario as a scenario-file document.
pub fn scenario_to_json(s: &Scenario) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "carrier": { "frequency_ghz": s.carrier.frequency_ghz },
        "atmosphere": {
            "gamma_dry_db_per_km": s.atmosphere.gamma_dry_db_per_km,
            "gamma_wet_db_per_km": s.atmosphere.gamma_wet_db_per_km,
        },
        "geometry": {
            "uav_altitude_m": s.uav_altitude_m,
            "access_distance_km": s.access_distance_km,
        },
        "sweep": {
            "start_km": s.distance_range.start_km,
            "stop_km": s.distance_range.stop_km,
            "step_km": s.distance_range.step_km,
        },
        "access_target_bps": s.access_target.rate_bps,
        "access_radio": radio_json(&s.access_radio),
        "transport_radio": radio_json(&s.transport_radio),
        "fronthaul": {
            "sample_width_bits": s.fronthaul.sample_width_bits,
            "oversampling": s.fronthaul.oversampling,
            "antenna_ports": s.fronthaul.antenna_ports,
            "overhead_factor": s.fronthaul.overhead_factor,
        },
        "protocol_overhead": s.protocol_overhead,
        "power_models": {
            "fly_bs": power_json(&s.power_models.fly_bs),
            "fly_rrh": power_json(&s.power_models.fly_rrh),
        },
        "max_elements": s.max_elements,
        "feasibility_margin_db": s.feasibility_margin_db,
    })
}

pub fn scenario_to_string(s: &Scenario) -> String {
    let mut text = serde_json::to_string_pretty(&scenario_to_json(s)).expect("JSON values always serialize");
    text.push('\n');
    text
}
