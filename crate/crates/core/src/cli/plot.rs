//! SVG rendering of consumed power against distance from shore.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::table::{format_sig, CsvRecord};
use crate::power::ArchitectureKind;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 500.0;
pub const MARGIN_LEFT: f64 = 80.0;
pub const MARGIN_RIGHT: f64 = 170.0;
pub const MARGIN_TOP: f64 = 40.0;
pub const MARGIN_BOTTOM: f64 = 60.0;
const TICKS: usize = 5;

pub const PLOT_WIDTH: f64 = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
pub const PLOT_HEIGHT: f64 = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;

fn color(arch: ArchitectureKind) -> &'static str {
    match arch {
        ArchitectureKind::FlyBS => "#1f77b4",
        ArchitectureKind::FlyRRH => "#d62728",
    }
}

/// Smallest of 1, 2, 2.5, 5, 10 times a power of ten that is >= `v`.
pub fn nice_ceiling(v: f64) -> f64 {
    if !(v > 0.0) || !v.is_finite() {
        return 1.0;
    }
    let scale = 10f64.powf(v.log10().floor());
    let f = v / scale;
    let step = [1.0, 2.0, 2.5, 5.0, 10.0]
        .into_iter()
        .find(|&s| f <= s * (1.0 + 1e-12))
        .unwrap_or(10.0);
    step * scale
}

/// Affine map from data space to SVG user space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axes {
    pub x_min: f64,
    pub x_max: f64,
    pub y_max: f64,
}

impl Axes {
    pub fn fit(records: &[CsvRecord]) -> Self {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        let mut p_max: f64 = 0.0;
        for r in records {
            lo = lo.min(r.distance_km);
            hi = hi.max(r.distance_km);
            p_max = p_max.max(r.consumed_power_w);
        }
        if hi <= lo {
            lo -= 0.5;
            hi += 0.5;
        }
        Axes {
            x_min: lo,
            x_max: hi,
            y_max: nice_ceiling(p_max),
        }
    }

    pub fn x(&self, distance_km: f64) -> f64 {
        MARGIN_LEFT + (distance_km - self.x_min) / (self.x_max - self.x_min) * PLOT_WIDTH
    }

    pub fn y(&self, power_w: f64) -> f64 {
        MARGIN_TOP + PLOT_HEIGHT - power_w / self.y_max * PLOT_HEIGHT
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlotError(pub String);

impl std::fmt::Display for PlotError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for PlotError {}

/// Renders one polyline per architecture, axes, legend, and a dashed marker
/// at each architecture's first infeasible distance.
pub fn render_svg(records: &[CsvRecord]) -> Result<String, PlotError> {
    if records.is_empty() {
        return Err(PlotError("no data rows after the header".into()));
    }
    let mut series: BTreeMap<&str, (ArchitectureKind, Vec<&CsvRecord>)> = BTreeMap::new();
    for r in records {
        series
            .entry(r.arch.name())
            .or_insert_with(|| (r.arch, Vec::new()))
            .1
            .push(r);
    }
    for (_, points) in series.values_mut() {
        points.sort_by(|a, b| a.distance_km.total_cmp(&b.distance_km));
    }
    let axes = Axes::fit(records);

    let mut svg = String::new();
    // write! into a String cannot fail
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="15">Payload power vs distance from shore</text>"#,
        MARGIN_LEFT + PLOT_WIDTH / 2.0
    );

    let (left, right) = (MARGIN_LEFT, MARGIN_LEFT + PLOT_WIDTH);
    let (top, bottom) = (MARGIN_TOP, MARGIN_TOP + PLOT_HEIGHT);
    let _ = writeln!(svg, r#"<g class="axes" stroke="black" stroke-width="1">"#);
    let _ = writeln!(svg, r#"<line x1="{left:.2}" y1="{bottom:.2}" x2="{right:.2}" y2="{bottom:.2}"/>"#);
    let _ = writeln!(svg, r#"<line x1="{left:.2}" y1="{top:.2}" x2="{left:.2}" y2="{bottom:.2}"/>"#);
    let _ = writeln!(svg, "</g>");

    let _ = writeln!(svg, r#"<g class="ticks">"#);
    for i in 0..=TICKS {
        let frac = i as f64 / TICKS as f64;
        let d = axes.x_min + frac * (axes.x_max - axes.x_min);
        let x = axes.x(d);
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.2}" y1="{bottom:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            bottom + 5.0,
            bottom + 20.0,
            format_sig(d, 4)
        );
        let p = frac * axes.y_max;
        let y = axes.y(p);
        let _ = writeln!(
            svg,
            r##"<line x1="{:.2}" y1="{y:.2}" x2="{right:.2}" y2="{y:.2}" stroke="#dddddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"##,
            left,
            left - 8.0,
            y + 4.0,
            format_sig(p, 4)
        );
    }
    let _ = writeln!(svg, "</g>");

    let _ = writeln!(
        svg,
        r#"<text class="x-label" x="{:.2}" y="{:.2}" text-anchor="middle">Distance from shore (km)</text>"#,
        left + PLOT_WIDTH / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        svg,
        r#"<text class="y-label" x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">Consumed power (W)</text>"#,
        top + PLOT_HEIGHT / 2.0,
        top + PLOT_HEIGHT / 2.0
    );

    for (name, (arch, points)) in &series {
        let coords: Vec<String> = points
            .iter()
            .map(|r| format!("{:.2},{:.2}", axes.x(r.distance_km), axes.y(r.consumed_power_w)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline class="series" data-arch="{name}" fill="none" stroke="{}" stroke-width="2" points="{}"/>"#,
            color(*arch),
            coords.join(" ")
        );
        if let Some(first_bad) = points.iter().find(|r| !r.feasible) {
            let x = axes.x(first_bad.distance_km);
            let _ = writeln!(
                svg,
                r#"<line class="infeasible" data-arch="{name}" x1="{x:.2}" y1="{top:.2}" x2="{x:.2}" y2="{bottom:.2}" stroke="{}" stroke-width="1.5" stroke-dasharray="6 4"/>"#,
                color(*arch)
            );
        }
    }

    let _ = writeln!(svg, r#"<g class="legend">"#);
    let legend_x = right + 20.0;
    for (i, (name, (arch, _))) in series.iter().enumerate() {
        let y = top + 10.0 + 22.0 * i as f64;
        let _ = writeln!(
            svg,
            r#"<line x1="{legend_x:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{name}</text>"#,
            legend_x + 24.0,
            color(*arch),
            legend_x + 30.0,
            y + 4.0
        );
    }
    let y = top + 10.0 + 22.0 * series.len() as f64;
    let _ = writeln!(
        svg,
        r#"<line x1="{legend_x:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="black" stroke-dasharray="6 4"/><text x="{:.2}" y="{:.2}">first infeasible</text>"#,
        legend_x + 24.0,
        legend_x + 30.0,
        y + 4.0
    );
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}
