mod common;

use common::{close, recompute};
use proptest::prelude::*;
use sealink::cli::{config, table};
use sealink::scenario::{crossover_analysis, run_sweep, DistanceRange};
use sealink::{ArchitectureKind, Scenario};

#[test]
fn sweep_matches_straight_line_oracle() {
    let s = Scenario::reference();
    let rows = run_sweep(&s).unwrap();
    let oracle = common::sweep(&s);
    assert_eq!(rows.len(), oracle.len());
    for (row, (obs, orrh)) in rows.iter().zip(&oracle) {
        for (p, o) in [(&row.fly_bs, obs), (&row.fly_rrh, orrh)] {
            assert_eq!(p.distance_km, o.distance_km);
            assert!(close(p.path_loss_db, o.path_loss_db, 1e-12));
            assert!(close(p.required_transport_rate_bps, o.transport_rate_bps, 1e-15));
            assert!(close(p.required_eirp_dbm, o.required_eirp_dbm, 1e-10));
            assert!(close(p.required_array_gain_db, o.array_gain_db, 1e-10));
            assert_eq!(p.n_elements, o.n_elements, "d={} {:?}", p.distance_km, p.arch);
            assert!(close(p.consumed_power_w, o.consumed_power_w, 1e-12));
            assert_eq!(p.feasible, o.feasible);
        }
    }
}

#[test]
fn csv_power_column_matches_oracle() {
    let s = Scenario::reference();
    let text = table::to_csv_string(&table::records(&run_sweep(&s).unwrap()));
    let parsed = table::parse_csv(&text).unwrap();
    for rec in parsed {
        let o = recompute(&s, rec.arch, rec.distance_km);
        assert!(close(rec.consumed_power_w, o.consumed_power_w, 5e-6));
        assert_eq!(rec.n_elements, o.n_elements);
        assert_eq!(rec.feasible, o.feasible);
    }
}

#[test]
fn shipped_reference_matches_builtin() {
    let s = config::load_scenario(&common::shipped("scenarios/reference.json")).unwrap();
    assert_eq!(s, Scenario::reference());
}

fn arb_scenario() -> impl Strategy<Value = Scenario> {
    (
        (20.0f64..90.0, 0.0f64..0.3, 0.0f64..0.3, 0.0f64..3000.0),
        (0.1f64..2.0, 0.1f64..2.0, 5u64..40),
        (1e8f64..4e9, -5.0f64..25.0, 0.0f64..10.0, 10.0f64..50.0),
        (1e7f64..4e8, 8u32..16, 1u32..4, 0.0f64..0.3),
        (0.0f64..0.5, 1u64..100_000, 0.0f64..6.0, 0.0f64..50.0),
    )
        .prop_map(
            |((f, gd, gw, alt), (start, step, n), (bw, tx, eg, rx), (acc_bw, bits, ports, oh), (poh, max_el, margin, compute))| {
                let mut s = Scenario::reference();
                s.carrier.frequency_ghz = f;
                s.atmosphere.gamma_dry_db_per_km = gd;
                s.atmosphere.gamma_wet_db_per_km = gw;
                s.uav_altitude_m = alt;
                s.distance_range = DistanceRange::new(start, start + step * (n - 1) as f64, step);
                s.transport_radio.bandwidth_hz = bw;
                s.transport_radio.tx_power_per_chain_dbm = tx;
                s.transport_radio.element_gain_dbi = eg;
                s.transport_radio.rx_gain_dbi = rx;
                s.access_radio.bandwidth_hz = acc_bw;
                s.fronthaul.sample_width_bits = bits;
                s.fronthaul.antenna_ports = ports;
                s.fronthaul.overhead_factor = oh;
                s.protocol_overhead = poh;
                s.max_elements = max_el;
                s.feasibility_margin_db = margin;
                s.power_models.fly_bs.compute_power_w_per_gbps = compute;
                s
            },
        )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sweep_invariants(s in arb_scenario()) {
        let rows = match run_sweep(&s) {
            Ok(rows) => rows,
            // very wide fronthaul over a narrow transport channel
            Err(sealink::Error::SpectralEfficiencyOverflow(_)) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        prop_assert_eq!(rows.len(), common::grid(&s).len());
        for pair in rows.windows(2) {
            prop_assert!(pair[1].distance_km > pair[0].distance_km);
            for arch in ArchitectureKind::ALL {
                prop_assert!(pair[1].point(arch).consumed_power_w >= pair[0].point(arch).consumed_power_w);
            }
        }
        for row in &rows {
            for arch in ArchitectureKind::ALL {
                let p = row.point(arch);
                prop_assert!(p.n_elements >= 1);
                prop_assert!(p.consumed_power_w >= 0.0);
                if p.feasible {
                    prop_assert!(p.n_elements <= s.max_elements);
                    prop_assert!(p.achieved_capacity_bps * (1.0 + 1e-9) >= p.required_transport_rate_bps);
                }
            }
        }
        prop_assert_eq!(&rows, &run_sweep(&s).unwrap());
    }

    #[test]
    fn equalized_transport_gives_identical_columns(s in arb_scenario()) {
        let mut s = s;
        s.power_models.fly_bs.compute_power_w_per_gbps = 0.0;
        s.power_models.fly_rrh = s.power_models.fly_bs;
        let fh = sealink::fronthaul::fronthaul_rate_bps(s.access_radio.bandwidth_hz, &s.fronthaul).unwrap();
        s.access_target.rate_bps = fh;
        s.protocol_overhead = 0.0;
        if let Ok(rows) = run_sweep(&s) {
            for row in &rows {
                prop_assert_eq!(row.fly_bs.consumed_power_w, row.fly_rrh.consumed_power_w);
            }
            prop_assert_eq!(crossover_analysis(&rows).power_crossover_km, None);
        }
    }
}
