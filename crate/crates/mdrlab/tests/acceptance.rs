//! Acceptance suite: one test per shipped criterion, each printing a
//! PASS/FAIL line (visible with `--nocapture`) and failing loudly on any
//! out-of-tolerance result. Tolerances are pinned here, not configurable.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, SQRT_2};
use std::time::Instant;

use mdrlab::bounds::{vertex_min_radius, MdrKind};
use mdrlab::harness::sample::{pure_state, trial_rng};
use mdrlab::harness::{
    execute, run_chsh, run_fig2, run_fuzz, run_vertex, CaseRecord, Mode, RunConfig,
};
use mdrlab::mdr::{cnot_u13, disturbance_eta, meter_state, precision_epsilon};
use mdrlab::qcore::pauli_op;
use mdrlab::Vec3;

fn verdict(number: u32, name: &str, pass: bool) {
    println!(
        "criterion {number} ({name}): {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {number} ({name}) failed");
}

#[test]
fn criterion_1_meter_sweep_reproduction() {
    let mut cfg = RunConfig::new(Mode::Fig2);
    cfg.grid_points = 181;
    let started = Instant::now();
    let (rows, report) = run_fig2(&cfg).unwrap();
    let elapsed = started.elapsed();

    let mut ok = elapsed.as_secs_f64() < 1.0;
    ok &= rows.len() == 181;

    let mut max_sum = f64::NEG_INFINITY;
    let mut argmax = f64::NAN;
    for row in &rows {
        let closed_form = (2.0 * row.theta3).cos() + (2.0 * row.theta3).sin();
        ok &= (row.sum - closed_form).abs() < 1e-9;
        if row.sum > max_sum {
            max_sum = row.sum;
            argmax = row.theta3;
        }
        if row.theta3 > 1e-12 && row.theta3 < FRAC_PI_4 - 1e-12 {
            ok &= row.sum > 1.0; // strict product-form exceedance
        }
        ok &= row.sum <= 2.0 * SQRT_2 - 1.0 + 1e-9;
    }
    ok &= (max_sum - SQRT_2).abs() < 1e-9;
    ok &= (argmax - FRAC_PI_8).abs() < 1e-9;
    ok &= report.pass;

    verdict(1, "meter sweep reproduction", ok);
}

#[test]
fn criterion_2_correlation_identity_fuzz() {
    let mut cfg = RunConfig::new(Mode::FuzzEq15);
    cfg.seed = 42;
    cfg.trials = 1000;
    let started = Instant::now();
    let report = run_fuzz(&cfg).unwrap();
    let elapsed = started.elapsed();

    let ok = elapsed.as_secs_f64() < 5.0 && report.worst_margin >= -1e-9 && report.pass;
    println!(
        "  worst residual {:.3e} over {} scenarios in {:.2}s",
        -report.worst_margin,
        report.trials,
        elapsed.as_secs_f64()
    );
    verdict(2, "correlation identity fuzz", ok);
}

#[test]
fn criterion_3_correlation_area_bound_fuzz() {
    let mut cfg = RunConfig::new(Mode::FuzzThm1);
    cfg.seed = 7;
    cfg.trials = 100_000;
    let started = Instant::now();
    let report = run_fuzz(&cfg).unwrap();
    let elapsed = started.elapsed();

    let ok = elapsed.as_secs_f64() < 60.0 && report.worst_margin >= -1e-9 && report.pass;
    println!(
        "  worst margin {:.3e} over {} states in {:.2}s",
        report.worst_margin,
        report.trials,
        elapsed.as_secs_f64()
    );
    verdict(3, "correlation area bound fuzz", ok);
}

#[test]
fn criterion_4_variance_product_fuzz() {
    let mut cfg = RunConfig::new(Mode::FuzzRs);
    cfg.seed = 11;
    cfg.trials = 10_000;
    cfg.tol_inequality = 1e-10;
    let report = run_fuzz(&cfg).unwrap();

    let ok = report.worst_margin >= -1e-10 && report.pass && report.violations.is_empty();
    println!("  worst margin {:.3e}", report.worst_margin);
    verdict(4, "variance product fuzz", ok);
}

#[test]
fn criterion_5_controlled_not_special_values() {
    let gate = cnot_u13();
    let meter = meter_state(0.0);
    let sz = pauli_op(Vec3::z_axis());
    let sx = pauli_op(Vec3::x_axis());

    let mut ok = true;
    for trial in 0..12u64 {
        let psi1 = pure_state(1, &mut trial_rng(99, trial));
        let eps = precision_epsilon(&psi1, &meter, &gate, &sz).unwrap();
        let eta = disturbance_eta(&psi1, &meter, &gate, &sx).unwrap();
        ok &= eps.abs() < 1e-12;
        ok &= (eta - SQRT_2).abs() < 1e-10;
    }
    verdict(5, "controlled-not special values", ok);
}

#[test]
fn criterion_6_vertex_characterization() {
    let mut ok = true;
    for &c in &[0.1f64, 0.5, 1.0, 2.0] {
        let radius = vertex_min_radius(0.7, 1.3, c, MdrKind::Heisenberg).unwrap();
        ok &= (radius - 2.0 * c).abs() < 1e-8;

        let d = c.sqrt();
        let radius = vertex_min_radius(d, d, c, MdrKind::Ozawa).unwrap();
        ok &= (radius - (2.0 - SQRT_2) * (2.0 - SQRT_2) * c).abs() < 1e-6;
    }
    // the surface runner applies the same checks cell by cell
    let (_, report) = run_vertex(&RunConfig::new(Mode::Vertex)).unwrap();
    ok &= report.pass;
    verdict(6, "vertex characterization", ok);
}

#[test]
fn criterion_7_composite_chsh_monogamy() {
    let mut cfg = RunConfig::new(Mode::Chsh);
    cfg.grid_points = 181;
    let (rows, report) = run_chsh(&cfg).unwrap();

    let mut ok = report.pass;
    let peak = rows
        .iter()
        .find(|r| (r.base.theta3 - FRAC_PI_8).abs() < 1e-12)
        .expect("pi/8 on the grid");
    ok &= (peak.total - (2.0 + SQRT_2)).abs() < 1e-9;
    ok &= peak.total > 2.0 * SQRT_2;
    for row in &rows {
        ok &= row.total <= 2.0 * SQRT_2 * (2.0 * SQRT_2 - 1.0) + 1e-9;
    }
    println!("  peak total {:.12} at theta3 = pi/8", peak.total);
    verdict(7, "composite chsh monogamy", ok);
}

#[test]
fn criterion_8_correlation_sum_bound_fuzz() {
    let mut cfg = RunConfig::new(Mode::FuzzThm2);
    cfg.seed = 2024;
    cfg.trials = 10_000;
    cfg.grid_points = 9;
    let report = run_fuzz(&cfg).unwrap();

    let mut ok = report.pass; // zero three-term violations beyond 1e-9
    let findings: Vec<_> = report.heisenberg_findings().collect();
    ok &= !findings.is_empty();

    // the findings must include the tilted-meter controlled-NOT point
    let cnot = cnot_u13::<f64>();
    let tilted = meter_state::<f64>(FRAC_PI_8);
    let hit = findings.iter().any(|v| match &v.scenario {
        CaseRecord::Scenario { m, meter, u13, .. } => {
            *m == 0
                && meter
                    .iter()
                    .zip(tilted.amps())
                    .all(|(got, want)| (got[0] - want.re).abs() < 1e-9 && got[1].abs() < 1e-9)
                && u13
                    .iter()
                    .zip(cnot.entries())
                    .all(|(got, want)| (got[0] - want.re).abs() < 1e-12 && got[1].abs() < 1e-12)
        }
        _ => false,
    });
    ok &= hit;
    println!(
        "  {} product-form findings, worst three-term margin {:.3e}",
        findings.len(),
        report.worst_margin
    );
    verdict(8, "correlation sum bound fuzz", ok);
}

#[test]
fn criterion_9_byte_identical_reruns() {
    let dir = tempfile::tempdir().unwrap();
    let mut ok = true;

    for (mode, has_csv) in [
        (Mode::Fig2, true),
        (Mode::Vertex, true),
        (Mode::FuzzEq15, false),
    ] {
        let mut outputs: Vec<(Vec<u8>, Vec<u8>)> = Vec::new();
        for pass_idx in 0..2 {
            let mut cfg = RunConfig::new(mode);
            cfg.seed = 5;
            cfg.trials = 50;
            cfg.grid_points = 41;
            let csv_path = dir
                .path()
                .join(format!("{}_{pass_idx}.csv", cfg.mode.as_str()));
            let json_path = dir
                .path()
                .join(format!("{}_{pass_idx}.json", cfg.mode.as_str()));
            if has_csv {
                cfg.out_csv = csv_path.display().to_string();
            }
            cfg.out_json = json_path.display().to_string();
            execute(&cfg).unwrap();
            let csv = if has_csv {
                std::fs::read(&csv_path).unwrap()
            } else {
                Vec::new()
            };
            let json = std::fs::read(&json_path).unwrap();
            outputs.push((csv, json));
        }
        ok &= outputs[0] == outputs[1];
    }
    verdict(9, "byte-identical reruns", ok);
}
