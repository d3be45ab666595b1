//! Campaign drivers: sweeps over the controlled-NOT demonstration family,
//! randomized fuzz campaigns for the identities and bounds, and the vertex
//! radius surface, each emitting deterministic CSV/JSON artifacts.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_8, SQRT_2};
use std::fs;

use crate::bounds::{
    chsh_composite, rs_check, theorem1_check, theorem2_bound, theorem2_check, vertex_min_radius,
    MdrKind,
};
use crate::error::Error;
use crate::harness::config::{HarnessError, Mode, RunConfig};
use crate::harness::report::{CampaignReport, CaseRecord, Violation, KIND_IDENTITY, KIND_VERTEX};
use crate::harness::sample;
use crate::mdr::{cnot_u13, evaluate_scenario, meter_state, post_interaction_state, Scenario};
use crate::qcore::Vec3;

/// Largest composite CHSH total the demonstration family reaches, at
/// `theta3 = pi/8`: `2 + sqrt(2)`.
pub const CHSH_PEAK_TOTAL: f64 = 2.0 + SQRT_2;

/// Vertex-cell tolerance for the pure-hyperbola radius `2c`.
pub const VERTEX_TOL_HYPERBOLA: f64 = 1e-8;
/// Vertex-cell tolerance for the displaced curve at the symmetric locus,
/// radius `(2 - sqrt(2))^2 c`.
pub const VERTEX_TOL_SYMMETRIC: f64 = 1e-6;

/// One sweep sample: meter angle, preparation tilt, the two correlations,
/// their sum, and the bounds implied by each relation kind.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub theta3: f64,
    pub theta_p: f64,
    pub e_a2a3: f64,
    pub e_b1b2: f64,
    pub sum: f64,
    pub bound_h: f64,
    pub bound_o: f64,
}

/// Sweep sample extended with the composite CHSH pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChshRow {
    pub base: SweepRow,
    pub b12: f64,
    pub b23: f64,
    pub total: f64,
}

/// One cell of the vertex radius surface.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VertexRow {
    pub d_a: f64,
    pub d_b: f64,
    pub c: f64,
    pub kind: MdrKind,
    pub radius: f64,
}

/// The demonstration family: signal observable along z, disturbed
/// observable along x, even pair parity, controlled-NOT interaction, meter
/// tilted by `theta3`, preparation axis tilted `theta_p` away from the pair
/// axis (y) toward z.
pub fn cnot_family_scenario(theta3: f64, theta_p: f64) -> Result<Scenario<f64>, HarnessError> {
    let n_p = Vec3::new(0.0, theta_p.cos(), theta_p.sin());
    Ok(Scenario::new(
        0,
        Vec3::z_axis(),
        Vec3::x_axis(),
        n_p,
        meter_state(theta3),
        cnot_u13(),
    )?)
}

/// Correlation sum and both bounds at one family point.
pub(crate) fn fig2_family_sum(theta3: f64, theta_p: f64) -> Result<(f64, f64, f64), HarnessError> {
    let scenario = cnot_family_scenario(theta3, theta_p)?;
    let sample = evaluate_scenario(&scenario)?;
    let sum = sample.e_a2a3 + sample.e_b1b2;
    let bound_h = theorem2_bound(
        scenario.a(),
        scenario.b(),
        scenario.n_p(),
        MdrKind::Heisenberg,
    );
    let bound_o = theorem2_bound(scenario.a(), scenario.b(), scenario.n_p(), MdrKind::Ozawa);
    Ok((sum, bound_h, bound_o))
}

/// Composite CHSH total and its two bounds at one family point.
pub(crate) fn chsh_family_total(theta3: f64) -> Result<(f64, f64, f64), HarnessError> {
    let scenario = cnot_family_scenario(theta3, 0.0)?;
    let psi123 = post_interaction_state(&scenario);
    let report = chsh_composite(&psi123, scenario.a(), scenario.b(), scenario.n_p())?;
    Ok((report.total, report.bound_h, report.bound_o))
}

fn sweep_grid(grid_points: u64) -> Vec<f64> {
    let n = grid_points as usize;
    let step = FRAC_PI_2 / (n - 1) as f64;
    (0..n).map(|k| k as f64 * step).collect()
}

fn require_mode(cfg: &RunConfig, expected: &[Mode]) -> Result<(), HarnessError> {
    if expected.contains(&cfg.mode) {
        Ok(())
    } else {
        Err(HarnessError::InvalidConfig(format!(
            "mode {} not valid for this runner",
            cfg.mode.as_str()
        )))
    }
}

fn finish_report(
    cfg: &RunConfig,
    trials: u64,
    worst_margin: f64,
    violations: Vec<Violation>,
) -> CampaignReport {
    let pass = violations.iter().all(|v| v.kind == "heisenberg");
    CampaignReport {
        mode: cfg.mode.as_str().to_string(),
        seed: cfg.seed,
        trials,
        worst_margin,
        violations,
        pass,
    }
}

/// Sweeps the meter angle at `theta_p = 0` and checks the correlation sum
/// against both bounds: exceeding the product-form bound is the expected
/// finding, exceeding the three-term bound is a hard violation.
pub fn run_fig2(cfg: &RunConfig) -> Result<(Vec<SweepRow>, CampaignReport), HarnessError> {
    cfg.validate()?;
    require_mode(cfg, &[Mode::Fig2])?;

    let mut rows = Vec::with_capacity(cfg.grid_points as usize);
    let mut violations = Vec::new();
    let mut worst = f64::INFINITY;
    for theta3 in sweep_grid(cfg.grid_points) {
        let scenario = cnot_family_scenario(theta3, 0.0)?;
        let sample = evaluate_scenario(&scenario)?;
        let sum = sample.e_a2a3 + sample.e_b1b2;
        let bound_h = theorem2_bound(
            scenario.a(),
            scenario.b(),
            scenario.n_p(),
            MdrKind::Heisenberg,
        );
        let bound_o = theorem2_bound(scenario.a(), scenario.b(), scenario.n_p(), MdrKind::Ozawa);
        rows.push(SweepRow {
            theta3,
            theta_p: 0.0,
            e_a2a3: sample.e_a2a3,
            e_b1b2: sample.e_b1b2,
            sum,
            bound_h,
            bound_o,
        });
        worst = worst.min(bound_o - sum);
        let point = CaseRecord::SweepPoint {
            family: "fig2".into(),
            theta3,
            theta_p: 0.0,
        };
        if sum > bound_h + cfg.tol_inequality {
            violations.push(Violation {
                scenario: point.clone(),
                lhs: sum,
                bound: bound_h,
                margin: bound_h - sum,
                kind: "heisenberg".into(),
            });
        }
        if sum > bound_o + cfg.tol_inequality {
            violations.push(Violation {
                scenario: point,
                lhs: sum,
                bound: bound_o,
                margin: bound_o - sum,
                kind: "ozawa".into(),
            });
        }
    }
    let trials = rows.len() as u64;
    Ok((rows, finish_report(cfg, trials, worst, violations)))
}

/// Sweeps the meter angle and records the composite CHSH pair against the
/// monogamy bounds; also pins the analytic peak value at `theta3 = pi/8`.
pub fn run_chsh(cfg: &RunConfig) -> Result<(Vec<ChshRow>, CampaignReport), HarnessError> {
    cfg.validate()?;
    require_mode(cfg, &[Mode::Chsh])?;

    let mut rows = Vec::with_capacity(cfg.grid_points as usize);
    let mut violations = Vec::new();
    let mut worst = f64::INFINITY;
    for theta3 in sweep_grid(cfg.grid_points) {
        let scenario = cnot_family_scenario(theta3, 0.0)?;
        let sample = evaluate_scenario(&scenario)?;
        let psi123 = post_interaction_state(&scenario);
        let chsh = chsh_composite(&psi123, scenario.a(), scenario.b(), scenario.n_p())?;
        let base = SweepRow {
            theta3,
            theta_p: 0.0,
            e_a2a3: sample.e_a2a3,
            e_b1b2: sample.e_b1b2,
            sum: sample.e_a2a3 + sample.e_b1b2,
            bound_h: theorem2_bound(
                scenario.a(),
                scenario.b(),
                scenario.n_p(),
                MdrKind::Heisenberg,
            ),
            bound_o: theorem2_bound(scenario.a(), scenario.b(), scenario.n_p(), MdrKind::Ozawa),
        };
        rows.push(ChshRow {
            base,
            b12: chsh.b12,
            b23: chsh.b23,
            total: chsh.total,
        });
        worst = worst.min(chsh.bound_o - chsh.total);
        let point = CaseRecord::SweepPoint {
            family: "chsh".into(),
            theta3,
            theta_p: 0.0,
        };
        if chsh.total > chsh.bound_h + cfg.tol_inequality {
            violations.push(Violation {
                scenario: point.clone(),
                lhs: chsh.total,
                bound: chsh.bound_h,
                margin: chsh.bound_h - chsh.total,
                kind: "heisenberg".into(),
            });
        }
        if chsh.total > chsh.bound_o + cfg.tol_inequality {
            violations.push(Violation {
                scenario: point.clone(),
                lhs: chsh.total,
                bound: chsh.bound_o,
                margin: chsh.bound_o - chsh.total,
                kind: "ozawa".into(),
            });
        }
        if chsh.total > CHSH_PEAK_TOTAL + cfg.tol_identity {
            violations.push(Violation {
                scenario: point,
                lhs: chsh.total - CHSH_PEAK_TOTAL,
                bound: cfg.tol_identity,
                margin: cfg.tol_identity - (chsh.total - CHSH_PEAK_TOTAL),
                kind: KIND_IDENTITY.into(),
            });
        }
    }

    // the family's maximum is analytic; check it at the exact angle
    let (peak_total, _, _) = chsh_family_total(FRAC_PI_8)?;
    let deviation = (peak_total - CHSH_PEAK_TOTAL).abs();
    if deviation > cfg.tol_identity {
        violations.push(Violation {
            scenario: CaseRecord::SweepPoint {
                family: "chsh".into(),
                theta3: FRAC_PI_8,
                theta_p: 0.0,
            },
            lhs: deviation,
            bound: cfg.tol_identity,
            margin: cfg.tol_identity - deviation,
            kind: KIND_IDENTITY.into(),
        });
    }

    let trials = rows.len() as u64 + 1;
    Ok((rows, finish_report(cfg, trials, worst, violations)))
}

/// Randomized campaigns. Policy per mode:
///
/// * `fuzz-eq15` - the identity residual must stay below `tol_identity`;
///   the margin of a trial is minus its residual.
/// * `fuzz-thm1` / `fuzz-rs` - inequality margins must stay above
///   `-tol_inequality`.
/// * `fuzz-thm2` - both bound kinds are evaluated on a deterministic sweep
///   grid (always containing the `theta3 = pi/8`, `theta_p = 0` point) and
///   on `trials` random scenarios; product-form violations are findings,
///   three-term violations fail the campaign.
pub fn run_fuzz(cfg: &RunConfig) -> Result<CampaignReport, HarnessError> {
    cfg.validate()?;
    require_mode(
        cfg,
        &[Mode::FuzzEq15, Mode::FuzzThm1, Mode::FuzzRs, Mode::FuzzThm2],
    )?;

    let mut violations = Vec::new();
    let mut worst = f64::INFINITY;
    let mut evaluations = 0u64;

    match cfg.mode {
        Mode::FuzzEq15 => {
            for trial in 0..cfg.trials {
                let mut rng = sample::trial_rng(cfg.seed, trial);
                let scenario = sample::random_scenario(&mut rng);
                let result = evaluate_scenario(&scenario)?;
                let residual = result.identity_residual;
                worst = worst.min(-residual);
                evaluations += 1;
                if residual > cfg.tol_identity {
                    violations.push(Violation {
                        scenario: CaseRecord::from_scenario(&scenario),
                        lhs: residual,
                        bound: 0.0,
                        margin: -residual,
                        kind: KIND_IDENTITY.into(),
                    });
                }
            }
        }
        Mode::FuzzThm1 => {
            for trial in 0..cfg.trials {
                let mut rng = sample::trial_rng(cfg.seed, trial);
                let psi = sample::pure_state(2, &mut rng);
                let (a, b) = sample::axis_pair(&mut rng);
                let n_p = sample::unit_axis(&mut rng);
                let report = theorem1_check(&psi, a, b, n_p)?;
                worst = worst.min(report.margin);
                evaluations += 1;
                if report.margin < -cfg.tol_inequality {
                    violations.push(Violation {
                        scenario: CaseRecord::from_params(&report.params),
                        lhs: report.lhs,
                        bound: report.bound,
                        margin: report.margin,
                        kind: report.kind.as_str().into(),
                    });
                }
            }
        }
        Mode::FuzzRs => {
            for trial in 0..cfg.trials {
                let mut rng = sample::trial_rng(cfg.seed, trial);
                let psi = sample::pure_state(1, &mut rng);
                let (a, b) = sample::axis_pair(&mut rng);
                let report = rs_check(&psi, a, b)?;
                worst = worst.min(report.margin);
                evaluations += 1;
                if report.margin < -cfg.tol_inequality {
                    violations.push(Violation {
                        scenario: CaseRecord::from_params(&report.params),
                        lhs: report.lhs,
                        bound: report.bound,
                        margin: report.margin,
                        kind: report.kind.as_str().into(),
                    });
                }
            }
        }
        Mode::FuzzThm2 => {
            let grid = sweep_grid(cfg.grid_points);
            let mut points: Vec<(f64, f64)> = Vec::new();
            for &theta3 in &grid {
                for &theta_p in &grid {
                    points.push((theta3, theta_p));
                }
            }
            if !points
                .iter()
                .any(|&(t3, tp)| (t3 - FRAC_PI_8).abs() < 1e-15 && tp == 0.0)
            {
                points.push((FRAC_PI_8, 0.0));
            }
            for (theta3, theta_p) in points {
                let scenario = cnot_family_scenario(theta3, theta_p)?;
                check_both_kinds(&scenario, cfg, &mut worst, &mut violations)?;
                evaluations += 1;
            }
            for trial in 0..cfg.trials {
                let mut rng = sample::trial_rng(cfg.seed, trial);
                let scenario = sample::random_scenario(&mut rng);
                check_both_kinds(&scenario, cfg, &mut worst, &mut violations)?;
                evaluations += 1;
            }
        }
        _ => unreachable!("mode gate above"),
    }

    Ok(finish_report(cfg, evaluations, worst, violations))
}

fn check_both_kinds(
    scenario: &Scenario<f64>,
    cfg: &RunConfig,
    worst: &mut f64,
    violations: &mut Vec<Violation>,
) -> Result<(), HarnessError> {
    let sample = evaluate_scenario(scenario)?;
    for kind in [MdrKind::Heisenberg, MdrKind::Ozawa] {
        let report = theorem2_check(&sample, scenario, kind)?;
        if kind == MdrKind::Ozawa {
            *worst = worst.min(report.margin);
        }
        if report.margin < -cfg.tol_inequality {
            violations.push(Violation {
                scenario: CaseRecord::from_scenario(scenario),
                lhs: report.lhs,
                bound: report.bound,
                margin: report.margin,
                kind: report.kind.as_str().into(),
            });
        }
    }
    Ok(())
}

const VERTEX_C_VALUES: [f64; 4] = [0.1, 0.5, 1.0, 2.0];
const VERTEX_D_VALUES: [f64; 5] = [0.25, 0.5, 1.0, 1.5, 2.0];

/// Evaluates the vertex radius over a `(d_a, d_b, c)` grid plus the
/// symmetric locus `d_a = d_b = sqrt(c)`, confirming the analytic values
/// where they exist and emitting the whole surface.
pub fn run_vertex(cfg: &RunConfig) -> Result<(Vec<VertexRow>, CampaignReport), HarnessError> {
    cfg.validate()?;
    require_mode(cfg, &[Mode::Vertex])?;

    let mut state = VertexState {
        rows: Vec::new(),
        violations: Vec::new(),
        worst: f64::INFINITY,
    };

    for &c in &VERTEX_C_VALUES {
        for &d_a in &VERTEX_D_VALUES {
            for &d_b in &VERTEX_D_VALUES {
                let hyperbola_vertex = Some((2.0 * c, VERTEX_TOL_HYPERBOLA));
                vertex_cell(
                    &mut state,
                    d_a,
                    d_b,
                    c,
                    MdrKind::Heisenberg,
                    hyperbola_vertex,
                    true,
                )?;
                vertex_cell(&mut state, d_a, d_b, c, MdrKind::Ozawa, None, true)?;
            }
        }
        // symmetric locus: the displaced curve's vertex has a closed form
        let d = c.sqrt();
        let on_grid = VERTEX_D_VALUES.iter().any(|&v| (v - d).abs() < 1e-12);
        let expected = (2.0 - SQRT_2) * (2.0 - SQRT_2) * c;
        let check = Some((expected, VERTEX_TOL_SYMMETRIC));
        vertex_cell(&mut state, d, d, c, MdrKind::Ozawa, check, !on_grid)?;
    }

    let trials = state.rows.len() as u64;
    Ok((
        state.rows,
        finish_report(cfg, trials, state.worst, state.violations),
    ))
}

struct VertexState {
    rows: Vec<VertexRow>,
    violations: Vec<Violation>,
    worst: f64,
}

fn vertex_cell(
    state: &mut VertexState,
    d_a: f64,
    d_b: f64,
    c: f64,
    kind: MdrKind,
    check: Option<(f64, f64)>, // (expected radius, tolerance)
    emit_row: bool,
) -> Result<(), HarnessError> {
    match vertex_min_radius(d_a, d_b, c, kind) {
        Ok(radius) => {
            if emit_row {
                state.rows.push(VertexRow {
                    d_a,
                    d_b,
                    c,
                    kind,
                    radius,
                });
            }
            if let Some((expected, tol)) = check {
                let deviation = (radius - expected).abs();
                state.worst = state.worst.min(tol - deviation);
                if deviation > tol {
                    state.violations.push(Violation {
                        scenario: CaseRecord::VertexCell {
                            d_a,
                            d_b,
                            c,
                            kind: kind.as_str().into(),
                            expected,
                        },
                        lhs: deviation,
                        bound: tol,
                        margin: tol - deviation,
                        kind: KIND_VERTEX.into(),
                    });
                }
            }
            Ok(())
        }
        // non-convergence is reported per cell, not propagated
        Err(Error::NoConvergence { width, .. }) => {
            let (expected, tol) = check.unwrap_or((0.0, VERTEX_TOL_SYMMETRIC));
            state.violations.push(Violation {
                scenario: CaseRecord::VertexCell {
                    d_a,
                    d_b,
                    c,
                    kind: kind.as_str().into(),
                    expected,
                },
                lhs: width,
                bound: tol,
                margin: tol - width,
                kind: KIND_VERTEX.into(),
            });
            Ok(())
        }
        Err(other) => Err(other.into()),
    }
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV for the meter-angle sweep; header is part of the file contract.
pub fn fig2_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("theta3,theta_p,E_A2A3,E_B1B2,sum,bound_h,bound_o\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            fmt17(r.theta3),
            fmt17(r.theta_p),
            fmt17(r.e_a2a3),
            fmt17(r.e_b1b2),
            fmt17(r.sum),
            fmt17(r.bound_h),
            fmt17(r.bound_o),
        ));
    }
    out
}

/// CSV for the composite CHSH sweep; appends the pair columns to the sweep
/// schema.
pub fn chsh_csv(rows: &[ChshRow]) -> String {
    let mut out = String::from("theta3,theta_p,E_A2A3,E_B1B2,sum,bound_h,bound_o,B12,B23,total\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            fmt17(r.base.theta3),
            fmt17(r.base.theta_p),
            fmt17(r.base.e_a2a3),
            fmt17(r.base.e_b1b2),
            fmt17(r.base.sum),
            fmt17(r.base.bound_h),
            fmt17(r.base.bound_o),
            fmt17(r.b12),
            fmt17(r.b23),
            fmt17(r.total),
        ));
    }
    out
}

/// CSV for the vertex radius surface.
pub fn vertex_csv(rows: &[VertexRow]) -> String {
    let mut out = String::from("dA,dB,c,kind,radius\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt17(r.d_a),
            fmt17(r.d_b),
            fmt17(r.c),
            r.kind.as_str(),
            fmt17(r.radius),
        ));
    }
    out
}

fn write_file(path: &str, contents: &str) -> Result<(), HarnessError> {
    fs::write(path, contents).map_err(|source| HarnessError::Io {
        path: path.to_string(),
        source,
    })
}

/// Runs the configured campaign and writes the requested artifacts. Fuzz
/// modes produce no CSV; a configured `out_csv` is ignored for them.
pub fn execute(cfg: &RunConfig) -> Result<CampaignReport, HarnessError> {
    cfg.validate()?;
    let (csv, report) = match cfg.mode {
        Mode::Fig2 => {
            let (rows, report) = run_fig2(cfg)?;
            (Some(fig2_csv(&rows)), report)
        }
        Mode::Chsh => {
            let (rows, report) = run_chsh(cfg)?;
            (Some(chsh_csv(&rows)), report)
        }
        Mode::Vertex => {
            let (rows, report) = run_vertex(cfg)?;
            (Some(vertex_csv(&rows)), report)
        }
        Mode::FuzzEq15 | Mode::FuzzThm1 | Mode::FuzzRs | Mode::FuzzThm2 => (None, run_fuzz(cfg)?),
    };
    if !cfg.out_csv.is_empty() {
        if let Some(text) = &csv {
            write_file(&cfg.out_csv, text)?;
        }
    }
    if !cfg.out_json.is_empty() {
        write_file(&cfg.out_json, &report.to_json_string()?)?;
    }
    Ok(report)
}
