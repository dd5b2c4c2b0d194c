use std::f64::consts::PI;

use feynman_clock::adiabatic::{fit_gap_minima, gap_scan, GapScaling};
use feynman_clock::asymptotics::{
    asymptotic_report, integral_coefficients, REFERENCE_ANALYTIC_COEFFICIENT, REFERENCE_FIT_COEFFICIENT,
    REFERENCE_SPACING_COEFFICIENT,
};
use feynman_clock::clock::probability_series;
use feynman_clock::gates::{evolve, verify_structure};
use feynman_clock::io::{
    load_gate_file, read_sweep_csv, write_curve_csv, write_gap_csv, write_gap_summary_csv, write_sweep_csv,
};
use feynman_clock::numerics::{FitKind, FitResult};
use feynman_clock::peaks::{
    analyze_peaks, find_first_maximum, fit_gap_spacing_scaling, fit_probability_scaling, fit_runtime_scaling,
    fit_tau_scaling, runtime_estimate, PeakReport, SweepTable,
};
use feynman_clock::random::{seeded, uniform};
use feynman_clock::tolerance;
use feynman_clock::verification::{run_verification, Level, SuiteResult};
use feynman_clock::{AsymptoticReport64, GapScan64};
use rayon::prelude::*;
use serde::Serialize;

use crate::cli::Law;
use crate::config::ExperimentConfig;
use crate::output::{report_failures, write_document, write_sidecar, write_svg, write_with, Failure, Metadata};
use crate::svg::{Plot, Series, Style};
use crate::CliError;

/// Run `f` for every `k`, keeping input order and splitting off failures.
fn per_k<R: Send>(ks: &[usize], f: impl Fn(usize) -> feynman_clock::Result<R> + Sync) -> (Vec<R>, Vec<Failure>) {
    let results: Vec<_> = ks.par_iter().map(|&k| (k, f(k))).collect();
    let mut ok = Vec::new();
    let mut failures = Vec::new();
    for (k, r) in results {
        match r {
            Ok(v) => ok.push(v),
            Err(e) => failures.push(Failure { k, error: e.to_string() }),
        }
    }
    (ok, failures)
}

fn finish(failures: &[Failure]) -> Result<(), CliError> {
    report_failures(failures);
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(failures.len()))
    }
}

fn plot(title: &str, x: &str, y: &str, log: bool, series: Vec<Series>) -> Plot {
    Plot {
        title: title.to_owned(),
        x_label: x.to_owned(),
        y_label: y.to_owned(),
        log_x: log,
        log_y: log,
        series,
        metadata: String::new(),
    }
}

/// Dense samples of a fitted law across `[lo, hi]`, log-spaced for power laws.
fn fit_curve(fit: &FitResult<f64>, lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let n = 64;
    (0..=n)
        .map(|i| {
            let u = i as f64 / n as f64;
            let x = match fit.kind {
                FitKind::PowerLaw => lo * (hi / lo).powf(u),
                _ => lo + (hi - lo) * u,
            };
            (x, fit.predict(x))
        })
        .collect()
}

fn describe(fit: &FitResult<f64>) -> String {
    match fit.kind {
        FitKind::PowerLaw => format!("fit {:.4}·k^{:.4}", fit.coefficient, fit.exponent),
        _ => format!("fit {:.4} + {:.4}·k", fit.intercept, fit.slope()),
    }
}

pub fn pk_curve(cfg: &ExperimentConfig) -> Result<(), CliError> {
    let k = cfg.k[0];
    let (lo, hi, n) = (cfg.t_min.unwrap(), cfg.t_max.unwrap(), cfg.points.unwrap());
    let grid: Vec<f64> =
        (0..n).map(|i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 }).collect();
    let series = probability_series(k, &grid)?;
    write_with(&cfg.out, |w| write_curve_csv(&series, w))?;
    write_sidecar(cfg, &[])?;

    let (t_best, p_best) = series
        .times
        .iter()
        .zip(&series.probabilities)
        .fold((lo, f64::NEG_INFINITY), |b, (&t, &p)| if p > b.1 { (t, p) } else { b });
    println!("k={k}: grid maximum P={p_best:.10} at t={t_best:.6}");
    if let Ok((tau, p)) = find_first_maximum::<f64>(k) {
        println!("k={k}: first maximum P={p:.10} at t={tau:.9}");
    }

    if cfg.svg {
        let pts = series.times.iter().copied().zip(series.probabilities.iter().copied()).collect();
        let s = Series { name: format!("P_{k}(t)"), points: pts, style: Style::Line };
        write_svg(cfg, &[], plot(&format!("Success probability, k = {k}"), "t", "P_k(t)", false, vec![s]))?;
    }
    Ok(())
}

pub fn sweep(cfg: &ExperimentConfig) -> Result<(), CliError> {
    let (rows, failures) = per_k(&cfg.k, |k| analyze_peaks::<f64>(k, &cfg.peak));
    let json = cfg.out.extension().is_some_and(|e| e == "json");
    if json {
        let table = SweepTable { rows: rows.clone(), provenance: cfg.peak };
        write_document(&cfg.out, Metadata::new(cfg, &failures), &table)?;
    } else {
        write_with(&cfg.out, |w| write_sweep_csv(&rows, w))?;
        write_sidecar(cfg, &failures)?;
    }
    for r in &rows {
        println!("k={:>6} tau1={:.6} P1={:.8e} tau2={:.6} dtau={:.6}", r.k, r.tau1, r.p1, r.tau2, r.delta_tau);
    }

    if cfg.svg {
        let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.k as f64, r.p1)).collect();
        let mut series = vec![Series { name: "P_k(tau1)".into(), points: pts, style: Style::Markers }];
        if let Ok(table) = SweepTable::from_rows(rows.clone(), cfg.peak) {
            if let Ok(fit) = fit_probability_scaling(&table) {
                let (lo, hi) = (rows[0].k as f64, rows[rows.len() - 1].k as f64);
                series.push(Series { name: describe(&fit), points: fit_curve(&fit, lo, hi), style: Style::Dashed });
            }
        }
        write_svg(cfg, &failures, plot("Peak height", "k", "P_k(tau1)", true, series))?;
    }
    finish(&failures)
}

#[derive(Serialize)]
struct Reference {
    coefficient: Option<f64>,
    exponent: Option<f64>,
    slope: Option<f64>,
    intercept: Option<f64>,
}

#[derive(Serialize)]
struct FitOutput {
    law: Law,
    fit: FitResult<f64>,
    reference: Reference,
}

fn law_values(law: Law, rows: &[PeakReport<f64>]) -> Vec<f64> {
    rows.iter()
        .map(|r| match law {
            Law::Tau => r.tau1,
            Law::Prob => r.p1,
            Law::Spacing => r.delta_tau,
            Law::Runtime => runtime_estimate(r).total_time,
        })
        .collect()
}

pub fn fit(cfg: &ExperimentConfig) -> Result<(), CliError> {
    let path = cfg.sweep_file.as_ref().unwrap();
    let file = std::fs::File::open(path).map_err(|e| CliError::io(path, e))?;
    let rows = read_sweep_csv(std::io::BufReader::new(file))?;
    let table = SweepTable::from_rows(rows, cfg.peak)?;
    let law = cfg.law.unwrap();
    let (fit, reference) = match law {
        Law::Tau => (
            fit_tau_scaling(&table)?,
            Reference { coefficient: None, exponent: None, slope: Some(0.5), intercept: Some(2.37) },
        ),
        Law::Prob => (
            fit_probability_scaling(&table)?,
            Reference {
                coefficient: Some(REFERENCE_FIT_COEFFICIENT),
                exponent: Some(-2.0 / 3.0),
                slope: None,
                intercept: None,
            },
        ),
        Law::Spacing => (
            fit_gap_spacing_scaling(&table)?,
            Reference {
                coefficient: Some(REFERENCE_SPACING_COEFFICIENT),
                exponent: Some(1.0 / 3.0),
                slope: None,
                intercept: None,
            },
        ),
        Law::Runtime => (
            fit_runtime_scaling(&table)?,
            Reference { coefficient: None, exponent: Some(5.0 / 3.0), slope: None, intercept: None },
        ),
    };
    println!("{law:?}: {} (r2 = {:.6}, {} points)", describe(&fit), fit.r_squared, fit.points);
    if cfg.svg {
        let ys = law_values(law, &table.rows);
        let pts: Vec<(f64, f64)> = table.rows.iter().zip(&ys).map(|(r, &y)| (r.k as f64, y)).collect();
        let (lo, hi) = pts.iter().fold((f64::INFINITY, 0.0f64), |(a, b), p| (a.min(p.0), b.max(p.0)));
        let series = vec![
            Series { name: "sweep".into(), points: pts, style: Style::Markers },
            Series { name: describe(&fit), points: fit_curve(&fit, lo, hi), style: Style::Dashed },
        ];
        let log = fit.kind == FitKind::PowerLaw;
        write_svg(cfg, &[], plot(&format!("{law:?} scaling"), "k", &format!("{law:?}"), log, series))?;
    }
    write_document(&cfg.out, Metadata::new(cfg, &[]), FitOutput { law, fit, reference })
}

#[derive(Serialize)]
struct GapRow {
    k: usize,
    s_min: f64,
    gap_min: f64,
    gap_min_k2: f64,
    above_lower_bound: bool,
}

#[derive(Serialize)]
struct GapOutput {
    lower_bound_coefficient: f64,
    rows: Vec<GapRow>,
    scaling: Option<GapScaling<f64>>,
}

pub fn gap(cfg: &ExperimentConfig) -> Result<(), CliError> {
    let grid = cfg.grid_size.unwrap();
    let (scans, failures): (Vec<GapScan64>, _) = per_k(&cfg.k, |k| gap_scan(k, grid));
    write_with(&cfg.out, |w| write_gap_summary_csv(&scans, w))?;
    for scan in &scans {
        let path = cfg.sibling_suffixed(&format!("_k{}", scan.k), "csv");
        write_with(&path, |w| write_gap_csv(scan, w))?;
    }
    let ks: Vec<f64> = scans.iter().map(|s| s.k as f64).collect();
    let gaps: Vec<f64> = scans.iter().map(|s| s.gap_min).collect();
    let scaling = fit_gap_minima(&ks, &gaps).ok();
    let rows = scans
        .iter()
        .map(|s| GapRow {
            k: s.k,
            s_min: s.s_min,
            gap_min: s.gap_min,
            gap_min_k2: s.scaled_gap(),
            above_lower_bound: s.satisfies_lower_bound(0.0),
        })
        .collect::<Vec<_>>();
    for r in &rows {
        println!("k={:>6} s_min={:.6} gap_min={:.6e} gap_min*k^2={:.4}", r.k, r.s_min, r.gap_min, r.gap_min_k2);
    }
    if let Some(sc) = &scaling {
        println!(
            "{} runtime exponent {:.4} (cubic criterion {:.4})",
            describe(&sc.fit),
            sc.runtime_exponent,
            sc.runtime_exponent_cubic
        );
    }

    if cfg.svg && !scans.is_empty() {
        let (lo, hi) = (ks[0], ks[ks.len() - 1]);
        let mut series = vec![Series {
            name: "gap_min".into(),
            points: ks.iter().copied().zip(gaps.iter().copied()).collect(),
            style: Style::Markers,
        }];
        if let Some(sc) = &scaling {
            series.push(Series { name: describe(&sc.fit), points: fit_curve(&sc.fit, lo, hi), style: Style::Dashed });
        }
        let bound = fit_curve(
            &FitResult {
                kind: FitKind::PowerLaw,
                exponent: -2.0,
                coefficient: PI * PI / 8.0,
                intercept: 0.0,
                r_squared: 1.0,
                residual_max: 0.0,
                points: 0,
            },
            lo,
            hi,
        );
        series.push(Series { name: "pi^2/(8k^2)".into(), points: bound, style: Style::Line });
        write_svg(cfg, &failures, plot("Minimum adiabatic gap", "k", "gap_min", true, series))?;
    }
    let out = GapOutput { lower_bound_coefficient: PI * PI / 8.0, rows, scaling };
    write_document(&cfg.sibling("json"), Metadata::new(cfg, &failures), out)?;
    finish(&failures)
}

#[derive(Serialize)]
struct AsymptoticsOutput {
    integral_amplitude_coefficient: f64,
    integral_coefficient: f64,
    reference_analytic_coefficient: f64,
    reference_fit_coefficient: f64,
    rows: Vec<AsymptoticReport64>,
}

pub fn asymptotics(cfg: &ExperimentConfig) -> Result<(), CliError> {
    let (rows, failures) = per_k(&cfg.k, |k| asymptotic_report::<f64>(k, &cfg.peak));
    let (amp, coeff) = integral_coefficients::<f64>();
    for r in &rows {
        let sum = r.p_tau_sum.map_or("-".to_owned(), |p| format!("{p:.6e}"));
        println!(
            "k={:>6} P(tau1)={:.6e} P((k+1)/2)={:.6e} sum={sum} integral={:.6e} dtau={:.4}/{:.4}",
            r.k, r.p_tau_numeric, r.p_half_chain, r.p_tau_integral, r.delta_numeric, r.delta_predicted
        );
    }
    println!(
        "k^(-2/3) coefficient: integral {coeff:.4}, reference analytic {REFERENCE_ANALYTIC_COEFFICIENT}, reference fit {REFERENCE_FIT_COEFFICIENT}"
    );
    if cfg.svg {
        let pick = |f: fn(&AsymptoticReport64) -> Option<f64>| -> Vec<(f64, f64)> {
            rows.iter().filter_map(|r| Some((r.k as f64, f(r)?))).collect()
        };
        let series = vec![
            Series { name: "exact P(tau1)".into(), points: pick(|r| Some(r.p_tau_numeric)), style: Style::Markers },
            Series { name: "cosine sum".into(), points: pick(|r| r.p_tau_sum), style: Style::Line },
            Series { name: "integral".into(), points: pick(|r| Some(r.p_tau_integral)), style: Style::Dashed },
        ];
        write_svg(cfg, &failures, plot("Peak height approximations", "k", "P", true, series))?;
    }
    let out = AsymptoticsOutput {
        integral_amplitude_coefficient: amp,
        integral_coefficient: coeff,
        reference_analytic_coefficient: REFERENCE_ANALYTIC_COEFFICIENT,
        reference_fit_coefficient: REFERENCE_FIT_COEFFICIENT,
        rows,
    };
    write_document(&cfg.out, Metadata::new(cfg, &failures), out)?;
    finish(&failures)
}

/// Structure check of a user-supplied gate sequence at a few seeded times.
fn gate_file_suite(cfg: &ExperimentConfig) -> Result<Option<SuiteResult>, CliError> {
    let Some(path) = &cfg.gates else { return Ok(None) };
    let seq = load_gate_file::<f64>(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let mut rng = seeded(cfg.seed);
    let mut worst = 0.0f64;
    let times = 5;
    for _ in 0..times {
        let t = uniform(&mut rng, 0.0, 2.0 * (seq.k() + 2) as f64);
        let rep = verify_structure(&evolve(&seq, t)?, &seq, tolerance::STRUCTURE)?;
        worst = worst.max(rep.max_residual);
    }
    Ok(Some(SuiteResult {
        name: "gate_file_structure",
        checks: times,
        max_residual: worst,
        tolerance: tolerance::STRUCTURE,
        passed: worst <= tolerance::STRUCTURE,
    }))
}

pub fn verify(cfg: &ExperimentConfig) -> Result<(), CliError> {
    let extra = gate_file_suite(cfg)?;
    let mut report = run_verification(cfg.level.unwrap_or(Level::Quick), cfg.seed)?;
    if let Some(s) = extra {
        report.passed &= s.passed;
        report.suites.push(s);
    }
    for s in &report.suites {
        println!(
            "[{}] {:<24} checks={:<5} max residual={:.3e} tol={:.0e}",
            if s.passed { "PASS" } else { "FAIL" },
            s.name,
            s.checks,
            s.max_residual,
            s.tolerance
        );
    }
    let failures: Vec<Failure> = Vec::new();
    if cfg.svg {
        let pts = report.suites.iter().enumerate().map(|(i, s)| ((i + 1) as f64, s.max_residual.max(1e-18))).collect();
        let tol = report.suites.iter().enumerate().map(|(i, s)| ((i + 1) as f64, s.tolerance)).collect();
        let series = vec![
            Series { name: "max residual".into(), points: pts, style: Style::Markers },
            Series { name: "tolerance".into(), points: tol, style: Style::Line },
        ];
        let mut p = plot("Verification residuals", "suite", "residual", false, series);
        p.log_y = true;
        write_svg(cfg, &failures, p)?;
    }
    write_document(&cfg.out, Metadata::new(cfg, &failures), &report)?;
    if report.passed {
        Ok(())
    } else {
        let failed = report.suites.iter().filter(|s| !s.passed).count();
        for s in report.suites.iter().filter(|s| !s.passed) {
            eprintln!("error: suite {} residual {:e} exceeds {:e}", s.name, s.max_residual, s.tolerance);
        }
        Err(CliError::Failed(failed))
    }
}
