//! Self-check suites: closed form against dense exponentials, block
//! structure, unitarity, normalization, and number conservation.

use serde::{Deserialize, Serialize};

use crate::clock::{build_clock_matrix, ClockSpectrum};
use crate::error::Result;
use crate::gates::{
    build_full_clock_hamiltonian, coefficient_modulus_deviation, k2_closed_form, number_conservation_residual,
    number_operator_diagonal, GatePropagator, UnitarySequence,
};
use crate::numerics::{matrix_exponential, ComplexMatrix};
use crate::random::{seeded, uniform, SeededRng};
use crate::tolerance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Quick,
    Full,
}

#[derive(Clone, Copy, Debug)]
struct Plan {
    oracle_max_k: usize,
    oracle_times: usize,
    structure_max_k: usize,
    sequences: usize,
    structure_times: usize,
    normalization_max_k: usize,
    conservation_max_k: usize,
}

impl Level {
    fn plan(self) -> Plan {
        match self {
            Level::Quick => Plan {
                oracle_max_k: 8,
                oracle_times: 5,
                structure_max_k: 4,
                sequences: 2,
                structure_times: 2,
                normalization_max_k: 50,
                conservation_max_k: 4,
            },
            Level::Full => Plan {
                oracle_max_k: 12,
                oracle_times: 20,
                structure_max_k: 8,
                sequences: 5,
                structure_times: 5,
                normalization_max_k: 200,
                conservation_max_k: 6,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl SuiteResult {
    fn new(name: &'static str, checks: usize, max_residual: f64, tolerance: f64) -> Self {
        Self { name, checks, max_residual, tolerance, passed: max_residual <= tolerance }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub level: Level,
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
    pub passed: bool,
}

pub fn run_verification(level: Level, seed: u64) -> Result<VerificationReport> {
    let plan = level.plan();
    let mut rng = seeded(seed);
    let mut suites = vec![oracle_suite(&plan, &mut rng)?];
    suites.extend(structure_suites(&plan, &mut rng)?);
    suites.push(normalization_suite(&plan, &mut rng)?);
    suites.push(conservation_suite(&plan, &mut rng)?);
    suites.push(closed_form_suite(&mut rng)?);
    let passed = suites.iter().all(|s| s.passed);
    Ok(VerificationReport { level, seed, suites, passed })
}

/// Closed-form `P_k(t)` against the dense exponential of the clock matrix.
fn oracle_suite(plan: &Plan, rng: &mut SeededRng) -> Result<SuiteResult> {
    let mut worst = 0.0f64;
    let mut checks = 0;
    for k in 2..=plan.oracle_max_k {
        let m = build_clock_matrix::<f64>(k)?;
        let dense = ComplexMatrix::from_real(k + 1, k + 1, |i, j| m.get(i, j));
        let spec = ClockSpectrum::<f64>::new(k)?;
        for _ in 0..plan.oracle_times {
            let t = uniform(rng, 0.0, 2.0 * (k + 2) as f64);
            let g = matrix_exponential(&dense, t)?;
            worst = worst.max((spec.success_probability(t) - g[(k, 0)].norm_sqr()).abs());
            checks += 1;
        }
    }
    Ok(SuiteResult::new("closed_form_vs_dense", checks, worst, tolerance::ORACLE))
}

/// Block structure, gate independence, and propagator unitarity.
fn structure_suites(plan: &Plan, rng: &mut SeededRng) -> Result<[SuiteResult; 3]> {
    let (mut residual, mut independence, mut unitarity) = (0.0f64, 0.0f64, 0.0f64);
    let mut checks = 0;
    for k in 2..=plan.structure_max_k {
        for n in 1..=2 {
            let props = (0..plan.sequences)
                .map(|_| GatePropagator::new(&UnitarySequence::random(n, k, rng)?))
                .collect::<Result<Vec<_>>>()?;
            for _ in 0..plan.structure_times {
                let t = uniform(rng, 0.0, 2.0 * k as f64);
                let evs: Vec<_> = props.iter().map(|p| p.evolve(t)).collect();
                for (p, ev) in props.iter().zip(&evs) {
                    let seq = p.sequence();
                    for i in 0..=k {
                        for j in 0..=k {
                            let predicted = seq.string(i, j).scale(ev.clock_coeffs[(i, j)]);
                            residual = residual.max(ev.block(i, j).max_abs_diff(&predicted));
                        }
                    }
                    unitarity = unitarity.max(ev.assemble().unitary_deviation());
                    independence =
                        independence.max(coefficient_modulus_deviation(&ev.clock_coeffs, &evs[0].clock_coeffs));
                    checks += 1;
                }
            }
        }
    }
    Ok([
        SuiteResult::new("block_structure", checks, residual, tolerance::STRUCTURE),
        SuiteResult::new("gate_independence", checks, independence, tolerance::STRUCTURE),
        SuiteResult::new("propagator_unitarity", checks, unitarity, tolerance::PROPAGATOR_UNITARY),
    ])
}

/// `Σ_j |a_j0(t)|² = 1`.
fn normalization_suite(plan: &Plan, rng: &mut SeededRng) -> Result<SuiteResult> {
    let mut worst = 0.0f64;
    let mut checks = 0;
    let mut k = 1;
    while k <= plan.normalization_max_k {
        let spec = ClockSpectrum::<f64>::new(k)?;
        for _ in 0..3 {
            let t = uniform(rng, 0.0, 2.0 * (k + 2) as f64);
            let total = (0..=k).map(|j| spec.amplitude(j, 0, t).map(|a| a.norm_sqr())).sum::<Result<f64>>()?;
            worst = worst.max((total - 1.0).abs());
            checks += 1;
        }
        k = if k < 16 { k + 1 } else { (k * 3 / 2).min(plan.normalization_max_k.max(k + 1)) };
    }
    Ok(SuiteResult::new("normalization", checks, worst, tolerance::NORMALIZATION))
}

/// `[H_full, N] = 0` on the full occupation space.
fn conservation_suite(plan: &Plan, rng: &mut SeededRng) -> Result<SuiteResult> {
    let mut worst = 0.0f64;
    let mut checks = 0;
    for k in 1..=plan.conservation_max_k {
        let seq = UnitarySequence::<f64>::random(1, k, rng)?;
        let h = build_full_clock_hamiltonian(&seq)?;
        worst = worst.max(number_conservation_residual(&h, &number_operator_diagonal(k, 1)));
        checks += 1;
    }
    Ok(SuiteResult::new("number_conservation", checks, worst, tolerance::CONSERVATION))
}

/// Two-gate closed form against the dense propagator.
fn closed_form_suite(rng: &mut SeededRng) -> Result<SuiteResult> {
    let mut worst = 0.0f64;
    let seq = UnitarySequence::<f64>::random(1, 2, rng)?;
    let prop = GatePropagator::new(&seq)?;
    for _ in 0..10 {
        let t = uniform(rng, 0.0, 10.0);
        let g = k2_closed_form(seq.gate(1), seq.gate(2), t)?;
        worst = worst.max(g.max_abs_diff(&prop.propagator(t)));
    }
    Ok(SuiteResult::new("two_gate_closed_form", 10, worst, tolerance::ORACLE))
}
