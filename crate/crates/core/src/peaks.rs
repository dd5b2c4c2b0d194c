//! First and second maxima of `P_k(t)`, k-sweeps, and the scaling fits
//! built on top of them.
//!
//! A maximum is located by a coarse forward scan with step
//! `h = max(0.05·(k+2)^{1/3}, 0.01)`, which puts about twenty samples on each
//! post-peak oscillation, followed by golden-section refinement on the two
//! grid cells around the first strict grid maximum `P[i−1] < P[i] > P[i+1]`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clock::ClockSpectrum;
use crate::error::{Error, Result};
use crate::numerics::optimize::golden_max;
use crate::numerics::{fit_affine, fit_power_law, FitResult};
use crate::scalar::Real;
use crate::tolerance;

/// Search parameters. The defaults are the values every reported number
/// was produced with.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PeakConfig {
    /// `h = coarse_factor·(k+2)^{1/3}` before clamping to `min_step`.
    pub coarse_factor: f64,
    pub min_step: f64,
    /// Golden-section bracket width, relative to `k+2`.
    pub refine_rel: f64,
    /// Grid maxima at or below this probability are ignored.
    pub noise_floor: f64,
    /// Chains shorter than this search `[0, 2(k+2)]`.
    pub small_chain: usize,
}

impl Default for PeakConfig {
    fn default() -> Self {
        Self {
            coarse_factor: tolerance::COARSE_STEP_FACTOR,
            min_step: tolerance::MIN_COARSE_STEP,
            refine_rel: tolerance::PEAK_REFINE_REL,
            noise_floor: tolerance::PEAK_NOISE_FLOOR,
            small_chain: tolerance::SMALL_CHAIN,
        }
    }
}

impl PeakConfig {
    pub fn coarse_step<T: Real>(&self, k: usize) -> T {
        (T::lit(self.coarse_factor) * T::count(k + 2).cbrt()).max(T::lit(self.min_step))
    }

    /// `[lo, hi]` for the first-maximum scan.
    pub fn first_window<T: Real>(&self, k: usize) -> (T, T) {
        let len = T::count(k + 2);
        if k < self.small_chain {
            (T::zero(), T::lit(2.0) * len)
        } else {
            (T::lit(0.3) * len, T::lit(0.7) * len)
        }
    }

    /// End of the second-maximum scan.
    pub fn second_horizon<T: Real>(&self, k: usize, tau1: T) -> T {
        let len = T::count(k + 2);
        tau1 + T::lit(2.0) * len + T::lit(40.0) * len.cbrt()
    }
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidGateCount { k, reason: "peak analysis needs k >= 2" });
    }
    Ok(())
}

/// Scan `t = lo + i·h` up to `hi`; refine the first strict grid maximum above
/// the noise floor, skipping `t = lo` itself as a candidate.
fn scan_for_maximum<T: Real>(
    spec: &ClockSpectrum<T>,
    lo: T,
    hi: T,
    cfg: &PeakConfig,
    what: &'static str,
) -> Result<(T, T)> {
    let k = spec.k();
    let h: T = cfg.coarse_step(k);
    let floor = T::lit(cfg.noise_floor);
    let p = |t: T| spec.success_probability(t);
    let at = |i: usize| lo + h * T::count(i);

    let mut prev = p(at(0));
    let mut cur = p(at(1));
    let mut i = 1usize;
    while at(i + 1) <= hi {
        let next = p(at(i + 1));
        if prev < cur && cur > next && cur > floor {
            let (a, b) = (at(i - 1), at(i + 1));
            let tol = T::lit(cfg.refine_rel) * T::count(k + 2);
            let (t_ref, p_ref) = golden_max(p, a, b, tol);
            return Ok(if p_ref >= cur { (t_ref, p_ref) } else { (at(i), cur) });
        }
        prev = cur;
        cur = next;
        i += 1;
    }
    Err(Error::SearchFailure { k, what, lo: lo.as_f64(), hi: hi.as_f64() })
}

pub fn find_first_maximum_in<T: Real>(spec: &ClockSpectrum<T>, cfg: &PeakConfig) -> Result<(T, T)> {
    check_k(spec.k())?;
    let (lo, hi) = cfg.first_window(spec.k());
    scan_for_maximum(spec, lo, hi, cfg, "first local maximum")
}

pub fn find_second_maximum_in<T: Real>(spec: &ClockSpectrum<T>, tau1: T, cfg: &PeakConfig) -> Result<(T, T)> {
    check_k(spec.k())?;
    let hi = cfg.second_horizon(spec.k(), tau1);
    scan_for_maximum(spec, tau1, hi, cfg, "second local maximum")
}

/// `(τ₁, P_k(τ₁))` with the default configuration.
pub fn find_first_maximum<T: Real>(k: usize) -> Result<(T, T)> {
    check_k(k)?;
    find_first_maximum_in(&ClockSpectrum::new(k)?, &PeakConfig::default())
}

/// `(τ₂, P_k(τ₂))`, the next local maximum strictly after `tau1`.
pub fn find_second_maximum<T: Real>(k: usize, tau1: T) -> Result<(T, T)> {
    check_k(k)?;
    find_second_maximum_in(&ClockSpectrum::new(k)?, tau1, &PeakConfig::default())
}

/// First two maxima of `P_k(t)` for one chain length.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeakReport<T> {
    pub k: usize,
    pub tau1: T,
    pub p1: T,
    pub tau2: T,
    pub p2: T,
    pub delta_tau: T,
}

impl<T: Real> PeakReport<T> {
    pub fn new(k: usize, tau1: T, p1: T, tau2: T, p2: T) -> Result<Self> {
        let slack = T::lit(tolerance::PEAK_SLACK);
        let fail = |what| Err(Error::PeakInvariant { k, what });
        if !(tau1 > T::zero() && tau1 < tau2) {
            return fail("expected 0 < tau1 < tau2");
        }
        if !(p1 + slack >= p2) {
            return fail("second maximum exceeds the first");
        }
        for p in [p1, p2] {
            if !(p > T::zero() && p <= T::one() + slack) {
                return fail("probability outside (0, 1]");
            }
        }
        Ok(Self { k, tau1, p1, tau2, p2, delta_tau: tau2 - tau1 })
    }

    pub fn validate(&self) -> Result<()> {
        Self::new(self.k, self.tau1, self.p1, self.tau2, self.p2).map(|_| ())
    }
}

pub fn analyze_peaks<T: Real>(k: usize, cfg: &PeakConfig) -> Result<PeakReport<T>> {
    check_k(k)?;
    let spec = ClockSpectrum::new(k)?;
    let (tau1, p1) = find_first_maximum_in(&spec, cfg)?;
    let (tau2, p2) = find_second_maximum_in(&spec, tau1, cfg)?;
    PeakReport::new(k, tau1, p1, tau2, p2)
}

/// Peak reports for an ascending list of chain lengths.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepTable<T> {
    pub rows: Vec<PeakReport<T>>,
    pub provenance: PeakConfig,
}

impl<T: Real> SweepTable<T> {
    pub fn from_rows(rows: Vec<PeakReport<T>>, provenance: PeakConfig) -> Result<Self> {
        check_ascending(rows.iter().map(|r| r.k))?;
        for r in &rows {
            r.validate()?;
        }
        Ok(Self { rows, provenance })
    }

    pub fn ks(&self) -> Vec<T> {
        self.rows.iter().map(|r| T::count(r.k)).collect()
    }

    fn column(&self, f: impl Fn(&PeakReport<T>) -> T) -> Vec<T> {
        self.rows.iter().map(f).collect()
    }

    fn require_rows(&self) -> Result<()> {
        if self.rows.len() < tolerance::MIN_SCALING_ROWS {
            return Err(Error::TooFewPoints { got: self.rows.len(), need: tolerance::MIN_SCALING_ROWS });
        }
        Ok(())
    }
}

fn check_ascending(ks: impl Iterator<Item = usize>) -> Result<()> {
    let mut last = None;
    for k in ks {
        if last.is_some_and(|l| k <= l) {
            return Err(Error::InvalidGrid("k values must be strictly ascending"));
        }
        last = Some(k);
    }
    Ok(())
}

/// Analyze every `k` independently and in parallel; rows come back in input order.
pub fn sweep<T: Real>(k_values: &[usize], cfg: &PeakConfig) -> Result<SweepTable<T>> {
    check_ascending(k_values.iter().copied())?;
    let rows = k_values.par_iter().map(|&k| analyze_peaks(k, cfg)).collect::<Result<Vec<_>>>()?;
    Ok(SweepTable { rows, provenance: *cfg })
}

/// Affine fit `τ₁ = slope·k + intercept`.
pub fn fit_tau_scaling<T: Real>(table: &SweepTable<T>) -> Result<FitResult<T>> {
    table.require_rows()?;
    fit_affine(&table.ks(), &table.column(|r| r.tau1))
}

/// Power law `P_k(τ₁) = c·k^e`.
pub fn fit_probability_scaling<T: Real>(table: &SweepTable<T>) -> Result<FitResult<T>> {
    table.require_rows()?;
    fit_power_law(&table.ks(), &table.column(|r| r.p1))
}

/// Power law `Δτ = β·k^e`.
pub fn fit_gap_spacing_scaling<T: Real>(table: &SweepTable<T>) -> Result<FitResult<T>> {
    table.require_rows()?;
    fit_power_law(&table.ks(), &table.column(|r| r.delta_tau))
}

/// Power law of `τ₁·⌈1/P_k(τ₁)⌉` against `k`.
pub fn fit_runtime_scaling<T: Real>(table: &SweepTable<T>) -> Result<FitResult<T>> {
    table.require_rows()?;
    let totals: Vec<T> = table.rows.iter().map(|r| runtime_estimate(r).total_time).collect();
    fit_power_law(&table.ks(), &totals)
}

/// Expected cost of repeating the run until the clock is caught at `k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuntimeEstimate<T> {
    pub k: usize,
    pub repeats: u64,
    pub total_time: T,
}

pub fn runtime_estimate<T: Real>(report: &PeakReport<T>) -> RuntimeEstimate<T> {
    let inv = T::one() / report.p1 - T::lit(tolerance::PEAK_SLACK);
    let repeats = inv.ceil().to_u64().unwrap_or(u64::MAX).max(1);
    RuntimeEstimate { k: report.k, repeats, total_time: report.tau1 * T::lit(repeats as f64) }
}

/// `count` logarithmically spaced integers from `lo` to `hi`, rounded and
/// deduplicated.
pub fn log_spaced_ks(lo: usize, hi: usize, count: usize) -> Result<Vec<usize>> {
    if lo == 0 || hi < lo {
        return Err(Error::InvalidGrid("log range needs 0 < lo <= hi"));
    }
    if count == 0 {
        return Err(Error::InvalidGrid("log range needs at least one point"));
    }
    if count == 1 {
        return Ok(vec![lo]);
    }
    let (a, b) = ((lo as f64).ln(), (hi as f64).ln());
    let mut ks: Vec<usize> =
        (0..count).map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp().round() as usize).collect();
    ks.dedup();
    Ok(ks)
}
