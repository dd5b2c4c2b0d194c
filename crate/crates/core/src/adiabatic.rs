//! Spectral gap of the interpolating clock Hamiltonian `H_clock(s)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::optimize::golden_min;
use crate::numerics::{fit_power_law, tridiag_eigenvalues, FitResult, SymTridiag};
use crate::scalar::Real;
use crate::tolerance;

/// Smallest grid accepted by [`gap_scan`].
pub const MIN_GAP_GRID: usize = 16;

/// `(k+1)×(k+1)` tridiagonal with diagonal `[s/2, 1, …, 1, 1−s/2]` and
/// off-diagonal `−s/2`.
pub fn build_adiabatic_clock<T: Real>(k: usize, s: T) -> Result<SymTridiag<T>> {
    if k == 0 {
        return Err(Error::InvalidGateCount { k, reason: "a clock chain needs at least one gate" });
    }
    if !(s >= T::zero() && s <= T::one()) {
        return Err(Error::OutOfRange { name: "s", value: s.as_f64(), expected: "0 <= s <= 1" });
    }
    let half = s / T::lit(2.0);
    let mut diag = vec![T::one(); k + 1];
    diag[0] = half;
    diag[k] = T::one() - half;
    SymTridiag::new(diag, vec![-half; k])
}

/// `λ₁(s) − λ₀(s)`.
pub fn spectral_gap<T: Real>(k: usize, s: T) -> Result<T> {
    let ev = tridiag_eigenvalues(&build_adiabatic_clock(k, s)?, 2)?;
    Ok(ev[1] - ev[0])
}

/// `Δ(s)` on a uniform grid plus the refined minimum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapScan<T> {
    pub k: usize,
    pub s_grid: Vec<T>,
    pub gap: Vec<T>,
    pub s_min: T,
    pub gap_min: T,
}

impl<T: Real> GapScan<T> {
    /// `π²/(8k²)`.
    pub fn lower_bound(&self) -> T {
        let k = T::count(self.k);
        T::PI() * T::PI() / (T::lit(8.0) * k * k)
    }

    pub fn satisfies_lower_bound(&self, tol: T) -> bool {
        self.gap_min >= self.lower_bound() - tol
    }

    /// `Δ_min·k²`.
    pub fn scaled_gap(&self) -> T {
        let k = T::count(self.k);
        self.gap_min * k * k
    }
}

/// Uniform scan of `Δ(s)` followed by golden-section refinement on the two
/// grid cells around the coarse minimum.
pub fn gap_scan<T: Real>(k: usize, grid_size: usize) -> Result<GapScan<T>> {
    if grid_size < MIN_GAP_GRID {
        return Err(Error::TooFewPoints { got: grid_size, need: MIN_GAP_GRID });
    }
    let last = T::count(grid_size - 1);
    let s_grid: Vec<T> = (0..grid_size).map(|i| T::count(i) / last).collect();
    let gap = s_grid.par_iter().map(|&s| spectral_gap(k, s)).collect::<Result<Vec<T>>>()?;

    let (imin, &coarse) =
        gap.iter().enumerate().fold((0, &gap[0]), |best, cur| if cur.1 < best.1 { cur } else { best });
    let lo = s_grid[imin.saturating_sub(1)];
    let hi = s_grid[(imin + 1).min(grid_size - 1)];
    let f = |s: T| spectral_gap(k, s).expect("s inside [0, 1]");
    let (s_ref, g_ref) = golden_min(f, lo, hi, T::lit(tolerance::GAP_REFINE));
    let (s_min, gap_min) = if g_ref <= coarse { (s_ref, g_ref) } else { (s_grid[imin], coarse) };
    Ok(GapScan { k, s_grid, gap, s_min, gap_min })
}

/// Minimum-gap power law and the adiabatic run-time exponents it implies.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapScaling<T> {
    pub fit: FitResult<T>,
    /// `T ∝ Δ^{-2}` gives run-time exponent `−2e`.
    pub runtime_exponent: T,
    /// `T ∝ Δ^{-3}` gives `−3e`.
    pub runtime_exponent_cubic: T,
}

/// Fit `Δ_min = c·k^e` from precomputed minima.
pub fn fit_gap_minima<T: Real>(ks: &[T], gaps: &[T]) -> Result<GapScaling<T>> {
    if ks.len() < tolerance::MIN_SCALING_ROWS {
        return Err(Error::TooFewPoints { got: ks.len(), need: tolerance::MIN_SCALING_ROWS });
    }
    let (lo, hi) = ks.iter().fold((T::infinity(), T::neg_infinity()), |(a, b), &k| (a.min(k), b.max(k)));
    let decades = (hi / lo).log10();
    if !(decades >= T::one()) {
        return Err(Error::InsufficientSpan { decades: 1.0 });
    }
    let fit = fit_power_law(ks, gaps)?;
    Ok(GapScaling {
        runtime_exponent: -T::lit(2.0) * fit.exponent,
        runtime_exponent_cubic: -T::lit(3.0) * fit.exponent,
        fit,
    })
}

/// Scan every `k` and fit the minimum gaps.
pub fn fit_gap_scaling<T: Real>(k_values: &[usize], grid_size: usize) -> Result<(Vec<GapScan<T>>, GapScaling<T>)> {
    let scans = k_values.iter().map(|&k| gap_scan(k, grid_size)).collect::<Result<Vec<GapScan<T>>>>()?;
    let ks: Vec<T> = scans.iter().map(|s| T::count(s.k)).collect();
    let gaps: Vec<T> = scans.iter().map(|s| s.gap_min).collect();
    let scaling = fit_gap_minima(&ks, &gaps)?;
    Ok((scans, scaling))
}
