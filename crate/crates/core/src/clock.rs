//! Closed-form spectral machinery of the bare `(k+1)`-site clock chain.
//!
//! The chain Hamiltonian has zero on-site energy and unit hopping. Its
//! eigenpairs are
//!
//! ```text
//! λ_j     = 2 cos(π(j+1)/(k+2))
//! ⟨m|φ_j⟩ = √(2/(k+2)) · sin(π(m+1)(j+1)/(k+2)),     m, j = 0..k
//! ```
//!
//! and every transfer amplitude `a_ij(t) = (e^{-iH t})_ij` is a sum over
//! these `k+1` modes, so evaluating one costs `O(k)` with no dense algebra.
//! The end-to-end amplitude `a_k0` additionally uses the mirror symmetry
//! `⟨k|φ_j⟩ = (−1)^j ⟨0|φ_j⟩`, which turns it into an alternating-sign sum
//! over `sin²` weights that are precomputed once per chain.

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::SymTridiag;
use crate::scalar::Real;

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidGateCount { k, reason: "a clock chain needs at least one gate" });
    }
    Ok(())
}

/// The clock Hamiltonian as a symmetric tridiagonal matrix: zero diagonal,
/// unit off-diagonal, `k+1` sites.
pub fn build_clock_matrix<T: Real>(k: usize) -> Result<SymTridiag<T>> {
    check_k(k)?;
    SymTridiag::new(vec![T::zero(); k + 1], vec![T::one(); k])
}

/// Closed-form eigensystem of the clock chain.
///
/// Eigenvector components are generated on demand rather than stored, so a
/// spectrum for `k = 10⁵` costs two vectors of length `k+1`.
#[derive(Clone, Debug)]
pub struct ClockSpectrum<T> {
    k: usize,
    eigenvalues: Vec<T>,
    /// `⟨k|φ_j⟩⟨φ_j|0⟩ = (2/(k+2)) sin²(π(j+1)/(k+2)) (−1)^j`
    end_weights: Vec<T>,
}

pub fn clock_eigensystem<T: Real>(k: usize) -> Result<ClockSpectrum<T>> {
    ClockSpectrum::new(k)
}

impl<T: Real> ClockSpectrum<T> {
    pub fn new(k: usize) -> Result<Self> {
        check_k(k)?;
        let denom = T::count(k + 2);
        let norm = T::lit(2.0) / denom;
        let mut eigenvalues = Vec::with_capacity(k + 1);
        let mut end_weights = Vec::with_capacity(k + 1);
        for j in 0..=k {
            let theta = T::PI() * T::count(j + 1) / denom;
            eigenvalues.push(T::lit(2.0) * theta.cos());
            let s = theta.sin();
            let w = norm * s * s;
            end_weights.push(if j % 2 == 0 { w } else { -w });
        }
        Ok(Self { k, eigenvalues, end_weights })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sites(&self) -> usize {
        self.k + 1
    }

    /// `λ_j` in mode order (descending).
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn sorted_eigenvalues(&self) -> Vec<T> {
        self.eigenvalues.iter().rev().copied().collect()
    }

    /// `⟨m|φ_j⟩`.
    pub fn component(&self, m: usize, j: usize) -> T {
        let denom = T::count(self.k + 2);
        let arg = T::PI() * T::count((m + 1) * (j + 1)) / denom;
        (T::lit(2.0) / denom).sqrt() * arg.sin()
    }

    pub fn eigenvector(&self, j: usize) -> Vec<T> {
        (0..=self.k).map(|m| self.component(m, j)).collect()
    }

    /// Dense `(k+1)×(k+1)` table of `⟨m|φ_j⟩`, row `m`, column `j`.
    pub fn overlap_table(&self) -> Vec<Vec<T>> {
        (0..=self.k).map(|m| (0..=self.k).map(|j| self.component(m, j)).collect()).collect()
    }

    fn check_site(&self, site: usize) -> Result<()> {
        if site > self.k {
            return Err(Error::SiteOutOfRange { site, k: self.k });
        }
        Ok(())
    }

    /// `a_ij(t) = Σ_ℓ e^{-iλ_ℓ t} ⟨i|φ_ℓ⟩⟨φ_ℓ|j⟩`.
    pub fn amplitude(&self, i: usize, j: usize, t: T) -> Result<Complex<T>> {
        self.check_site(i)?;
        self.check_site(j)?;
        Ok(self.eigenvalues.iter().enumerate().fold(Complex::zero(), |acc, (l, &lam)| {
            let w = self.component(i, l) * self.component(j, l);
            let (s, c) = (lam * t).sin_cos();
            acc + Complex::new(w * c, -w * s)
        }))
    }

    /// `a_k0(t)` from the precomputed alternating-sign weights.
    pub fn end_to_end_amplitude(&self, t: T) -> Complex<T> {
        self.eigenvalues.iter().zip(&self.end_weights).fold(Complex::zero(), |acc, (&lam, &w)| {
            let (s, c) = (lam * t).sin_cos();
            acc + Complex::new(w * c, -w * s)
        })
    }

    /// `P_k(t) = |a_k0(t)|²`.
    pub fn success_probability(&self, t: T) -> T {
        self.end_to_end_amplitude(t).norm_sqr()
    }
}

/// `a_ij(t)` of the `k`-gate clock chain.
pub fn amplitude<T: Real>(k: usize, i: usize, j: usize, t: T) -> Result<Complex<T>> {
    ClockSpectrum::new(k)?.amplitude(i, j, t)
}

/// `P_k(t)`, the probability that the clock has reached site `k` at time `t`.
pub fn success_probability<T: Real>(k: usize, t: T) -> Result<T> {
    if t < T::zero() || !t.is_finite() {
        return Err(Error::OutOfRange { name: "t", value: t.as_f64(), expected: "finite and non-negative" });
    }
    Ok(ClockSpectrum::new(k)?.success_probability(t))
}

/// `a_k0(t)` and `P_k(t)` sampled on a time grid.
#[derive(Clone, Debug, Serialize)]
pub struct AmplitudeSeries<T> {
    pub k: usize,
    pub times: Vec<T>,
    #[serde(skip)]
    pub amplitudes: Vec<Complex<T>>,
    pub probabilities: Vec<T>,
}

/// Evaluate `a_k0` over a strictly ascending grid, `O(k)` per point.
pub fn probability_series<T: Real>(k: usize, t_grid: &[T]) -> Result<AmplitudeSeries<T>> {
    if t_grid.is_empty() {
        return Err(Error::InvalidGrid("empty"));
    }
    if t_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidGrid("times must be strictly ascending"));
    }
    if !t_grid.iter().all(|t| t.is_finite()) {
        return Err(Error::InvalidGrid("times must be finite"));
    }
    let spec = ClockSpectrum::new(k)?;
    let amplitudes: Vec<Complex<T>> = t_grid.par_iter().map(|&t| spec.end_to_end_amplitude(t)).collect();
    let probabilities = amplitudes.iter().map(|a| a.norm_sqr()).collect();
    Ok(AmplitudeSeries { k, times: t_grid.to_vec(), amplitudes, probabilities })
}
