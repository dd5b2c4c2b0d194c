//! Large-k approximations of the peak height and of the spacing between the
//! first two maxima, side by side with the exact spectral values.
//!
//! At `t = (k+1)/2` the phases `λ_j t` of the end-to-end sum are expanded
//! to cubic order around the band centre. For even `k` this leaves
//!
//! ```text
//! P ≈ ( 4/(k+1) · Σ_{p=0}^{k/2} cos²(π(2p−1)/(2(k+1))) · cos(π³(p−½)³ / (6(k+1)²)) )²
//! ```
//!
//! and replacing the sum by a Riemann integral gives
//! `P ≈ (4I / (π(k+1)^{1/3}))²` with `I = ∫₀^∞ cos(x³/6) dx`.

use serde::Serialize;

use crate::clock::ClockSpectrum;
use crate::error::{Error, Result};
use crate::numerics::{oscillatory_integral_cos_cubic, Truncation};
use crate::peaks::{analyze_peaks, PeakConfig, PeakReport};
use crate::scalar::Real;

/// Reference closed-form coefficient of `k^{-2/3}` for the peak height.
pub const REFERENCE_ANALYTIC_COEFFICIENT: f64 = 5.14;
/// Reference fitted coefficient of `k^{-2/3}` for the peak height.
pub const REFERENCE_FIT_COEFFICIENT: f64 = 6.76;
/// Reference prefactor of `(k+2)^{1/3}` for the first-to-second maximum spacing.
pub const REFERENCE_SPACING_COEFFICIENT: f64 = 1.115;

fn require_k(k: usize, min: usize, reason: &'static str) -> Result<()> {
    if k < min {
        return Err(Error::InvalidGateCount { k, reason });
    }
    Ok(())
}

/// The truncated double-cosine sum, squared. Even `k ≥ 4` only.
pub fn pk_tau_cosine_sum<T: Real>(k: usize) -> Result<T> {
    let a = cosine_sum_amplitude::<T>(k, true)?;
    Ok(a * a)
}

/// `4/(k+1)·Σ_p cos²(π(2p−1)/(2(k+1)))·cos(π³(p−½)³/(6(k+1)²))` before
/// squaring; with `cubic = false` the second factor is dropped.
pub fn cosine_sum_amplitude<T: Real>(k: usize, cubic: bool) -> Result<T> {
    require_k(k, 4, "the cosine sum needs k >= 4")?;
    if k % 2 == 1 {
        return Err(Error::InvalidGateCount { k, reason: "the cosine sum is derived for even k only" });
    }
    let k1 = T::count(k + 1);
    let pi = T::PI();
    let half = T::lit(0.5);
    let cubic_scale = pi * pi * pi / (T::lit(6.0) * k1 * k1);
    let sum = (0..=k / 2).fold(T::zero(), |acc, p| {
        let pf = T::count(p);
        let envelope = (pi * (T::lit(2.0) * pf - T::one()) / (T::lit(2.0) * k1)).cos();
        let x = pf - half;
        let phase = if cubic { (cubic_scale * x * x * x).cos() } else { T::one() };
        acc + envelope * envelope * phase
    });
    Ok(T::lit(4.0) / k1 * sum)
}

/// Integral approximation of the peak height.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IntegralApprox<T> {
    /// `(4I/(π(k+1)^{1/3}))²`
    pub probability: T,
    /// `4I/π`, the coefficient of `(k+1)^{-1/3}` in `|a_k0|`
    pub amplitude_coefficient: T,
    /// `(4I/π)²`, the implied coefficient of `k^{-2/3}`
    pub coefficient: T,
}

pub fn integral_coefficients<T: Real>() -> (T, T) {
    let i: T = oscillatory_integral_cos_cubic(Truncation::default());
    let a = T::lit(4.0) * i / T::PI();
    (a, a * a)
}

pub fn pk_tau_integral_approx<T: Real>(k: usize) -> Result<IntegralApprox<T>> {
    require_k(k, 4, "the integral approximation needs k >= 4")?;
    let (amplitude_coefficient, coefficient) = integral_coefficients::<T>();
    let a = amplitude_coefficient / T::count(k + 1).cbrt();
    Ok(IntegralApprox { probability: a * a, amplitude_coefficient, coefficient })
}

/// `(δ, Δτ)` with `δ = ½(3π)^{2/3}(k+1)^{-2/3}` and `Δτ = δ(k+2)/2`.
pub fn second_maximum_prediction<T: Real>(k: usize) -> Result<(T, T)> {
    require_k(k, 4, "the spacing prediction needs k >= 4")?;
    let delta = T::lit(0.5) * (T::lit(3.0) * T::PI()).powf(T::lit(2.0 / 3.0)) / T::count(k + 1).powf(T::lit(2.0 / 3.0));
    Ok((delta, delta * T::count(k + 2) / T::lit(2.0)))
}

/// All peak-height and spacing estimates for one `k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AsymptoticReport<T> {
    pub k: usize,
    /// Cosine sum; absent for odd `k`.
    pub p_tau_sum: Option<T>,
    /// Exact `P_k((k+1)/2)`, the point the cosine sum approximates.
    pub p_half_chain: T,
    pub p_tau_integral: T,
    /// Exact `P_k(τ₁)` at the located first maximum.
    pub p_tau_numeric: T,
    /// `P_k(τ₁)·k^{2/3}`
    pub coefficient_estimate: T,
    pub integral_coefficient: T,
    pub delta_predicted: T,
    pub delta_numeric: T,
}

impl<T: Real> AsymptoticReport<T> {
    pub fn from_peaks(peaks: &PeakReport<T>) -> Result<Self> {
        let k = peaks.k;
        require_k(k, 4, "asymptotic reports need k >= 4")?;
        let p_tau_sum = if k % 2 == 0 { Some(pk_tau_cosine_sum(k)?) } else { None };
        let spec = ClockSpectrum::<T>::new(k)?;
        let p_half_chain = spec.success_probability(T::count(k + 1) / T::lit(2.0));
        let integral = pk_tau_integral_approx::<T>(k)?;
        let (_, delta_predicted) = second_maximum_prediction::<T>(k)?;
        Ok(Self {
            k,
            p_tau_sum,
            p_half_chain,
            p_tau_integral: integral.probability,
            p_tau_numeric: peaks.p1,
            coefficient_estimate: peaks.p1 * T::count(k).powf(T::lit(2.0 / 3.0)),
            integral_coefficient: integral.coefficient,
            delta_predicted,
            delta_numeric: peaks.delta_tau,
        })
    }

    /// `|sum − exact| / exact` at `t = (k+1)/2`.
    pub fn sum_relative_error(&self) -> Option<T> {
        self.p_tau_sum.map(|s| (s - self.p_half_chain).abs() / self.p_half_chain)
    }

    /// `|predicted − measured| / predicted` for the spacing.
    pub fn spacing_relative_error(&self) -> T {
        (self.delta_numeric - self.delta_predicted).abs() / self.delta_predicted
    }
}

pub fn asymptotic_report<T: Real>(k: usize, cfg: &PeakConfig) -> Result<AsymptoticReport<T>> {
    require_k(k, 4, "asymptotic reports need k >= 4")?;
    AsymptoticReport::from_peaks(&analyze_peaks(k, cfg)?)
}
