//! Ordinary least-squares fits of affine and power laws.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tolerance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitKind {
    Affine,
    PowerLaw,
}

/// Parameters of `y = coefficient·x^exponent + intercept`.
///
/// An affine fit has `exponent = 1` (so `coefficient` is the slope); a power
/// law has `intercept = 0` and is fitted in log-log space, where `r_squared`
/// and `residual_max` are also measured.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult<T> {
    pub kind: FitKind,
    pub exponent: T,
    pub coefficient: T,
    pub intercept: T,
    pub r_squared: T,
    pub residual_max: T,
    pub points: usize,
}

impl<T: Real> FitResult<T> {
    /// Slope of the fitted line in the space where the fit was done.
    pub fn slope(&self) -> T {
        match self.kind {
            FitKind::Affine => self.coefficient,
            FitKind::PowerLaw => self.exponent,
        }
    }

    pub fn predict(&self, x: T) -> T {
        match self.kind {
            FitKind::Affine => self.coefficient * x + self.intercept,
            FitKind::PowerLaw => self.coefficient * x.powf(self.exponent),
        }
    }
}

struct Line<T> {
    slope: T,
    intercept: T,
    r_squared: T,
    residual_max: T,
}

fn check_points<T>(xs: &[T], ys: &[T]) -> Result<()> {
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch(format!("{} x values vs {} y values", xs.len(), ys.len())));
    }
    if xs.len() < tolerance::MIN_FIT_POINTS {
        return Err(Error::TooFewPoints { got: xs.len(), need: tolerance::MIN_FIT_POINTS });
    }
    Ok(())
}

/// Centered least squares for `y = slope·x + intercept`.
fn least_squares<T: Real>(xs: &[T], ys: &[T]) -> Result<Line<T>> {
    let n = T::count(xs.len());
    let mx = xs.iter().fold(T::zero(), |a, &b| a + b) / n;
    let my = ys.iter().fold(T::zero(), |a, &b| a + b) / n;
    let (mut sxx, mut sxy, mut syy) = (T::zero(), T::zero(), T::zero());
    for (&x, &y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx.is_zero() {
        return Err(Error::InsufficientSpan { decades: 0.0 });
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let mut ssr = T::zero();
    let mut residual_max = T::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        let r = y - (slope * x + intercept);
        ssr += r * r;
        residual_max = residual_max.max(r.abs());
    }
    let r_squared = if syy.is_zero() { T::one() } else { (T::one() - ssr / syy).max(T::zero()).min(T::one()) };
    Ok(Line { slope, intercept, r_squared, residual_max })
}

pub fn fit_affine<T: Real>(xs: &[T], ys: &[T]) -> Result<FitResult<T>> {
    check_points(xs, ys)?;
    let line = least_squares(xs, ys)?;
    Ok(FitResult {
        kind: FitKind::Affine,
        exponent: T::one(),
        coefficient: line.slope,
        intercept: line.intercept,
        r_squared: line.r_squared,
        residual_max: line.residual_max,
        points: xs.len(),
    })
}

fn logs<T: Real>(v: &[T]) -> Result<Vec<T>> {
    v.iter()
        .enumerate()
        .map(|(i, &x)| if x > T::zero() && x.is_finite() { Ok(x.ln()) } else { Err(Error::NonPositive { index: i }) })
        .collect()
}

/// Least squares on `(ln x, ln y)`.
pub fn fit_power_law<T: Real>(xs: &[T], ys: &[T]) -> Result<FitResult<T>> {
    check_points(xs, ys)?;
    let lx = logs(xs)?;
    let ly = logs(ys)?;
    let line = least_squares(&lx, &ly)?;
    Ok(FitResult {
        kind: FitKind::PowerLaw,
        exponent: line.slope,
        coefficient: line.intercept.exp(),
        intercept: T::zero(),
        r_squared: line.r_squared,
        residual_max: line.residual_max,
        points: xs.len(),
    })
}

/// Best coefficient `c` of `y = c·x^exponent` with the exponent held fixed
/// (geometric mean of `y/x^exponent`).
pub fn fit_coefficient_fixed_exponent<T: Real>(xs: &[T], ys: &[T], exponent: T) -> Result<T> {
    check_points(xs, ys)?;
    let lx = logs(xs)?;
    let ly = logs(ys)?;
    let n = T::count(xs.len());
    let mean = lx.iter().zip(&ly).fold(T::zero(), |a, (&x, &y)| a + y - exponent * x) / n;
    Ok(mean.exp())
}
