//! Real symmetric tridiagonal matrices and Sturm-sequence bisection for
//! selected eigenvalues.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymTridiag<T> {
    diag: Vec<T>,
    offdiag: Vec<T>,
}

impl<T: Real> SymTridiag<T> {
    pub fn new(diag: Vec<T>, offdiag: Vec<T>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} diagonal entries need {} off-diagonal entries, got {}",
                diag.len(),
                diag.len() - 1,
                offdiag.len()
            )));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[T] {
        &self.offdiag
    }

    /// Entry `(i, j)` of the full matrix.
    pub fn get(&self, i: usize, j: usize) -> T {
        match i.abs_diff(j) {
            0 => self.diag[i],
            1 => self.offdiag[i.min(j)],
            _ => T::zero(),
        }
    }

    /// `T·v`.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        let n = self.dim();
        assert_eq!(v.len(), n);
        (0..n)
            .map(|i| {
                let mut y = self.diag[i] * v[i];
                if i > 0 {
                    y += self.offdiag[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    y += self.offdiag[i] * v[i + 1];
                }
                y
            })
            .collect()
    }

    /// Dense row-major copy.
    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.get(i, j)).collect()).collect()
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (T, T) {
        let n = self.dim();
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for i in 0..n {
            let left = if i > 0 { self.offdiag[i - 1].abs() } else { T::zero() };
            let right = if i + 1 < n { self.offdiag[i].abs() } else { T::zero() };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x` (negative pivots of the
    /// LDLᵀ factorization of `T − xI`).
    pub fn sturm_count(&self, x: T) -> usize {
        let guard = T::min_positive_value().sqrt() * T::epsilon();
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < T::zero() {
            count += 1;
        }
        for i in 1..self.dim() {
            let pivot = if q.abs() < guard { guard.copysign(q) } else { q };
            let e = self.offdiag[i - 1];
            q = (self.diag[i] - x) - e * e / pivot;
            if q < T::zero() {
                count += 1;
            }
        }
        count
    }
}

/// The `lowest` smallest eigenvalues, ascending, by Sturm bisection.
///
/// Each eigenvalue is bisected until the bracket stops shrinking in floating
/// point or falls below `ε·‖T‖`, whichever comes first.
pub fn tridiag_eigenvalues<T: Real>(m: &SymTridiag<T>, lowest: usize) -> Result<Vec<T>> {
    let n = m.dim();
    if lowest > n {
        return Err(Error::OutOfRange {
            name: "lowest",
            value: lowest as f64,
            expected: "at most the matrix dimension",
        });
    }
    if n == 1 {
        return Ok(m.diag.iter().copied().take(lowest).collect());
    }
    let (glo, ghi) = m.gershgorin();
    let scale = glo.abs().max(ghi.abs()).max(T::min_positive_value());
    let pad = scale * T::lit(4.0) * T::epsilon() + T::min_positive_value();
    let (glo, ghi) = (glo - pad, ghi + pad);
    let abs_tol = T::epsilon() * scale * T::lit(0.5);
    let two = T::lit(2.0);

    let mut out = Vec::with_capacity(lowest);
    let mut lo_prev = glo;
    for idx in 0..lowest {
        let mut lo = lo_prev;
        let mut hi = ghi;
        loop {
            let mid = (lo + hi) / two;
            if mid <= lo || mid >= hi || hi - lo <= abs_tol {
                break;
            }
            if m.sturm_count(mid) <= idx {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let value = (lo + hi) / two;
        out.push(value);
        lo_prev = lo;
    }
    Ok(out)
}
