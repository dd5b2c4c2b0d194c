//! Independent reference implementations used as oracles.
#![allow(dead_code)]

use feynman_clock::numerics::ComplexMatrix;
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex;

pub type C = Complex<f64>;

/// `e^{-iHt}` by scaling and squaring a truncated Taylor series.
pub fn taylor_expm(h: &ComplexMatrix<f64>, t: f64) -> ComplexMatrix<f64> {
    let n = h.rows();
    let a = h.scale(C::new(0.0, -t));
    let norm = a.entries().iter().map(|z| z.norm()).fold(0.0, f64::max) * n as f64;
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let a = a.scale(C::new(0.5f64.powi(squarings as i32), 0.0));
    let mut term = ComplexMatrix::identity(n);
    let mut sum = ComplexMatrix::identity(n);
    for j in 1..=30 {
        term = (&term * &a).scale(C::new(1.0 / j as f64, 0.0));
        sum = &sum + &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

fn to_nalgebra(h: &ComplexMatrix<f64>) -> DMatrix<C> {
    DMatrix::from_fn(h.rows(), h.cols(), |i, j| h[(i, j)])
}

/// `e^{-iHt}` from nalgebra's Hermitian eigendecomposition.
pub fn nalgebra_expm(h: &ComplexMatrix<f64>, t: f64) -> ComplexMatrix<f64> {
    let eig = SymmetricEigen::new(to_nalgebra(h));
    let n = h.rows();
    let v = &eig.eigenvectors;
    ComplexMatrix::from_fn(n, n, |i, j| {
        (0..n).map(|l| v[(i, l)] * C::from_polar(1.0, -eig.eigenvalues[l] * t) * v[(j, l)].conj()).sum()
    })
}

/// All eigenvalues of a real symmetric matrix, ascending.
pub fn dense_symmetric_eigenvalues(m: &[Vec<f64>]) -> Vec<f64> {
    let n = m.len();
    let d = DMatrix::from_fn(n, n, |i, j| m[i][j]);
    let mut ev: Vec<f64> = d.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

/// Dense `(k+1)×(k+1)` clock matrix assembled entry by entry.
pub fn dense_clock(k: usize) -> ComplexMatrix<f64> {
    ComplexMatrix::from_real(k + 1, k + 1, |i, j| if i + 1 == j || j + 1 == i { 1.0 } else { 0.0 })
}

/// Solve the 2×2 normal equations of `y = a + b x` by Cramer's rule.
pub fn normal_equations(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let det = n * sxx - sx * sx;
    let a = (sy * sxx - sx * sxy) / det;
    let b = (n * sxy - sx * sy) / det;
    (a, b)
}

/// `P_k(t)` through a dense exponential of the clock matrix.
pub fn dense_probability(k: usize, t: f64) -> f64 {
    nalgebra_expm(&dense_clock(k), t)[(k, 0)].norm_sqr()
}

/// Index of the `nth` strict local maximum of `f` on `[lo, hi]` with step `h`,
/// ignoring values at or below `floor`.
pub fn grid_local_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, h: f64, floor: f64, nth: usize) -> Option<(f64, f64)> {
    let steps = ((hi - lo) / h).floor() as usize;
    let mut found = 0;
    let (mut a, mut b) = (f(lo), f(lo + h));
    for i in 1..steps {
        let c = f(lo + (i + 1) as f64 * h);
        if a < b && b > c && b > floor {
            found += 1;
            if found == nth {
                return Some((lo + i as f64 * h, b));
            }
        }
        a = b;
        b = c;
    }
    None
}

/// `Γ(x)` by the Lanczos approximation (g = 7, 9 terms).
pub fn gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    let x = x - 1.0;
    let t = x + G + 0.5;
    let s = COEF.iter().enumerate().skip(1).fold(COEF[0], |acc, (i, c)| acc + c / (x + i as f64));
    (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * s
}
