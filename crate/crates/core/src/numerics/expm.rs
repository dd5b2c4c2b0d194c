//! Hermitian eigendecomposition (cyclic complex Jacobi) and the unitary
//! propagator `e^{-iHt}` built from it.

use num_complex::Complex;
use num_traits::Zero;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tolerance;

const MAX_SWEEPS: usize = 100;

/// Eigenpairs of a Hermitian matrix; `vectors` holds eigenvectors as columns,
/// `values` is ascending.
#[derive(Clone, Debug)]
pub struct HermitianEigen<T> {
    pub values: Vec<T>,
    pub vectors: ComplexMatrix<T>,
}

impl<T: Real> HermitianEigen<T> {
    /// `V·diag(e^{-iλt})·V†`.
    pub fn propagator(&self, t: T) -> ComplexMatrix<T> {
        let n = self.values.len();
        let phases: Vec<Complex<T>> = self.values.iter().map(|&l| Complex::from_polar(T::one(), -l * t)).collect();
        let v = &self.vectors;
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).fold(Complex::zero(), |acc, l| acc + v[(i, l)] * phases[l] * v[(j, l)].conj())
        })
    }

    /// Largest `‖H v − λ v‖_∞` over all pairs.
    pub fn residual(&self, h: &ComplexMatrix<T>) -> T {
        let n = self.values.len();
        let mut worst = T::zero();
        for l in 0..n {
            for i in 0..n {
                let hv: Complex<T> = (0..n).fold(Complex::zero(), |acc, m| acc + h[(i, m)] * self.vectors[(m, l)]);
                worst = worst.max((hv - self.vectors[(i, l)].scale(self.values[l])).norm());
            }
        }
        worst
    }
}

fn check_hermitian<T: Real>(h: &ComplexMatrix<T>) -> Result<usize> {
    let n = h.ensure_square()?;
    let dev = h.hermitian_deviation();
    if dev > T::tol(tolerance::HERMITIAN) {
        return Err(Error::NotHermitian { deviation: dev.as_f64() });
    }
    Ok(n)
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn hermitian_eigen<T: Real>(h: &ComplexMatrix<T>) -> Result<HermitianEigen<T>> {
    let n = check_hermitian(h)?;
    let mut a = h.clone();
    let mut v = ComplexMatrix::identity(n);
    let eps = T::epsilon();
    let frob = a.entries().iter().fold(T::zero(), |s, z| s + z.norm_sqr()).sqrt();

    for sweep in 0..MAX_SWEEPS {
        let mut off = T::zero();
        for p in 0..n {
            for q in 0..n {
                if p != q {
                    off += a[(p, q)].norm_sqr();
                }
            }
        }
        if off.sqrt() <= eps * frob || off.is_zero() {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag.is_zero() {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let hundred = T::lit(100.0);
                if sweep > 3 && app.abs() + hundred * mag == app.abs() && aqq.abs() + hundred * mag == aqq.abs() {
                    a[(p, q)] = Complex::zero();
                    a[(q, p)] = Complex::zero();
                    continue;
                }
                rotate(&mut a, &mut v, p, q, apq, mag, app, aqq);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(HermitianEigen { values, vectors })
}

/// Apply `A ← R†AR`, `V ← VR` with the unitary rotation that zeroes `A[p][q]`.
#[allow(clippy::too_many_arguments)]
fn rotate<T: Real>(
    a: &mut ComplexMatrix<T>,
    v: &mut ComplexMatrix<T>,
    p: usize,
    q: usize,
    apq: Complex<T>,
    mag: T,
    app: T,
    aqq: T,
) {
    let n = a.rows();
    let u = apq.unscale(mag);
    let ub = u.conj();
    let theta = (aqq - app) / (T::lit(2.0) * mag);
    let t = if theta.is_zero() { T::one() } else { theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt()) };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;
    let (cc, sc) = (Complex::new(c, T::zero()), Complex::new(s, T::zero()));

    // columns: A·R and V·R
    for m in [&mut *a, &mut *v] {
        for i in 0..n {
            let xp = m[(i, p)];
            let xq = m[(i, q)];
            m[(i, p)] = xp * cc - xq * sc * ub;
            m[(i, q)] = xp * sc + xq * cc * ub;
        }
    }
    // rows: R†·A
    for j in 0..n {
        let xp = a[(p, j)];
        let xq = a[(q, j)];
        a[(p, j)] = xp * cc - xq * sc * u;
        a[(q, j)] = xp * sc + xq * cc * u;
    }
    a[(p, q)] = Complex::zero();
    a[(q, p)] = Complex::zero();
    a[(p, p)].im = T::zero();
    a[(q, q)].im = T::zero();
}

/// `e^{-iHt}` for Hermitian `H`.
pub fn matrix_exponential<T: Real>(h: &ComplexMatrix<T>, t: T) -> Result<ComplexMatrix<T>> {
    Ok(hermitian_eigen(h)?.propagator(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clock3() -> ComplexMatrix<f64> {
        ComplexMatrix::from_real(3, 3, |i, j| if i.abs_diff(j) == 1 { 1.0 } else { 0.0 })
    }

    #[test]
    fn zero_generator_gives_identity() {
        for n in [1, 2, 5] {
            let g = matrix_exponential(&ComplexMatrix::<f64>::zeros(n, n), 3.7).unwrap();
            assert_eq!(g.max_abs_diff(&ComplexMatrix::identity(n)), 0.0);
        }
    }

    #[test]
    fn three_site_chain_transfers_fully_at_pi_over_root_two() {
        let t = std::f64::consts::PI / 2f64.sqrt();
        let g = matrix_exponential(&clock3(), t).unwrap();
        // (cos(√2 t) − 1)/2 = −1
        assert!((g[(2, 0)] - Complex::new(-1.0, 0.0)).norm() < 1e-12, "{}", g[(2, 0)]);
        assert!(g.unitary_deviation() < 1e-12);
    }

    #[test]
    fn eigenvalues_of_three_site_chain() {
        let e = hermitian_eigen(&clock3()).unwrap();
        let r2 = 2f64.sqrt();
        for (got, want) in e.values.iter().zip([-r2, 0.0, r2]) {
            assert!((got - want).abs() < 1e-14);
        }
        assert!(e.residual(&clock3()) < 1e-13);
    }

    #[test]
    fn complex_off_diagonal_is_handled() {
        let h = ComplexMatrix::new(
            2,
            2,
            vec![Complex::new(1.0, 0.0), Complex::new(0.3, -0.4), Complex::new(0.3, 0.4), Complex::new(-2.0, 0.0)],
        )
        .unwrap();
        let e = hermitian_eigen(&h).unwrap();
        // trace −1, det −2 − 0.25
        let disc = (9.0f64 + 4.0 * 0.25).sqrt();
        assert!((e.values[0] - (-1.0 - disc) / 2.0).abs() < 1e-14);
        assert!((e.values[1] - (-1.0 + disc) / 2.0).abs() < 1e-14);
        assert!(e.residual(&h) < 1e-14);
    }

    #[test]
    fn rejects_bad_input() {
        let rect = ComplexMatrix::<f64>::zeros(2, 3);
        assert!(matches!(matrix_exponential(&rect, 1.0), Err(Error::NotSquare { .. })));
        let skew = ComplexMatrix::from_real(2, 2, |i, j| if i < j { 1.0 } else { 0.0 });
        assert!(matches!(matrix_exponential(&skew, 1.0), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn single_precision_path() {
        let h = ComplexMatrix::<f32>::from_real(3, 3, |i, j| if i.abs_diff(j) == 1 { 1.0 } else { 0.0 });
        let g = matrix_exponential(&h, 1.1f32).unwrap();
        assert!(g.unitary_deviation() < 1e-5);
    }
}
