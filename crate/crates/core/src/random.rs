//! Seeded random unitaries and Hermitian matrices.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::numerics::ComplexMatrix;
use crate::scalar::Real;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian<T: Real>(rng: &mut impl Rng) -> Complex<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(T::lit(re), T::lit(im))
}

/// Orthonormalize the columns of a complex Gaussian matrix (modified
/// Gram-Schmidt, two passes). Approximately Haar distributed.
pub fn random_unitary<T: Real>(dim: usize, rng: &mut impl Rng) -> ComplexMatrix<T> {
    let mut cols: Vec<Vec<Complex<T>>> = (0..dim).map(|_| (0..dim).map(|_| gaussian(rng)).collect()).collect();
    for j in 0..dim {
        for _ in 0..2 {
            for i in 0..j {
                let proj =
                    cols[i].iter().zip(&cols[j]).fold(Complex::new(T::zero(), T::zero()), |a, (x, y)| a + x.conj() * y);
                let (done, rest) = cols.split_at_mut(j);
                for (y, x) in rest[0].iter_mut().zip(&done[i]) {
                    *y -= proj * x;
                }
            }
        }
        let norm = cols[j].iter().fold(T::zero(), |a, z| a + z.norm_sqr()).sqrt();
        for z in &mut cols[j] {
            *z = z.unscale(norm);
        }
    }
    ComplexMatrix::from_fn(dim, dim, |i, j| cols[j][i])
}

/// `(A + A†)/2` for a complex Gaussian `A`.
pub fn random_hermitian<T: Real>(dim: usize, rng: &mut impl Rng) -> ComplexMatrix<T> {
    let a = ComplexMatrix::from_fn(dim, dim, |_, _| gaussian::<T>(rng));
    let half = Complex::new(T::lit(0.5), T::zero());
    (&a + &a.adjoint()).scale(half)
}

/// Uniform sample from `[lo, hi)`.
pub fn uniform<T: Real>(rng: &mut impl Rng, lo: T, hi: T) -> T {
    let u: f64 = rng.random();
    lo + (hi - lo) * T::lit(u)
}
