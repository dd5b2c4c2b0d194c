//! Numeric kernels shared by the rest of the crate.

pub mod expm;
pub mod fit;
pub mod matrix;
pub mod optimize;
pub mod quadrature;
pub mod tridiag;

pub use expm::{hermitian_eigen, matrix_exponential, HermitianEigen};
pub use fit::{fit_affine, fit_coefficient_fixed_exponent, fit_power_law, FitKind, FitResult};
pub use matrix::ComplexMatrix;
pub use quadrature::{oscillatory_integral_cos_cubic, Truncation};
pub use tridiag::{tridiag_eigenvalues, SymTridiag};
