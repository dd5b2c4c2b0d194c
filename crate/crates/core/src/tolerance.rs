//! Numerical tolerances and tuning constants, stated for double precision.

/// `‖M†M − I‖_max` bound for a matrix accepted as unitary.
pub const UNITARY: f64 = 1e-10;
/// `‖H − H†‖_max` bound for a matrix accepted as Hermitian.
pub const HERMITIAN: f64 = 1e-12;
/// Unitarity bound for assembled propagators of the gate model.
pub const PROPAGATOR_UNITARY: f64 = 1e-9;
/// Block-structure residual bound for `e^{-iHt}` of the gate model.
pub const STRUCTURE: f64 = 1e-9;
/// Closed-form vs dense-exponential agreement.
pub const ORACLE: f64 = 1e-10;
/// `Σ_j |a_{j0}(t)|² = 1` bound.
pub const NORMALIZATION: f64 = 1e-10;
/// `‖[H, N]‖_max` bound for the occupation-number commutator.
pub const CONSERVATION: f64 = 1e-12;
/// Accepted deviation of an input state's norm from one.
pub const STATE_NORM: f64 = 1e-10;
/// Closed-form spectrum invariants (mirror symmetry, unit norm).
pub const SPECTRUM: f64 = 1e-12;
/// Orthogonality and eigen-equation residual for closed-form eigenvectors.
pub const EIGENVECTOR: f64 = 1e-10;

/// Largest dense dimension `(k+1)·2ⁿ` the gate model will exponentiate.
pub const DENSE_SIZE_CAP: usize = 4096;
/// Largest gate count for the full occupation-space Hamiltonian.
pub const FULL_SPACE_MAX_GATES: usize = 8;
/// Largest register size for the full occupation-space Hamiltonian.
pub const FULL_SPACE_MAX_QUBITS: usize = 2;

/// Coarse peak-scan step is `COARSE_STEP_FACTOR·(k+2)^{1/3}`, at least `MIN_COARSE_STEP`.
pub const COARSE_STEP_FACTOR: f64 = 0.05;
pub const MIN_COARSE_STEP: f64 = 0.01;
/// Golden-section refinement stops once the bracket is below this times `(k+2)`.
pub const PEAK_REFINE_REL: f64 = 1e-9;
/// Grid maxima below this probability are rounding noise, not peaks.
pub const PEAK_NOISE_FLOOR: f64 = 1e-8;
/// Chains shorter than this use the wide `[0, 2(k+2)]` search window.
pub const SMALL_CHAIN: usize = 10;
/// Slack allowed when checking `p1 ≥ p2` and refinement monotonicity.
pub const PEAK_SLACK: f64 = 1e-12;

/// Default number of uniform `s` samples in an adiabatic gap scan.
pub const GAP_GRID: usize = 257;
/// Location tolerance for the refined gap minimum.
pub const GAP_REFINE: f64 = 1e-9;

/// Minimum number of rows for any scaling fit.
pub const MIN_FIT_POINTS: usize = 3;
pub const MIN_SCALING_ROWS: usize = 5;
