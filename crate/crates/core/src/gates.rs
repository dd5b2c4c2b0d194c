//! Circuit-to-Hamiltonian evolution with explicit gate matrices.
//!
//! The reduced Hamiltonian lives on `clock ⊗ register` restricted to the
//! single-excitation sector, with basis index `site·2ⁿ + r`. Its block
//! `(i+1, i)` is `U_{i+1}` and block `(i, i+1)` is `U_{i+1}†`. The propagator
//! then has the block structure
//!
//! ```text
//! G_ij(t) = a_ij(t) · U_i ⋯ U_{j+1}        i > j
//! G_ii(t) = a_ii(t) · I
//! G_ij(t) = a_ij(t) · U_{i+1}† ⋯ U_j†      i < j
//! ```
//!
//! where `a_ij` are the bare clock amplitudes of [`crate::clock`].

use num_complex::Complex;
use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::clock::ClockSpectrum;
use crate::error::{Error, Result};
use crate::numerics::matrix::{inner, vec_norm};
use crate::numerics::{hermitian_eigen, ComplexMatrix, HermitianEigen};
use crate::random::{random_unitary, seeded};
use crate::scalar::Real;
use crate::tolerance;

/// Ordered gates `U_1 … U_k` on an `n`-qubit register.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitarySequence<T> {
    n: usize,
    gates: Vec<ComplexMatrix<T>>,
}

impl<T: Real> UnitarySequence<T> {
    pub fn new(n: usize, gates: Vec<ComplexMatrix<T>>) -> Result<Self> {
        if gates.is_empty() {
            return Err(Error::InvalidGateCount { k: 0, reason: "a gate sequence must be nonempty" });
        }
        let dim = 1usize << n;
        for (idx, g) in gates.iter().enumerate() {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "gate {} is {}x{}, expected {dim}x{dim} for n = {n}",
                    idx + 1,
                    g.rows(),
                    g.cols()
                )));
            }
            let dev = g.unitary_deviation();
            if !(dev <= T::tol(tolerance::UNITARY)) {
                return Err(Error::NotUnitary { index: idx + 1, deviation: dev.as_f64() });
            }
        }
        Ok(Self { n, gates })
    }

    pub fn identity(n: usize, k: usize) -> Result<Self> {
        Self::new(n, vec![ComplexMatrix::identity(1 << n); k])
    }

    pub fn random(n: usize, k: usize, rng: &mut impl Rng) -> Result<Self> {
        Self::new(n, (0..k).map(|_| random_unitary(1 << n, rng)).collect())
    }

    pub fn k(&self) -> usize {
        self.gates.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Register dimension `2ⁿ`.
    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn gates(&self) -> &[ComplexMatrix<T>] {
        &self.gates
    }

    /// `U_i`, 1-based.
    pub fn gate(&self, i: usize) -> &ComplexMatrix<T> {
        &self.gates[i - 1]
    }

    /// Predicted unitary string of block `(i, j)`.
    pub fn string(&self, i: usize, j: usize) -> ComplexMatrix<T> {
        let mut s = ComplexMatrix::identity(self.dim());
        if i > j {
            for g in j + 1..=i {
                s = self.gate(g) * &s;
            }
        } else if i < j {
            for g in i + 1..=j {
                s = &s * &self.gate(g).adjoint();
            }
        }
        s
    }

    /// `U_k ⋯ U_1`.
    pub fn product(&self) -> ComplexMatrix<T> {
        self.string(self.k(), 0)
    }

    /// `U_k ⋯ U_1 |ψ⟩`.
    pub fn apply(&self, state: &[Complex<T>]) -> Vec<Complex<T>> {
        self.gates.iter().fold(state.to_vec(), |v, g| g.mul_vec(&v))
    }
}

fn check_cap(dim: usize, cap: usize) -> Result<()> {
    if dim > cap {
        return Err(Error::CapacityExceeded { dim, cap });
    }
    Ok(())
}

/// Block-tridiagonal single-excitation Hamiltonian, default size cap.
pub fn build_reduced_hamiltonian<T: Real>(seq: &UnitarySequence<T>) -> Result<ComplexMatrix<T>> {
    build_reduced_hamiltonian_capped(seq, tolerance::DENSE_SIZE_CAP)
}

pub fn build_reduced_hamiltonian_capped<T: Real>(seq: &UnitarySequence<T>, cap: usize) -> Result<ComplexMatrix<T>> {
    let d = seq.dim();
    let sites = seq.k() + 1;
    check_cap(sites * d, cap)?;
    let mut h = ComplexMatrix::zeros(sites * d, sites * d);
    for i in 0..seq.k() {
        let u = seq.gate(i + 1);
        h.set_block((i + 1) * d, i * d, u);
        h.set_block(i * d, (i + 1) * d, &u.adjoint());
    }
    Ok(h)
}

/// Clock-occupation index of the configuration with only `site` occupied.
/// Site 0 is the most significant bit of the `(k+1)`-bit occupation word.
pub fn single_occupation_index(site: usize, k: usize) -> usize {
    1 << (k - site)
}

fn check_full_space<T>(seq: &UnitarySequence<T>) -> Result<()> {
    if seq.gates.len() > tolerance::FULL_SPACE_MAX_GATES {
        return Err(Error::InvalidGateCount {
            k: seq.gates.len(),
            reason: "full occupation space allows at most 8 gates",
        });
    }
    if seq.n > tolerance::FULL_SPACE_MAX_QUBITS {
        return Err(Error::OutOfRange {
            name: "n",
            value: seq.n as f64,
            expected: "at most 2 register qubits in the full occupation space",
        });
    }
    Ok(())
}

/// Hamiltonian on the full `2^{k+1}`-dimensional clock occupation space
/// tensored with the register: `Σ_i q†_{i+1} q_i ⊗ U_{i+1} + h.c.` with
/// hard-core hopping. Basis index is `occupation·2ⁿ + r`.
pub fn build_full_clock_hamiltonian<T: Real>(seq: &UnitarySequence<T>) -> Result<ComplexMatrix<T>> {
    check_full_space(seq)?;
    let k = seq.k();
    let d = seq.dim();
    let configs = 1usize << (k + 1);
    let mut h = ComplexMatrix::zeros(configs * d, configs * d);
    for i in 0..k {
        let (from_bit, to_bit) = (single_occupation_index(i, k), single_occupation_index(i + 1, k));
        let u = seq.gate(i + 1);
        let ud = u.adjoint();
        for c in 0..configs {
            if c & from_bit == 0 || c & to_bit != 0 {
                continue;
            }
            let c2 = (c & !from_bit) | to_bit;
            h.set_block(c2 * d, c * d, u);
            h.set_block(c * d, c2 * d, &ud);
        }
    }
    Ok(h)
}

/// Diagonal of the total occupation-number operator on the full space.
pub fn number_operator_diagonal(k: usize, n: usize) -> Vec<usize> {
    let d = 1usize << n;
    (0..(1usize << (k + 1)) * d).map(|idx| (idx / d).count_ones() as usize).collect()
}

/// `‖[H, N]‖_max`, using that `N` is diagonal: `[H,N]_ab = H_ab (N_b − N_a)`.
pub fn number_conservation_residual<T: Real>(h: &ComplexMatrix<T>, number: &[usize]) -> T {
    let mut worst = T::zero();
    for a in 0..h.rows() {
        for b in 0..h.cols() {
            let dn = number[b] as f64 - number[a] as f64;
            if dn != 0.0 {
                worst = worst.max(h[(a, b)].norm() * T::lit(dn.abs()));
            }
        }
    }
    worst
}

/// Extract the single-occupation sector of a full-space matrix, ordered by site.
pub fn restrict_to_single_occupation<T: Real>(full: &ComplexMatrix<T>, k: usize, n: usize) -> ComplexMatrix<T> {
    let d = 1usize << n;
    let map = |idx: usize| single_occupation_index(idx / d, k) * d + idx % d;
    ComplexMatrix::from_fn((k + 1) * d, (k + 1) * d, |i, j| full[(map(i), map(j))])
}

/// Block view of `e^{-iHt}` for a gate sequence.
#[derive(Clone, Debug)]
pub struct BlockEvolution<T> {
    pub k: usize,
    pub n: usize,
    pub t: T,
    /// Row-major `(k+1)²` array of `2ⁿ×2ⁿ` blocks.
    pub blocks: Vec<ComplexMatrix<T>>,
    /// `a_ij(t)` recovered as `tr(S_ij† G_ij)/2ⁿ`.
    pub clock_coeffs: ComplexMatrix<T>,
}

impl<T: Real> BlockEvolution<T> {
    pub fn block(&self, i: usize, j: usize) -> &ComplexMatrix<T> {
        &self.blocks[i * (self.k + 1) + j]
    }

    pub fn assemble(&self) -> ComplexMatrix<T> {
        let d = 1usize << self.n;
        let sites = self.k + 1;
        let mut g = ComplexMatrix::zeros(sites * d, sites * d);
        for i in 0..sites {
            for j in 0..sites {
                g.set_block(i * d, j * d, self.block(i, j));
            }
        }
        g
    }
}

/// Reusable eigendecomposition of one sequence's reduced Hamiltonian.
#[derive(Clone, Debug)]
pub struct GatePropagator<T> {
    seq: UnitarySequence<T>,
    eigen: HermitianEigen<T>,
    strings: Vec<ComplexMatrix<T>>,
}

impl<T: Real> GatePropagator<T> {
    pub fn new(seq: &UnitarySequence<T>) -> Result<Self> {
        let h = build_reduced_hamiltonian(seq)?;
        let eigen = hermitian_eigen(&h)?;
        let sites = seq.k() + 1;
        let strings = (0..sites * sites).map(|ij| seq.string(ij / sites, ij % sites)).collect();
        Ok(Self { seq: seq.clone(), eigen, strings })
    }

    pub fn sequence(&self) -> &UnitarySequence<T> {
        &self.seq
    }

    pub fn propagator(&self, t: T) -> ComplexMatrix<T> {
        self.eigen.propagator(t)
    }

    pub fn evolve(&self, t: T) -> BlockEvolution<T> {
        let g = self.eigen.propagator(t);
        let (k, n, d) = (self.seq.k(), self.seq.n(), self.seq.dim());
        let sites = k + 1;
        let mut blocks = Vec::with_capacity(sites * sites);
        let mut coeffs = ComplexMatrix::zeros(sites, sites);
        for i in 0..sites {
            for j in 0..sites {
                let b = g.block(i * d, j * d, d, d);
                coeffs[(i, j)] = project(&b, &self.strings[i * sites + j]);
                blocks.push(b);
            }
        }
        BlockEvolution { k, n, t, blocks, clock_coeffs: coeffs }
    }
}

/// `tr(S†B)/dim`.
fn project<T: Real>(b: &ComplexMatrix<T>, s: &ComplexMatrix<T>) -> Complex<T> {
    let d = b.rows();
    let mut acc = Complex::zero();
    for r in 0..d {
        for c in 0..d {
            acc += s[(r, c)].conj() * b[(r, c)];
        }
    }
    acc.unscale(T::count(d))
}

/// `e^{-iHt}` of the reduced Hamiltonian, split into blocks.
pub fn evolve<T: Real>(seq: &UnitarySequence<T>, t: T) -> Result<BlockEvolution<T>> {
    Ok(GatePropagator::new(seq)?.evolve(t))
}

/// Outcome of checking a [`BlockEvolution`] against the block-structure theorem.
#[derive(Clone, Debug, Serialize)]
pub struct StructureReport<T> {
    pub k: usize,
    pub n: usize,
    pub t: T,
    pub tol: T,
    /// `max_ij ‖G_ij − a_ij·S_ij‖_max`
    pub max_residual: T,
    pub worst_block: (usize, usize),
    /// `max_ij ||a_ij| − |a'_ij||` against an independent random sequence
    pub independence_deviation: T,
    /// `max_ij |a_ij − a_ij^{spectral}|`
    pub spectral_deviation: T,
    pub unitarity_deviation: T,
    pub passed: bool,
}

/// Seed of the comparison sequence used for the gate-independence check.
pub const INDEPENDENCE_SEED: u64 = 0x5eed_c10c;

/// Max `||a_ij| − |b_ij||` over two coefficient tables.
pub fn coefficient_modulus_deviation<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> T {
    a.entries().iter().zip(b.entries()).fold(T::zero(), |m, (x, y)| m.max((x.norm() - y.norm()).abs()))
}

pub fn verify_structure<T: Real>(
    ev: &BlockEvolution<T>,
    seq: &UnitarySequence<T>,
    tol: T,
) -> Result<StructureReport<T>> {
    let sites = ev.k + 1;
    if ev.k != seq.k() || ev.n != seq.n() || ev.blocks.len() != sites * sites {
        return Err(Error::DimensionMismatch(format!(
            "evolution has k = {}, n = {}; sequence has k = {}, n = {}",
            ev.k,
            ev.n,
            seq.k(),
            seq.n()
        )));
    }
    let mut max_residual = T::zero();
    let mut worst_block = (0, 0);
    for i in 0..sites {
        for j in 0..sites {
            let predicted = seq.string(i, j).scale(ev.clock_coeffs[(i, j)]);
            let r = ev.block(i, j).max_abs_diff(&predicted);
            if r > max_residual {
                max_residual = r;
                worst_block = (i, j);
            }
        }
    }

    let other = UnitarySequence::random(
        seq.n(),
        seq.k(),
        &mut seeded(INDEPENDENCE_SEED ^ (seq.k() as u64) << 8 ^ seq.n() as u64),
    )?;
    let other_ev = evolve(&other, ev.t)?;
    let independence_deviation = coefficient_modulus_deviation(&ev.clock_coeffs, &other_ev.clock_coeffs);

    let spec = ClockSpectrum::<T>::new(ev.k)?;
    let mut spectral_deviation = T::zero();
    for i in 0..sites {
        for j in 0..sites {
            spectral_deviation = spectral_deviation.max((ev.clock_coeffs[(i, j)] - spec.amplitude(i, j, ev.t)?).norm());
        }
    }

    let unitarity_deviation = ev.assemble().unitary_deviation();
    let passed = max_residual <= tol
        && independence_deviation <= tol
        && spectral_deviation <= tol
        && unitarity_deviation <= T::tol(tolerance::PROPAGATOR_UNITARY);
    Ok(StructureReport {
        k: ev.k,
        n: ev.n,
        t: ev.t,
        tol,
        max_residual,
        worst_block,
        independence_deviation,
        spectral_deviation,
        unitarity_deviation,
        passed,
    })
}

/// Exact `e^{-iHt}` for two gates from `I − iH sin(√2t)/√2 + H²(cos√2t − 1)/2`.
pub fn k2_closed_form<T: Real>(u1: &ComplexMatrix<T>, u2: &ComplexMatrix<T>, t: T) -> Result<ComplexMatrix<T>> {
    let d = u1.ensure_square()?;
    if u2.rows() != d || u2.cols() != d {
        return Err(Error::DimensionMismatch(format!("U1 is {d}x{d}, U2 is {}x{}", u2.rows(), u2.cols())));
    }
    for (idx, u) in [u1, u2].into_iter().enumerate() {
        let dev = u.unitary_deviation();
        if !(dev <= T::tol(tolerance::UNITARY)) {
            return Err(Error::NotUnitary { index: idx + 1, deviation: dev.as_f64() });
        }
    }
    let r2 = T::lit(2.0).sqrt();
    let (s, c) = (r2 * t).sin_cos();
    let half = T::lit(0.5);
    let hop = Complex::new(T::zero(), -s / r2);
    let end = Complex::new((c - T::one()) * half, T::zero());
    let edge = Complex::new((c + T::one()) * half, T::zero());
    let id = ComplexMatrix::identity(d);

    let mut g = ComplexMatrix::zeros(3 * d, 3 * d);
    g.set_block(0, 0, &id.scale(edge));
    g.set_block(0, d, &u1.adjoint().scale(hop));
    g.set_block(0, 2 * d, &(&u1.adjoint() * &u2.adjoint()).scale(end));
    g.set_block(d, 0, &u1.scale(hop));
    g.set_block(d, d, &id.scale(Complex::new(c, T::zero())));
    g.set_block(d, 2 * d, &u2.adjoint().scale(hop));
    g.set_block(2 * d, 0, &(u2 * u1).scale(end));
    g.set_block(2 * d, d, &u2.scale(hop));
    g.set_block(2 * d, 2 * d, &id.scale(edge));
    Ok(g)
}

/// Register state conditioned on the clock reading `k`, and the probability
/// of that reading.
#[derive(Clone, Debug)]
pub struct ComputationOutcome<T> {
    /// Normalized conditional state, or `None` when the clock never reached `k`.
    pub state: Option<Vec<Complex<T>>>,
    pub probability: T,
}

/// Evolve `|0⟩_c ⊗ |ψ_in⟩` for time `t` and project the clock onto `|k⟩_c`.
pub fn run_computation<T: Real>(seq: &UnitarySequence<T>, input: &[Complex<T>], t: T) -> Result<ComputationOutcome<T>> {
    if input.len() != seq.dim() {
        return Err(Error::DimensionMismatch(format!(
            "input has {} amplitudes, register needs {}",
            input.len(),
            seq.dim()
        )));
    }
    let norm = vec_norm(input);
    if !((norm - T::one()).abs() <= T::tol(tolerance::STATE_NORM)) {
        return Err(Error::UnnormalizedState { norm: norm.as_f64() });
    }
    let ev = evolve(seq, t)?;
    let out = ev.block(seq.k(), 0).mul_vec(input);
    let amp = vec_norm(&out);
    let probability = amp * amp;
    let state = if amp > T::epsilon() { Some(out.iter().map(|z| z.unscale(amp)).collect()) } else { None };
    Ok(ComputationOutcome { state, probability })
}

/// `|⟨a|b⟩|`, insensitive to global phase.
pub fn state_overlap<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> T {
    inner(a, b).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::matrix_exponential;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn rejects_bad_sequences() {
        assert!(UnitarySequence::<f64>::new(1, vec![]).is_err());
        let not_unitary = ComplexMatrix::from_real(2, 2, |_, _| 1.0);
        assert!(matches!(UnitarySequence::new(1, vec![not_unitary]), Err(Error::NotUnitary { index: 1, .. })));
        let wrong_dim = ComplexMatrix::<f64>::identity(4);
        assert!(matches!(UnitarySequence::new(1, vec![wrong_dim]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn identity_gates_give_kron_of_clock() {
        let seq = UnitarySequence::<f64>::identity(1, 3).unwrap();
        let h = build_reduced_hamiltonian(&seq).unwrap();
        let clock = ComplexMatrix::from_real(4, 4, |i, j| if i.abs_diff(j) == 1 { 1.0 } else { 0.0 });
        assert_eq!(h, clock.kron(&ComplexMatrix::identity(2)));
    }

    #[test]
    fn reduced_hamiltonian_cap() {
        let seq = UnitarySequence::<f64>::identity(2, 9).unwrap();
        assert!(matches!(
            build_reduced_hamiltonian_capped(&seq, 39),
            Err(Error::CapacityExceeded { dim: 40, cap: 39 })
        ));
    }

    #[test]
    fn strings_follow_hop_direction() {
        let seq = UnitarySequence::<f64>::random(1, 3, &mut seeded(3)).unwrap();
        let (u1, u2, u3) = (seq.gate(1), seq.gate(2), seq.gate(3));
        assert!(seq.string(3, 1).max_abs_diff(&(u3 * u2)) < 1e-15);
        assert!(seq.string(0, 2).max_abs_diff(&(&u1.adjoint() * &u2.adjoint())) < 1e-15);
        assert_eq!(seq.string(2, 2), ComplexMatrix::identity(2));
    }

    #[test]
    fn full_space_two_gate_pattern() {
        // register of one state: gates are phases
        let u1 = ComplexMatrix::new(1, 1, vec![c(0.6, 0.8)]).unwrap();
        let u2 = ComplexMatrix::new(1, 1, vec![c(0.0, 1.0)]).unwrap();
        let seq = UnitarySequence::new(0, vec![u1, u2]).unwrap();
        let h = build_full_clock_hamiltonian(&seq).unwrap();
        assert_eq!((h.rows(), h.cols()), (8, 8));
        // |100⟩ → |010⟩ by U1, |010⟩ → |001⟩ by U2, |110⟩ → |101⟩ by U2, |101⟩ → |011⟩ by U1
        assert_eq!(h[(2, 4)], c(0.6, 0.8));
        assert_eq!(h[(1, 2)], c(0.0, 1.0));
        assert_eq!(h[(5, 6)], c(0.0, 1.0));
        assert_eq!(h[(3, 5)], c(0.6, 0.8));
        assert_eq!(h.hermitian_deviation(), 0.0);
        let nonzero = h.entries().iter().filter(|z| !z.is_zero()).count();
        assert_eq!(nonzero, 8);
    }

    #[test]
    fn single_sector_matches_reduced() {
        let seq = UnitarySequence::<f64>::random(1, 3, &mut seeded(11)).unwrap();
        let full = build_full_clock_hamiltonian(&seq).unwrap();
        let reduced = build_reduced_hamiltonian(&seq).unwrap();
        assert_eq!(restrict_to_single_occupation(&full, 3, 1), reduced);
        let number = number_operator_diagonal(3, 1);
        assert_eq!(number_conservation_residual(&full, &number), 0.0);
    }

    #[test]
    fn full_space_limits() {
        assert!(build_full_clock_hamiltonian(&UnitarySequence::<f64>::identity(1, 9).unwrap()).is_err());
        assert!(build_full_clock_hamiltonian(&UnitarySequence::<f64>::identity(3, 2).unwrap()).is_err());
    }

    #[test]
    fn two_gate_transfer_applies_product() {
        let seq = UnitarySequence::<f64>::random(1, 2, &mut seeded(5)).unwrap();
        let t = std::f64::consts::PI / 2f64.sqrt();
        let ev = evolve(&seq, t).unwrap();
        let want = seq.product().scale(c(-1.0, 0.0));
        assert!(ev.block(2, 0).max_abs_diff(&want) < 1e-12);
        assert!((ev.clock_coeffs[(2, 0)] - c(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn evolution_at_zero_is_identity() {
        let seq = UnitarySequence::<f64>::random(2, 3, &mut seeded(9)).unwrap();
        let g = evolve(&seq, 0.0).unwrap().assemble();
        assert!(g.max_abs_diff(&ComplexMatrix::identity(16)) < 1e-12);
    }

    #[test]
    fn structure_holds_for_random_gates() {
        let seq = UnitarySequence::<f64>::random(2, 4, &mut seeded(21)).unwrap();
        let ev = evolve(&seq, 3.3).unwrap();
        let rep = verify_structure(&ev, &seq, 1e-9).unwrap();
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn verify_rejects_mismatched_pair() {
        let seq = UnitarySequence::<f64>::random(1, 3, &mut seeded(2)).unwrap();
        let other = UnitarySequence::<f64>::random(1, 4, &mut seeded(2)).unwrap();
        let ev = evolve(&seq, 1.0).unwrap();
        assert!(verify_structure(&ev, &other, 1e-9).is_err());
    }

    #[test]
    fn closed_form_matches_dense_exponential() {
        let seq = UnitarySequence::<f64>::random(1, 2, &mut seeded(8)).unwrap();
        let h = build_reduced_hamiltonian(&seq).unwrap();
        for t in [0.0, 0.3, 1.9, 4.4] {
            let g = k2_closed_form(seq.gate(1), seq.gate(2), t).unwrap();
            assert!(g.max_abs_diff(&matrix_exponential(&h, t).unwrap()) < 1e-12, "t={t}");
            assert!(g.unitary_deviation() < 1e-12);
            let centre = g.block(2, 2, 2, 2);
            assert!(centre.max_abs_diff(&ComplexMatrix::identity(2).scale(c((2f64.sqrt() * t).cos(), 0.0))) < 1e-15);
        }
    }

    #[test]
    fn closed_form_rejects_mismatch() {
        let u1 = ComplexMatrix::<f64>::identity(2);
        let u2 = ComplexMatrix::<f64>::identity(4);
        assert!(k2_closed_form(&u1, &u2, 1.0).is_err());
    }

    #[test]
    fn computation_lands_on_output_state() {
        let seq = UnitarySequence::<f64>::random(1, 2, &mut seeded(4)).unwrap();
        let input = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let out = run_computation(&seq, &input, std::f64::consts::PI / 2f64.sqrt()).unwrap();
        assert!((out.probability - 1.0).abs() < 1e-12);
        let want = seq.apply(&input);
        assert!((state_overlap(out.state.as_ref().unwrap(), &want) - 1.0).abs() < 1e-12);

        let idle = run_computation(&seq, &input, 0.0).unwrap();
        assert!(idle.probability < 1e-28);
        assert!(run_computation(&seq, &[c(1.0, 0.0), c(1.0, 0.0)], 1.0).is_err());
    }
}
