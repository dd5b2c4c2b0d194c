//! Feynman's circuit-to-Hamiltonian clock: closed-form clock dynamics, dense
//! gate evolution, peak and scaling analysis, large-k asymptotics, and the
//! adiabatic gap baseline.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the
//! `*64`/`*32` aliases below fix the scalar for callers that do not care.

pub mod adiabatic;
pub mod asymptotics;
pub mod clock;
pub mod error;
pub mod gates;
pub mod io;
pub mod numerics;
pub mod peaks;
pub mod random;
pub mod scalar;
pub mod tolerance;
pub mod verification;

pub use error::{Error, Result};
pub use scalar::Real;

pub type ComplexMatrix64 = numerics::ComplexMatrix<f64>;
pub type ComplexMatrix32 = numerics::ComplexMatrix<f32>;
pub type SymTridiag64 = numerics::SymTridiag<f64>;
pub type SymTridiag32 = numerics::SymTridiag<f32>;
pub type FitResult64 = numerics::FitResult<f64>;
pub type ClockSpectrum64 = clock::ClockSpectrum<f64>;
pub type ClockSpectrum32 = clock::ClockSpectrum<f32>;
pub type AmplitudeSeries64 = clock::AmplitudeSeries<f64>;
pub type UnitarySequence64 = gates::UnitarySequence<f64>;
pub type UnitarySequence32 = gates::UnitarySequence<f32>;
pub type BlockEvolution64 = gates::BlockEvolution<f64>;
pub type PeakReport64 = peaks::PeakReport<f64>;
pub type PeakReport32 = peaks::PeakReport<f32>;
pub type SweepTable64 = peaks::SweepTable<f64>;
pub type RuntimeEstimate64 = peaks::RuntimeEstimate<f64>;
pub type AsymptoticReport64 = asymptotics::AsymptoticReport<f64>;
pub type GapScan64 = adiabatic::GapScan<f64>;
pub type GapScan32 = adiabatic::GapScan<f32>;
