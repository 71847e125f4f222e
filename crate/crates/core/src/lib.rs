//! Affine composition operators on the Hardy space of the right half-plane.
//!
//! A symbol phi(w) = a w + b with a > 0 and Re(b) >= 0 induces a bounded
//! composition operator f -> f o phi on the Hardy space of the right
//! half-plane. This crate classifies such symbols exactly, predicts the
//! operator properties (norm, normality, self-adjointness, unitarity,
//! complex symmetry, cyclicity, hypercyclicity), and verifies the
//! constructive identities behind those predictions numerically on finite
//! truncated matrix models: the adjoint formula, norm convergence,
//! commutator defects, eigenfunction families, kernel-orbit and Blaschke
//! computations, multiplication-model parameters and power-norm decay.
//!
//! All operations are pure functions on immutable values and are safe to
//! call concurrently.
//!
//! ```
//! use compop_core::{AffineSymbol, C64};
//!
//! // phi(w) = 2w + 1: type II, cyclic, not complex symmetric
//! let symbol = AffineSymbol::new(2.0, C64::new(1.0, 0.0))?;
//! let (_, profile) = symbol.classify();
//! assert!(profile.cyclic && !profile.complex_symmetric && !profile.hypercyclic);
//! assert_eq!(profile.norm, 0.5f64.sqrt());
//!
//! // its truncation fixes the kernel at 1 up to the factor 1/2
//! let op = compop_core::TruncatedOperator::assemble(&symbol, 32);
//! let v = compop_core::kernel_vector(C64::new(1.0, 0.0), 32)?.into_coeffs();
//! let av = op.apply(&v)?;
//! for (x, y) in av.iter().zip(v.iter()) {
//!     assert!((x - 0.5 * y).norm() < 1e-12);
//! }
//! # Ok::<(), compop_core::Error>(())
//! ```

pub mod error;
pub mod hardy;
pub mod io;
pub mod linalg;
pub mod series;
pub mod symbol;
pub mod verify;

pub use error::{Error, Result};
pub use hardy::{eval_basis, eval_kernel, kernel_vector, KernelVector, TruncatedOperator};
pub use series::{lft_series, taylor_via_sampling, PowerSeries, SamplingParams};
pub use symbol::{AffineSymbol, DiskModel, FixedPoint, PropertyProfile, SymbolClass};
pub use verify::{CheckReport, EigenProbe, SpectralModel};

/// Convenience alias used throughout the crate.
pub type C64 = num_complex::Complex64;
