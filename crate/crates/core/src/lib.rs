//! Exact-arithmetic toolkit for the generalized Schur algebras `S(π)` attached
//! to tensor powers of the natural module in Lie types B, C and D.
//!
//! Everything is computed over the rationals with no floating point. The
//! modules build on each other roughly in this order:
//!
//! - [`rootdata`]: root systems, weights, dominance and the Weyl group.
//! - [`weightsets`]: signed compositions and the weight sets `Π`, `π`.
//! - [`replinalg`]: exact matrices, Chevalley generators, tensor and tower
//!   representations, minimal polynomials and operator-algebra closure.
//! - [`idempotents`]: the weight idempotents `1_λ` built from the
//!   interpolation polynomials `P₁`, `P₂`.
//! - [`presentation`]: relation checkers for both presentations, the zero
//!   locus scan and the type-B quotient witness.
//! - [`decomposition`]: Freudenthal characters, Weyl dimensions, `π₀`.
//! - [`pathmodel`]: Littelmann paths, crystals, string parametrizations.

pub mod decomposition;
pub mod error;
pub mod idempotents;
pub mod pathmodel;
pub mod presentation;
pub mod replinalg;
pub mod rootdata;
pub mod scalar;
pub mod weightsets;

pub use error::{Error, Result};
pub use rootdata::{Family, LieType, RootSystem, Weight};
pub use scalar::Rational;
pub use weightsets::WeightSet;

/// Default cap on the carrier dimension of any representation we build.
pub const DEFAULT_MAX_DIM: usize = 3000;
