//! Exact symbolic engine for covariant first-order differential calculi on the
//! quantum projective spaces CP_q^{N-1}.
//!
//! The crate is organised along the computational pipeline:
//!
//! - [`coeff`]: exact arithmetic in Q and in Q(q), the field of rational
//!   functions in the deformation parameter, plus evaluation at rational
//!   sample points (sampled mode).
//! - [`tensor`]: sparse multi-index tensors over exact scalars with named-axis
//!   contraction.
//! - [`rmatrix`]: the R-matrix of SU_q(N), its derived family (Rc, Rl, Rr,
//!   their inverses, and the four 8-index RCP contractions), the q-constants
//!   s+, si+, ..., and the identity suite (inverse, Hecke, braid).
//! - [`repdecomp`]: Young frames, Weyl dimensions, Littlewood-Richardson
//!   products, the pi(k) tower of corepresentations and morphism counting.
//! - [`algebra`]: the quotient algebra CP_q^{N-1} with computable normal
//!   forms, the convention resolver for the weighted sums, and the quantum
//!   sphere S_q^{2N-1} model used as the faithful computational
//!   representation at large N.
//! - [`calculus`]: one-forms, the 27-term bimodule ansatz, the necessary
//!   conditions kl1..kl8, the exact linear solver over Q(q) and the
//!   verification of the classified calculi.
//! - [`report`]: machine-readable reports shared with the CLI.

pub mod coeff;
pub mod tensor;
pub mod rmatrix;
pub mod repdecomp;
pub mod algebra;
pub mod calculus;
pub mod report;

pub use coeff::{Rat, QScalar, Field, SymbolicField, SampledField};
pub use tensor::{Tensor, ContractionPlan};
pub use rmatrix::{RFamily, QConstants};
pub use repdecomp::{Frame, Decomp};
pub use algebra::{Convention, Word, AlgElem};
