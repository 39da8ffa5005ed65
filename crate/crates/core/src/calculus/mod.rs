//! The first-order-differential-calculus engine: one-forms, the 27-term
//! bimodule ansatz, the necessary conditions kl1..kl8, the exact solver and
//! the verification of the classified calculi.

pub mod convention;
pub mod oneform;
pub mod engine;
pub mod conditions;
pub mod values;
pub mod solver;
pub mod sphere_calc;
pub mod verify;

pub use convention::resolve_convention;
pub use engine::{Engine, NUM_TERMS, TERM_NAMES};
pub use oneform::OneForm;
pub use values::CalculusId;
pub use solver::{solve_case, solve_report, Case, SolveOptions};
pub use verify::{factorization_check, verify_calculus};
