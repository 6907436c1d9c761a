//! Construction and homological analysis of n-trivial extension rings
//! `S = R ⋉ₙ (M₁,…,Mₙ)` over prime fields.
//!
//! The crate is layered bottom-up:
//!
//! - [`linalg`]: exact dense linear algebra over `F_p` (rref, kernels,
//!   Kronecker products, quotient maps),
//! - [`algebra`]: finite-dimensional unital algebras given by structure
//!   constants, plus algebra isomorphism search,
//! - [`bimodule`]: bimodules, balanced tensor products, hom spaces and the
//!   pre-product system `Φ`,
//! - [`extension`]: assembly of the extension ring `S` as a graded
//!   structure-constant algebra,
//! - [`smodule`]: S-modules in `(X, f)` right-extension form, `(X, g)` left
//!   form, and raw S-action form, with conversions and isomorphism testing,
//! - [`functors`]: the functors `T, C, U, Z, H, K` and their adjunctions,
//! - [`homtests`]: projectivity / injectivity / flatness verdicts, homological
//!   dimensions, and independent brute-force oracles,
//! - [`io`]: the JSON interchange format consumed by the `ntriv` binary.

pub mod algebra;
pub mod bimodule;
pub mod extension;
pub mod functors;
pub mod homtests;
pub mod io;
pub mod linalg;
pub mod smodule;

/// Errors surfaced by constructors and entry points. Mathematical failures
/// (a table that is not associative, a module that violates its axioms) are
/// reported through validation reports instead, so they can name witnesses.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds 2^31")]
    ModulusTooLarge(u64),
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("entry {value} out of range for F_{p}")]
    EntryRange { value: u32, p: u32 },
    #[error("mixed fields: F_{0} vs F_{1}")]
    FieldMismatch(u32, u32),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
