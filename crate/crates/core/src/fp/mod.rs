//! Host A: finite-dimensional `F_p`-vector spaces carrying several weighted filtrations.

pub mod destab;
pub mod linalg;
pub mod multifilt;
pub mod random;
mod subspace;

pub use destab::{destabilizer_bruteforce, destabilizer_closure, closure_lattice, closure_candidate, Certification, DestabilizerConfig, DestabilizerMethod};
pub use multifilt::{FpHost, MultiFiltSpace};
pub use subspace::{FpDirectSum, FpMap, FpSpace, SubspaceFp};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FpError {
    #[error("{0} is not a supported prime")]
    NotPrime(u64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("prime mismatch: expected {expected}, got {got}")]
    PrimeMismatch { expected: u64, got: u64 },
    #[error("coefficient vector length {alpha} does not match {filtrations} filtrations")]
    AlphaLength { alpha: usize, filtrations: usize },
    #[error("coefficient {0} is negative")]
    NegativeAlpha(String),
    #[error("filtration {index}: {source}")]
    Filtration { index: usize, source: crate::filtration::FiltrationError },
    #[error("filtration {0} must be left-oriented")]
    NotLeft(usize),
    #[error("maps must go between objects with the same coefficients")]
    StructureMismatch,
}
