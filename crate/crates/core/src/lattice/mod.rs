//! Host B: Euclidean lattices over `Z` with the Arakelov degree `-½ log det`.

pub mod enumerate;
pub mod euclid;
pub mod host;
pub mod random;
pub mod zmat;

pub use enumerate::{destabilizer_box, destabilizer_enum, EnumConfig, EnumResult};
pub use euclid::{
    arakelov_degree, arakelov_degree_of_generators, is_compatible, is_psd, quotient_gram_via_dual, quotient_lattice, saturate,
    EuclideanLattice, LatticeMap, LatticeProjection, Sublattice,
};
pub use host::LatticeHost;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("expected length {expected}, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("Gram matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("Gram matrix is not positive definite (leading minor of size {0})")]
    NotPositiveDefinite(usize),
    #[error("{rows} generators span a lattice of rank {rank}")]
    RankDeficient { rows: usize, rank: usize },
    #[error("sublattice is not saturated")]
    NotSaturated,
    #[error("map Z^{src} -> Z^{tgt} does not fit lattices of ranks {x} and {y}")]
    MapShape { src: usize, tgt: usize, x: usize, y: usize },
}
