//! Harder–Narasimhan filtrations computed exactly.
//!
//! [`engine`] is generic over a host category. Two hosts ship with the crate:
//! multi-filtered vector spaces over `F_p` ([`fp`]) and Euclidean lattices with the Arakelov
//! degree ([`lattice`]).

pub mod degree;
pub mod engine;
pub mod filtration;
pub mod fp;
pub mod lattice;
pub mod rational;
pub mod render;
pub mod subobject;
pub mod suites;

pub use degree::{exact_slope_compare, DegreeError, ExactDegree, ExtendedSlope, Slope};
pub use engine::{
    hn_filtration, hn_measure, hn_polygon, hn_sequence, is_semistable, mu_max, mu_min, slope, HnCategory, HnDecomposition,
    HnError, HostError, SlopeIndex,
};
pub use filtration::{Orientation, StepFiltration};
pub use rational::Q;
