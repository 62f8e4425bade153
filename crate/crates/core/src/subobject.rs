//! The interface a host category exposes for its subobjects and morphisms.

use std::fmt::Debug;

/// Subobjects of a fixed ambient object, with a rank function.
///
/// Implementations keep subobjects in a canonical form so that `==` is subobject equality.
/// Rank must be monotone under containment, and containment plus equal rank must imply
/// equality.
pub trait SubobjectLattice {
    type Sub: Clone + PartialEq + Debug;

    fn rank(&self, s: &Self::Sub) -> usize;
    /// `small ⊆ big`.
    fn contains(&self, big: &Self::Sub, small: &Self::Sub) -> bool;
    fn intersect(&self, a: &Self::Sub, b: &Self::Sub) -> Self::Sub;
    fn sum(&self, a: &Self::Sub, b: &Self::Sub) -> Self::Sub;
    fn zero(&self) -> Self::Sub;
    fn full(&self) -> Self::Sub;

    fn ambient_rank(&self) -> usize {
        self.rank(&self.full())
    }
}

/// A morphism between ambient objects, acting on subobjects by image and preimage.
pub trait Morphism {
    type Src: Clone + PartialEq + Debug;
    type Tgt: Clone + PartialEq + Debug;

    fn image(&self, s: &Self::Src) -> Self::Tgt;
    fn preimage(&self, t: &Self::Tgt) -> Self::Src;
}

/// Hosts that can form `X ⊕ Y` and the subobject `A ⊕ B` inside it.
pub trait DirectSumHost {
    type Left;
    type Right;
    type Sum;

    fn direct_sum_sub(&self, a: &Self::Left, b: &Self::Right) -> Self::Sum;
}
