//! Random objects, subobjects and compatible maps for each host, behind one trait so the
//! generic suites can run on both.

use super::Witness;
use crate::engine::HnCategory;
use crate::fp::{self, FpHost, FpMap, FpSpace, MultiFiltSpace};
use crate::lattice::{self, EuclideanLattice, LatticeHost, LatticeMap, Sublattice};
use num::bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const PRIMES: [u64; 3] = [2, 3, 5];

pub trait Sampler: HnCategory {
    const NAME: &'static str;

    fn object(&self, rng: &mut ChaCha8Rng) -> Self::Object;
    fn sub(&self, rng: &mut ChaCha8Rng, x: &Self::Object) -> Self::Sub;
    /// A compatible `f: x -> y` with `y` generated.
    fn map_from(&self, rng: &mut ChaCha8Rng, x: &Self::Object) -> (Self::Map, Self::Object);
    /// A compatible `f: w -> y` with `w` generated.
    fn map_into(&self, rng: &mut ChaCha8Rng, y: &Self::Object) -> (Self::Map, Self::Object);
    /// A compatible isomorphism `f: x -> y` with `y` generated.
    fn iso_from(&self, rng: &mut ChaCha8Rng, x: &Self::Object) -> (Self::Map, Self::Object);
    fn witness(x: &Self::Object) -> Witness;
}

pub fn fp_object(rng: &mut ChaCha8Rng, max_dim: usize, max_n: usize) -> MultiFiltSpace {
    let p = PRIMES[rng.gen_range(0..PRIMES.len())];
    let d = rng.gen_range(0..=max_dim);
    let n = rng.gen_range(1..=max_n);
    fp::random::random_multifilt(rng, p, d, n)
}

pub fn lattice_object(rng: &mut ChaCha8Rng, max_rank: usize) -> EuclideanLattice {
    let r = rng.gen_range(1..=max_rank);
    lattice::random::random_lattice(rng, r)
}

/// Saturation of the span of up to `rank` random vectors with entries in `-2..=2`.
pub fn random_sublattice(rng: &mut ChaCha8Rng, l: &EuclideanLattice) -> Sublattice {
    let r = l.rank();
    let k = rng.gen_range(0..=r);
    let gens: Vec<Vec<BigInt>> = (0..k).map(|_| (0..r).map(|_| BigInt::from(rng.gen_range(-2i64..=2))).collect()).collect();
    lattice::saturate(&Sublattice::generated(r, &gens).expect("vectors of the ambient length"))
}

impl Sampler for FpHost {
    const NAME: &'static str = "multifilt_fp";

    fn object(&self, rng: &mut ChaCha8Rng) -> MultiFiltSpace {
        fp_object(rng, 4, 3)
    }

    fn sub(&self, rng: &mut ChaCha8Rng, x: &MultiFiltSpace) -> fp::SubspaceFp {
        let k = rng.gen_range(0..=x.dim());
        fp::random::random_subspace(rng, x.space(), k)
    }

    fn map_from(&self, rng: &mut ChaCha8Rng, x: &MultiFiltSpace) -> (FpMap, MultiFiltSpace) {
        let e = rng.gen_range(0..=4);
        fp::random::random_compatible_pair(rng, x, e)
    }

    fn map_into(&self, rng: &mut ChaCha8Rng, y: &MultiFiltSpace) -> (FpMap, MultiFiltSpace) {
        let src = FpSpace::new(y.space().prime(), rng.gen_range(0..=4)).expect("prime");
        let f = fp::random::random_map(rng, &src, y.space());
        let w = fp::random::compatible_source(rng, y, &f, &src);
        (f, w)
    }

    fn iso_from(&self, rng: &mut ChaCha8Rng, x: &MultiFiltSpace) -> (FpMap, MultiFiltSpace) {
        let f = fp::random::random_iso(rng, x.space());
        let y = fp::random::compatible_target(rng, x, &f, x.space());
        (f, y)
    }

    fn witness(x: &MultiFiltSpace) -> Witness {
        Witness::Fp(x.clone())
    }
}

impl Sampler for LatticeHost {
    const NAME: &'static str = "lattice";

    fn object(&self, rng: &mut ChaCha8Rng) -> EuclideanLattice {
        lattice_object(rng, 4)
    }

    fn sub(&self, rng: &mut ChaCha8Rng, x: &EuclideanLattice) -> Sublattice {
        random_sublattice(rng, x)
    }

    fn map_from(&self, rng: &mut ChaCha8Rng, x: &EuclideanLattice) -> (LatticeMap, EuclideanLattice) {
        let t = rng.gen_range(1..=4);
        let phi = lattice::random::random_map(rng, x.rank(), t);
        let y = lattice::random::compatible_target(rng, x, &phi);
        (phi, y)
    }

    fn map_into(&self, rng: &mut ChaCha8Rng, y: &EuclideanLattice) -> (LatticeMap, EuclideanLattice) {
        let s = rng.gen_range(1..=4);
        let phi = lattice::random::random_map(rng, s, y.rank());
        let w = lattice::random::compatible_source(rng, y, &phi);
        (phi, w)
    }

    fn iso_from(&self, rng: &mut ChaCha8Rng, x: &EuclideanLattice) -> (LatticeMap, EuclideanLattice) {
        lattice::random::compatible_iso(rng, x)
    }

    fn witness(x: &EuclideanLattice) -> Witness {
        Witness::Lattice(x.clone())
    }
}
