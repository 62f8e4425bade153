//! Fixed, seeded inputs shared by the benchmarks.

use hn_core::fp::random::random_multifilt;
use hn_core::fp::MultiFiltSpace;
use hn_core::lattice::random::random_lattice;
use hn_core::lattice::EuclideanLattice;
use hn_core::suites::trial_rng;

pub fn fp_inputs(p: u64, dim: usize, n: usize, count: usize) -> Vec<MultiFiltSpace> {
    (0..count).map(|i| random_multifilt(&mut trial_rng(i as u64), p, dim, n)).collect()
}

pub fn lattice_inputs(rank: usize, count: usize) -> Vec<EuclideanLattice> {
    (0..count).map(|i| random_lattice(&mut trial_rng(i as u64), rank)).collect()
}
