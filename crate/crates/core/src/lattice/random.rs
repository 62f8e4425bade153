//! Seeded generators of small Euclidean lattices and length-non-increasing maps.

use super::euclid::{is_psd, EuclideanLattice, LatticeMap};
use super::zmat::{self, QMat, ZMat};
use crate::rational::Q;
use num::bigint::BigInt;
use num::Zero;
use rand::Rng;

const SCALES: [(i64, i64); 9] = [(1, 4), (1, 3), (1, 2), (1, 1), (2, 1), (3, 1), (4, 1), (9, 2), (5, 1)];

pub fn random_scale<R: Rng>(rng: &mut R) -> Q {
    let (a, b) = SCALES[rng.gen_range(0..SCALES.len())];
    Q::new(a.into(), b.into())
}

/// A product of a few elementary operations with multipliers in `{-1, 1}`.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> ZMat {
    let mut u = zmat::identity_z(n);
    if n < 2 {
        return u;
    }
    for _ in 0..rng.gen_range(0..=n) {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let f = BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 });
        let src = u[j].clone();
        for (d, s) in u[i].iter_mut().zip(&src) {
            *d += &f * s;
        }
    }
    u
}

/// `Uᵀ diag(q) U` with small scales and a small unimodular `U`, or `AᵀA + I`.
pub fn random_lattice<R: Rng>(rng: &mut R, r: usize) -> EuclideanLattice {
    let gram = if rng.gen_bool(0.7) {
        let d: QMat = (0..r).map(|i| (0..r).map(|j| if i == j { random_scale(rng) } else { Q::zero() }).collect()).collect();
        let u = random_unimodular(rng, r);
        zmat::congruence(&zmat::transpose(&u, r), &d)
    } else {
        let a: ZMat = (0..r).map(|_| (0..r).map(|_| BigInt::from(rng.gen_range(-1i64..=1))).collect()).collect();
        let mut g = zmat::congruence(&zmat::transpose(&a, r), &zmat::identity_q(r));
        for (i, row) in g.iter_mut().enumerate() {
            row[i] += Q::from_integer(1.into());
        }
        g
    };
    EuclideanLattice::new(gram).expect("positive definite by construction")
}

pub fn random_map<R: Rng>(rng: &mut R, src: usize, tgt: usize) -> LatticeMap {
    let mat = (0..tgt).map(|_| (0..src).map(|_| BigInt::from(rng.gen_range(-1i64..=1))).collect()).collect();
    LatticeMap::new(src, tgt, mat).expect("shapes match")
}

/// A lattice `y` of rank `tgt` and a map `x -> y` of operator norm at most one, obtained by
/// shrinking a random metric on the target until `G_x - φᵀ G_y φ` is semi-definite.
pub fn compatible_target<R: Rng>(rng: &mut R, x: &EuclideanLattice, phi: &LatticeMap) -> EuclideanLattice {
    let y0 = random_lattice(rng, phi.target_rank());
    let pq = zmat::to_q(phi.matrix());
    let pt = zmat::transpose(&pq, phi.source_rank());
    let pull = zmat::q_mul(&zmat::q_mul(&pt, y0.gram(), phi.target_rank()), &pq, phi.source_rank());
    let mut c = Q::from_integer(1.into());
    loop {
        let diff: QMat = x.gram().iter().zip(&pull).map(|(a, b)| a.iter().zip(b).map(|(u, v)| u - &c * v).collect()).collect();
        if is_psd(&diff) {
            break;
        }
        c /= Q::from_integer(2.into());
    }
    let gram = y0.gram().iter().map(|row| row.iter().map(|v| &c * v).collect()).collect();
    EuclideanLattice::new(gram).expect("positive multiple of a positive-definite form")
}

/// A lattice `x` of rank `src` with a compatible map into `y`: `G_x = φᵀ G_y φ + E` for a
/// random positive-definite `E`.
pub fn compatible_source<R: Rng>(rng: &mut R, y: &EuclideanLattice, phi: &LatticeMap) -> EuclideanLattice {
    let e = random_lattice(rng, phi.source_rank());
    let pq = zmat::to_q(phi.matrix());
    let pt = zmat::transpose(&pq, phi.source_rank());
    let pull = zmat::q_mul(&zmat::q_mul(&pt, y.gram(), phi.target_rank()), &pq, phi.source_rank());
    let gram = pull.iter().zip(e.gram()).map(|(a, b)| a.iter().zip(b).map(|(u, v)| u + v).collect()).collect();
    EuclideanLattice::new(gram).expect("sum of semi-definite and definite forms")
}

/// A random isomorphism `x -> y` of norm at most one, with `y` generated.
pub fn compatible_iso<R: Rng>(rng: &mut R, x: &EuclideanLattice) -> (LatticeMap, EuclideanLattice) {
    let r = x.rank();
    let phi = LatticeMap::new(r, r, random_unimodular(rng, r)).expect("square");
    let y = compatible_target(rng, x, &phi);
    (phi, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::is_compatible;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_maps_are_compatible() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let r = rng.gen_range(1..=4);
            let s = rng.gen_range(1..=4);
            let x = random_lattice(&mut rng, r);
            let phi = random_map(&mut rng, r, s);
            let y = compatible_target(&mut rng, &x, &phi);
            assert!(is_compatible(&phi, &x, &y).unwrap());
            let psi = random_map(&mut rng, s, r);
            let w = compatible_source(&mut rng, &x, &psi);
            assert!(is_compatible(&psi, &w, &x).unwrap());
        }
    }
}
